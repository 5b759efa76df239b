#pragma once

#include <vector>

#include "scg/space.hpp"

namespace scg {

/// Symbolic description of a half-infinite tail of a map Z -> X.
///
/// Indexing conventions (fixed throughout):
///  - a right tail gives f(hi+1+k) for k >= 0; Periodic: word[k mod L].
///  - a left tail gives f(lo-1-k) for k >= 0; Periodic: word[k mod L]
///    (the word is read outward from the window on both sides).
///  - QuasiAffine is indexed by the absolute coordinate:
///    value(z) = slope*z + offset + correction[z mod L] (euclidean mod).
enum class TailKind { Constant, Periodic, QuasiAffine };

struct TailSpec {
    TailKind kind = TailKind::Constant;
    Vertex value = 0;                  // Constant
    std::vector<Vertex> word;          // Periodic (nonempty, primitive)
    long long slope = 0;               // QuasiAffine
    long long offset = 0;
    std::vector<long long> correction; // QuasiAffine (nonempty)

    static TailSpec constant(Vertex v);
    static TailSpec periodic(std::vector<Vertex> word);
    static TailSpec quasi_affine(long long slope, long long offset,
                                 std::vector<long long> correction);

    bool operator==(const TailSpec&) const = default;
    auto operator<=>(const TailSpec&) const = default;
};

struct Window {
    long long lo = 0;
    std::vector<Vertex> values; // nonempty

    long long hi() const { return lo + static_cast<long long>(values.size()) - 1; }

    bool operator==(const Window&) const = default;
    auto operator<=>(const Window&) const = default;
};

/// A bornologous map Z -> X: explicit window plus symbolic tails.
/// Constructed only through make_zmap, which canonicalizes and verifies.
struct ZMap {
    SemiCoarseSpace space;
    Window window;
    TailSpec left;
    TailSpec right;

    Vertex operator()(long long z) const;

    bool operator==(const ZMap&) const = default;
};

/// Canonicalize (slope-0 quasi-affine demoted, periodic words made primitive,
/// window endpoints absorbed into tails) and verify bornologousness.
ZMap make_zmap(const SemiCoarseSpace& space, long long lo, std::vector<Vertex> values,
               TailSpec left, TailSpec right);

Vertex eval(const ZMap& f, long long z);

ZMap shift(const ZMap& f, long long k);   // g(z) = f(z-k)
ZMap reverse(const ZMap& f);              // g(z) = f(-z)

/// Pointwise equality of f and g on [from, +inf) (exact, decided symbolically).
bool ray_equal_from(const ZMap& f, const ZMap& g, long long from);
/// Pointwise equality on (-inf, upto].
bool ray_equal_upto(const ZMap& f, const ZMap& g, long long upto);
/// Pointwise equality everywhere.
bool function_equal(const ZMap& f, const ZMap& g);

bool is_symmetric(const ZMap& f); // f(z) == f(-z)

/// Exists N,M >= 0 with f(N+k) = g(M+k) for all k >= 0.
bool eventually_equal(const ZMap& f, const ZMap& g);

/// Period length of the tail pattern (1 for Constant, word length for
/// Periodic, correction length for QuasiAffine).
long long tail_period(const TailSpec& t);

/// Tail of z -> f(z - k) given the tail of f.
TailSpec translate_tail(const TailSpec& t, long long k);
/// Tail of z -> f(-z) on the opposite side.
TailSpec mirror_tail(const TailSpec& t);
/// f's right tail re-indexed to start at position `first` >= hi + 1.
TailSpec rebase_right_tail(const ZMap& f, long long first);
/// f's left tail re-indexed to start (downward) at `last` <= lo - 1.
TailSpec rebase_left_tail(const ZMap& f, long long last);

/// Reduce a word to its primitive root.
std::vector<Vertex> primitive_word(std::vector<Vertex> word);

} // namespace scg
