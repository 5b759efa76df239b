#include "scg/zmap.hpp"

#include <algorithm>
#include <numeric>

namespace scg {

namespace {

long long emod(long long a, long long m) { return ((a % m) + m) % m; }

long long len(const std::vector<Vertex>& v) { return static_cast<long long>(v.size()); }

} // namespace

TailSpec TailSpec::constant(Vertex v) {
    TailSpec t;
    t.kind = TailKind::Constant;
    t.value = v;
    return t;
}

TailSpec TailSpec::periodic(std::vector<Vertex> word) {
    if (word.empty()) throw Error(ErrorCode::ValidationError, "empty periodic word");
    TailSpec t;
    t.kind = TailKind::Periodic;
    t.word = std::move(word);
    return t;
}

TailSpec TailSpec::quasi_affine(long long slope, long long offset,
                                std::vector<long long> correction) {
    if (correction.empty()) throw Error(ErrorCode::ValidationError, "empty correction list");
    TailSpec t;
    t.kind = TailKind::QuasiAffine;
    t.slope = slope;
    t.offset = offset;
    t.correction = std::move(correction);
    return t;
}

long long tail_period(const TailSpec& t) {
    switch (t.kind) {
        case TailKind::Constant: return 1;
        case TailKind::Periodic: return len(t.word);
        case TailKind::QuasiAffine: return static_cast<long long>(t.correction.size());
    }
    return 1;
}

std::vector<Vertex> primitive_word(std::vector<Vertex> word) {
    long long L = len(word);
    for (long long p = 1; p <= L / 2; ++p) {
        if (L % p != 0) continue;
        bool ok = true;
        for (long long i = p; i < L && ok; ++i) ok = word[i] == word[i - p];
        if (ok) {
            word.resize(p);
            return word;
        }
    }
    return word;
}

namespace {

// Value of the tail at outward index k >= 0 (absolute coordinate z for
// the quasi-affine case).
Vertex tail_at(const TailSpec& t, long long k, long long z) {
    switch (t.kind) {
        case TailKind::Constant: return t.value;
        case TailKind::Periodic: return t.word[emod(k, len(t.word))];
        case TailKind::QuasiAffine: {
            long long L = static_cast<long long>(t.correction.size());
            return t.slope * z + t.offset + t.correction[emod(z, L)];
        }
    }
    return t.value;
}

TailSpec demote_if_flat(const TailSpec& t, long long edge, int dir) {
    // Slope-0 quasi-affine is just a periodic pattern; rewrite it relative to
    // the window edge (first tail position edge, stepping by dir).
    if (t.kind != TailKind::QuasiAffine || t.slope != 0) return t;
    long long L = static_cast<long long>(t.correction.size());
    std::vector<Vertex> word(L);
    for (long long k = 0; k < L; ++k)
        word[k] = t.offset + t.correction[emod(edge + dir * k, L)];
    word = primitive_word(std::move(word));
    bool all_same = std::all_of(word.begin(), word.end(), [&](Vertex v) { return v == word[0]; });
    if (all_same) return TailSpec::constant(word[0]);
    return TailSpec::periodic(std::move(word));
}

TailSpec canonical_tail(const TailSpec& t, long long edge, int dir) {
    if (t.kind == TailKind::Periodic) {
        auto w = primitive_word(t.word);
        if (w.size() == 1) return TailSpec::constant(w[0]);
        if (w.size() != t.word.size()) return TailSpec::periodic(std::move(w));
        return t;
    }
    return demote_if_flat(t, edge, dir);
}

// Can the window endpoint value x be produced by the tail if the window
// shrinks one step? If yes, returns the adjusted tail.
std::optional<TailSpec> absorb_step(const TailSpec& t, Vertex x, long long new_edge) {
    switch (t.kind) {
        case TailKind::Constant:
            if (x == t.value) return t;
            return std::nullopt;
        case TailKind::Periodic: {
            long long L = len(t.word);
            if (x != t.word[L - 1]) return std::nullopt;
            std::vector<Vertex> w(t.word.size());
            w[0] = t.word[L - 1];
            std::copy(t.word.begin(), t.word.end() - 1, w.begin() + 1);
            return TailSpec::periodic(std::move(w));
        }
        case TailKind::QuasiAffine: {
            long long L = static_cast<long long>(t.correction.size());
            if (x == t.slope * new_edge + t.offset + t.correction[emod(new_edge, L)]) return t;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

void verify_bornologous(const ZMap& f) {
    auto check = [&](long long z) {
        Vertex a = eval(f, z), b = eval(f, z + 1);
        if (!f.space.controlled(a, b))
            throw Error(ErrorCode::NotBornologous,
                        "consecutive values (" + std::to_string(a) + "," + std::to_string(b) +
                            ") at z=" + std::to_string(z) + " are not controlled");
    };
    long long pl = tail_period(f.left), pr = tail_period(f.right);
    for (long long z = f.window.lo - pl - 1; z <= f.window.hi() + pr; ++z) check(z);
}

void verify_tail_kinds(const ZMap& f) {
    for (const TailSpec* t : {&f.left, &f.right}) {
        if (t->kind == TailKind::QuasiAffine && !f.space.is_int_line())
            throw Error(ErrorCode::IllegalTailKind,
                        "quasi-affine tails are only meaningful on the integer line");
        if (f.space.is_finite()) {
            auto vals = t->kind == TailKind::Constant ? std::vector<Vertex>{t->value} : t->word;
            for (Vertex v : vals)
                if (!f.space.has_vertex(v))
                    throw Error(ErrorCode::UnknownVertex, "tail value " + std::to_string(v));
        }
    }
}

} // namespace

ZMap make_zmap(const SemiCoarseSpace& space, long long lo, std::vector<Vertex> values,
               TailSpec left, TailSpec right) {
    if (values.empty()) throw Error(ErrorCode::ValidationError, "empty window");
    ZMap f;
    f.space = space;
    f.window = Window{lo, std::move(values)};
    f.left = canonical_tail(left, f.window.lo - 1, -1);
    f.right = canonical_tail(right, f.window.hi() + 1, +1);
    verify_tail_kinds(f);

    // absorb window endpoints into the tails (minimal window)
    bool changed = true;
    while (changed && f.window.values.size() > 1) {
        changed = false;
        if (auto t = absorb_step(f.right, f.window.values.back(), f.window.hi())) {
            f.window.values.pop_back();
            f.right = *t;
            changed = true;
        }
        if (f.window.values.size() > 1) {
            if (auto t = absorb_step(f.left, f.window.values.front(), f.window.lo)) {
                f.window.values.erase(f.window.values.begin());
                ++f.window.lo;
                f.left = *t;
                changed = true;
            }
        }
    }
    if (f.space.is_finite()) {
        for (Vertex v : f.window.values)
            if (!f.space.has_vertex(v))
                throw Error(ErrorCode::UnknownVertex, "window value " + std::to_string(v));
    }
    verify_bornologous(f);
    return f;
}

Vertex eval(const ZMap& f, long long z) {
    if (z < f.window.lo) return tail_at(f.left, f.window.lo - 1 - z, z);
    if (z > f.window.hi()) return tail_at(f.right, z - f.window.hi() - 1, z);
    return f.window.values[z - f.window.lo];
}

Vertex ZMap::operator()(long long z) const { return eval(*this, z); }

TailSpec translate_tail(const TailSpec& t, long long k) {
    if (t.kind != TailKind::QuasiAffine) return t; // outward-indexed, position free
    long long L = static_cast<long long>(t.correction.size());
    std::vector<long long> c(t.correction.size());
    for (long long r = 0; r < L; ++r) c[r] = t.correction[emod(r - k, L)];
    return TailSpec::quasi_affine(t.slope, t.offset - t.slope * k, std::move(c));
}

TailSpec mirror_tail(const TailSpec& t) {
    if (t.kind != TailKind::QuasiAffine) return t; // outward word reads the same
    long long L = static_cast<long long>(t.correction.size());
    std::vector<long long> c(t.correction.size());
    for (long long r = 0; r < L; ++r) c[r] = t.correction[emod(-r, L)];
    return TailSpec::quasi_affine(-t.slope, t.offset, std::move(c));
}

namespace {

TailSpec rotate_outward_word(const TailSpec& t, long long delta) {
    if (t.kind != TailKind::Periodic) return t;
    long long L = len(t.word);
    std::vector<Vertex> w(t.word.size());
    for (long long k = 0; k < L; ++k) w[k] = t.word[emod(k + delta, L)];
    return TailSpec::periodic(std::move(w));
}

} // namespace

TailSpec rebase_right_tail(const ZMap& f, long long first) {
    return rotate_outward_word(f.right, first - (f.window.hi() + 1));
}

TailSpec rebase_left_tail(const ZMap& f, long long last) {
    return rotate_outward_word(f.left, f.window.lo - 1 - last);
}

ZMap shift(const ZMap& f, long long k) {
    return make_zmap(f.space, f.window.lo + k, f.window.values, translate_tail(f.left, k),
                     translate_tail(f.right, k));
}

ZMap reverse(const ZMap& f) {
    std::vector<Vertex> vals(f.window.values.rbegin(), f.window.values.rend());
    return make_zmap(f.space, -f.window.hi(), std::move(vals), mirror_tail(f.right),
                     mirror_tail(f.left));
}

bool ray_equal_from(const ZMap& f, const ZMap& g, long long from) {
    bool fa = f.right.kind == TailKind::QuasiAffine;
    bool ga = g.right.kind == TailKind::QuasiAffine;
    if (fa != ga) return false; // one diverges, the other is bounded
    if (fa && f.right.slope != g.right.slope) return false;
    long long start = std::max({from, f.window.hi() + 1, g.window.hi() + 1});
    long long period = std::lcm(tail_period(f.right), tail_period(g.right));
    for (long long z = from; z < start + period; ++z)
        if (eval(f, z) != eval(g, z)) return false;
    return true;
}

bool ray_equal_upto(const ZMap& f, const ZMap& g, long long upto) {
    return ray_equal_from(reverse(f), reverse(g), -upto);
}

bool function_equal(const ZMap& f, const ZMap& g) {
    long long mid = std::min(f.window.lo, g.window.lo);
    return ray_equal_from(f, g, mid) && ray_equal_upto(f, g, mid);
}

bool is_symmetric(const ZMap& f) { return function_equal(f, reverse(f)); }

namespace {

bool rotation_equal(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.size() != b.size()) return false;
    std::vector<Vertex> aa(a);
    aa.insert(aa.end(), a.begin(), a.end());
    return std::search(aa.begin(), aa.end(), b.begin(), b.end()) != aa.end();
}

} // namespace

bool eventually_equal(const ZMap& f, const ZMap& g) {
    if (f.space != g.space) throw Error(ErrorCode::SpaceMismatch, "eventually_equal");
    const TailSpec& a = f.right;
    const TailSpec& b = g.right;
    if (a.kind != b.kind) return false; // canonical kinds are disjoint classes
    switch (a.kind) {
        case TailKind::Constant: return a.value == b.value;
        case TailKind::Periodic: return rotation_equal(a.word, b.word);
        case TailKind::QuasiAffine: {
            if (a.slope != b.slope) return false;
            long long s = a.slope;
            long long La = static_cast<long long>(a.correction.size());
            long long Lb = static_cast<long long>(b.correction.size());
            long long L = std::lcm(La, Lb);
            // look for an integer t with f(z+t) = g(z) for all large z:
            // s*t + (a.offset - b.offset) + [a-correction shifted by t minus
            // b-correction] == 0, the bracket must be constant in z.
            for (long long t0 = 0; t0 < L; ++t0) {
                long long d = a.correction[emod(t0, La)] - b.correction[0];
                bool constant = true;
                for (long long z = 1; z < L && constant; ++z)
                    constant = a.correction[emod(z + t0, La)] - b.correction[emod(z, Lb)] == d;
                if (!constant) continue;
                long long target = -(a.offset - b.offset) - d; // = s * t
                if (s == 0) {
                    if (target == 0) return true;
                    continue;
                }
                if (target % s != 0) continue;
                long long t = target / s;
                if (emod(t - t0, L) == 0) return true;
            }
            return false;
        }
    }
    return false;
}

} // namespace scg
