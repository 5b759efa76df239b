#pragma once

#include "scg/homotopy.hpp"
#include "scg/zmap.hpp"

namespace scg {

struct DMove {
    enum Kind { Delete, Add } kind = Delete;
    long long z = 0;
    Vertex x = 0; // Add only

    bool operator==(const DMove&) const = default;
};

/// Throws GuardUnproved when either tail of g is a genuinely periodic
/// non-constant cycle that cannot be proved null-homotopic.
void check_move_guards(const ZMap& g);

/// g(z) = f(z) for z < z0, f(z+1) for z >= z0; refused (GuardUnproved) when a
/// genuinely periodic non-constant tail cannot be proved null-homotopic.
ZMap delete_point(const ZMap& f, long long z0);

/// g(z) = f(z) for z < z0, x0 at z0, f(z-1) afterwards; same guards.
ZMap add_point(const ZMap& f, long long z0, Vertex x0);

ZMap apply_dmove(const ZMap& f, const DMove& m);
ZMap apply_dmoves(ZMap f, const std::vector<DMove>& moves);

struct SimdResult {
    Verdict verdict;
    std::vector<DMove> moves; // replay on f yields g when PROVED
};

/// Bidirectional bounded search over add/delete moves.
SimdResult simd_equiv(const ZMap& f, const ZMap& g, std::size_t bound = 20'000);

/// Constructive translation of a rel-endpoint window homotopy into d-moves.
/// cert.rows cover positions zlo .. zlo + rowlength - 1 and deform f's values
/// into g's; f and g must agree outside the covered strip.
std::vector<DMove> homotopy_to_dmoves(const ZMap& f, const ZMap& g,
                                      const HomotopyCertificate& cert, long long zlo);

} // namespace scg
