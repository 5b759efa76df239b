#pragma once

#include <string>

#include "scg/space.hpp"

namespace scg {

struct Cover {
    SemiCoarseSpace space;
    std::set<Vertex> A;
    std::set<Vertex> B;
};

struct Triple {
    Vertex x, y, yp;
    auto operator<=>(const Triple&) const = default;
};

struct WellSplitFailure {
    Triple triple;
    int failed_condition = 0; // 1 = no shared midpoint, 2 = midpoint set disconnected
    std::string witness;
};

struct WellSplitReport {
    bool verdict = false;
    PairSet pushout_edges;
    long long premise_triples_checked = 0;
    std::vector<WellSplitFailure> failures;
};

struct WhichSideReport {
    bool pass = true;
    std::vector<VertexPair> counterexamples; // (x1,x2) violating the boundary property
};

struct BipartitionReport {
    bool disconnected = false;
    bool found_well_split_bipartition = false;
    bool equivalent = false; // the two flags agree
    std::optional<Cover> witness;
};

/// Edges lying entirely within A or entirely within B: the structure of the
/// pushout of A and B over their intersection, transported back to X.
PairSet pushout_edge_set(const Cover& cover);

/// Every pushout edge leaving A (resp. B) must start in the intersection.
WhichSideReport which_side_check(const Cover& cover);

WellSplitReport well_split(const Cover& cover);

/// Least vertex of A∩B within one pushout hop of both u and v; requires
/// (u,v) to be an edge outside the pushout edge set.
Vertex bridge(const Cover& cover, Vertex u, Vertex v);

/// A finite space is disconnected iff some bipartition with empty
/// intersection is well-split; verified by exhaustive search.
BipartitionReport disconnected_iff_empty_intersection(const SemiCoarseSpace& space);

/// Well-splitting of the half-line cover A=[0,inf), B=(-inf,0] of the integer
/// line; closed-form for the coarse line, finite enumeration otherwise.
WellSplitReport well_split_intline_halflines(std::optional<long long> scale,
                                             const std::string& cover = "halflines");

/// (-k, k) is controlled in the integer line yet absent from the half-line
/// pushout edge set.
bool halfline_cross_pair_excluded(std::optional<long long> scale, long long k);

} // namespace scg
