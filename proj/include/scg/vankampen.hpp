#pragma once

#include <map>

#include "scg/splitting.hpp"
#include "scg/strings.hpp"

namespace scg {

/// A word in the amalgamated product: string pieces tagged by the cover side
/// their image (and tails) live in. Pieces inside the intersection are tagged
/// 'A' by convention; retagging during comparison makes the choice immaterial.
struct TaggedFactor {
    StringOfMaps piece;
    char tag = 'A'; // 'A' or 'B'
};

struct TaggedWord {
    Cover cover;
    std::vector<TaggedFactor> factors;
};

struct CoverHypothesesReport {
    bool covers = false;            // A union B is the whole vertex set
    bool well_split_ok = false;     // the cover is well-split
    bool members_connected = false; // each atlas member induces one component
    bool members_inside = false;    // each atlas member sits inside A or B
    bool components_meet_atlas = false; // every component of A, B, and the
                                        // intersection meets some member
    bool all_pass = false;
    WellSplitReport split;
    std::vector<std::string> failures;
};

using Atlas = std::vector<std::set<Vertex>>;

CoverHypothesesReport verify_cover_hypotheses(const SemiCoarseSpace& space, const Cover& cover,
                                              const Atlas& U_family);

struct FactorizeResult {
    StringOfMaps string;
    RewriteTrace trace;     // merges whose replay rebuilds the bridged map
    std::vector<int> sides; // per factor: 0 = A, 1 = B
};

/// Split a map into factors each living wholly in A or wholly in B, inserting
/// least-labelled bridge midpoints from the intersection at side crossings.
FactorizeResult factorize(const ZMap& f, const Cover& cover);

/// Deterministic shortest paths from each vertex of A, B, and the
/// intersection to the least atlas vertex reachable inside its component.
struct ConnectorTable {
    // context: 0 = within A, 1 = within B, 2 = within the intersection
    std::map<std::pair<int, Vertex>, std::vector<Vertex>> paths;
};

ConnectorTable connectors(const SemiCoarseSpace& space, const Cover& cover,
                          const Atlas& U_family);

/// Factorize every map of F and conjugate each factor's constant ends through
/// the connector paths, producing a tagged word over the cover.
TaggedWord decompose(const StringOfMaps& F, const Cover& cover, const Atlas& U_family);

/// Equality in the amalgamated product: retag intersection factors, fuse
/// adjacent same-tag factors, drop provable identity factors, then compare
/// piecewise with the string prover.
Verdict words_equal(const TaggedWord& w1, const TaggedWord& w2, std::size_t bound = 20'000);

/// Decompose F and its one-step rewrite and compare the resulting words.
Verdict relation_preservation_test(const StringOfMaps& F, const RewriteStep& move,
                                   const Cover& cover, const Atlas& U_family,
                                   std::size_t bound = 20'000);

} // namespace scg
