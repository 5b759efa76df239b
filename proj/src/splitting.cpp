#include "scg/splitting.hpp"

#include <algorithm>

namespace scg {

namespace {

void check_cover(const Cover& cover) {
    if (!cover.space.is_finite())
        throw Error(ErrorCode::ValidationError, "finite cover expected");
    if (cover.A.empty() || cover.B.empty())
        throw Error(ErrorCode::NotACover, "both cover sets must be non-empty");
    for (Vertex v : cover.space.graph().vertices)
        if (!cover.A.count(v) && !cover.B.count(v))
            throw Error(ErrorCode::NotACover, "vertex " + std::to_string(v) + " uncovered");
    for (Vertex v : cover.A)
        if (!cover.space.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, std::to_string(v));
    for (Vertex v : cover.B)
        if (!cover.space.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, std::to_string(v));
}

bool in_ep(const Cover& cover, Vertex a, Vertex b) {
    if (a == b) return true; // diagonal always present
    if (!cover.space.controlled(a, b)) return false;
    return (cover.A.count(a) && cover.A.count(b)) || (cover.B.count(a) && cover.B.count(b));
}

bool subset_connected(const SemiCoarseSpace& space, const std::set<Vertex>& subset) {
    return subset.empty() || components_of_subset(space, subset).size() == 1;
}

} // namespace

PairSet pushout_edge_set(const Cover& cover) {
    check_cover(cover);
    PairSet out;
    for (const auto& [a, b] : cover.space.graph().edges)
        if (in_ep(cover, a, b)) out.push_back({a, b});
    return out;
}

WhichSideReport which_side_check(const Cover& cover) {
    check_cover(cover);
    WhichSideReport rep;
    for (const auto& [a, b] : cover.space.graph().edges) {
        if (!in_ep(cover, a, b)) continue;
        for (auto [x1, x2] : {VertexPair{a, b}, VertexPair{b, a}}) {
            if (cover.A.count(x1) && !cover.A.count(x2) && !cover.B.count(x1))
                rep.counterexamples.push_back({x1, x2});
            if (cover.B.count(x1) && !cover.B.count(x2) && !cover.A.count(x1))
                rep.counterexamples.push_back({x1, x2});
        }
    }
    rep.pass = rep.counterexamples.empty();
    return rep;
}

WellSplitReport well_split(const Cover& cover) {
    check_cover(cover);
    WellSplitReport rep;
    rep.pushout_edges = pushout_edge_set(cover);
    const auto& verts = cover.space.graph().vertices;

    for (Vertex x : verts) {
        auto nbhd = cover.space.closed_neighborhood(x);
        for (std::size_t i = 0; i < nbhd.size(); ++i) {
            for (std::size_t j = i; j < nbhd.size(); ++j) {
                Vertex y = nbhd[i], yp = nbhd[j]; // y == yp is the degenerate triple
                bool crossing = !in_ep(cover, x, y) || !in_ep(cover, x, yp);
                if (!crossing) continue;
                if (!in_ep(cover, y, yp)) continue;
                ++rep.premise_triples_checked;

                // condition (1): a shared midpoint through the pushout structure
                bool has_midpoint = false;
                for (Vertex m : verts) {
                    if (in_ep(cover, x, m) && in_ep(cover, m, y) && in_ep(cover, m, yp)) {
                        has_midpoint = true;
                        break;
                    }
                }
                if (!has_midpoint) {
                    rep.failures.push_back({{x, y, yp}, 1, "no shared midpoint"});
                    continue;
                }

                // condition (2): the midpoint set of (x,y) is connected in X
                std::set<Vertex> mids;
                for (Vertex m : verts)
                    if (in_ep(cover, x, m) && in_ep(cover, m, y)) mids.insert(m);
                if (!subset_connected(cover.space, mids)) {
                    std::string w = "M(x,y)={";
                    for (Vertex m : mids) w += std::to_string(m) + ",";
                    w.back() = '}';
                    rep.failures.push_back({{x, y, yp}, 2, w});
                }
            }
        }
    }
    rep.verdict = rep.failures.empty();
    return rep;
}

Vertex bridge(const Cover& cover, Vertex u, Vertex v) {
    check_cover(cover);
    if (u == v || !cover.space.controlled(u, v) || in_ep(cover, u, v))
        throw Error(ErrorCode::ValidationError, "bridge expects an edge outside the pushout set");
    for (Vertex m : cover.space.graph().vertices) {
        if (!cover.A.count(m) || !cover.B.count(m)) continue;
        if (in_ep(cover, u, m) && in_ep(cover, m, v)) return m;
    }
    throw Error(ErrorCode::NoBridge, "no midpoint in the intersection joins " +
                                         std::to_string(u) + " and " + std::to_string(v));
}

BipartitionReport disconnected_iff_empty_intersection(const SemiCoarseSpace& space) {
    if (!space.is_finite()) throw Error(ErrorCode::ValidationError, "finite space expected");
    BipartitionReport rep;
    rep.disconnected = components(space).size() > 1;
    const auto& verts = space.graph().vertices;
    std::size_t n = verts.size();
    if (n >= 2) {
        for (std::uint64_t mask = 1; mask + 1 < (1ull << n) && !rep.found_well_split_bipartition;
             ++mask) {
            if (!(mask & 1)) continue; // fix vertex 0 in A: covers each split once
            Cover c;
            c.space = space;
            for (std::size_t i = 0; i < n; ++i)
                ((mask >> i) & 1 ? c.A : c.B).insert(verts[i]);
            if (well_split(c).verdict) {
                rep.found_well_split_bipartition = true;
                rep.witness = c;
            }
        }
    }
    rep.equivalent = rep.disconnected == rep.found_well_split_bipartition;
    return rep;
}

bool halfline_cross_pair_excluded(std::optional<long long> scale, long long k) {
    if (k < 1) throw Error(ErrorCode::ValidationError, "k >= 1 expected");
    bool controlled = !scale || 2 * k <= *scale;
    // (-k, k) straddles the cover, so it is never a pushout pair
    return controlled;
}

WellSplitReport well_split_intline_halflines(std::optional<long long> scale,
                                             const std::string& cover) {
    if (cover != "halflines")
        throw Error(ErrorCode::UnsupportedCover, "only the half-line cover is supported");
    WellSplitReport rep;
    if (!scale) {
        // coarse line: every sign-crossing controlled pair bridges through 0,
        // and every midpoint set is an integer interval, hence connected
        rep.verdict = true;
        rep.premise_triples_checked = 0;
        return rep;
    }
    long long n = *scale;
    if (n > 100) throw Error(ErrorCode::ResourceCap, "half-line enumeration capped at scale 100");
    auto ctrl = [&](long long a, long long b) { return std::llabs(a - b) <= n; };
    auto ep = [&](long long a, long long b) {
        // within A=[0,inf) or within B=(-inf,0]
        return a == b || (ctrl(a, b) && ((a >= 0 && b >= 0) || (a <= 0 && b <= 0)));
    };
    // all premise triples live within distance n of a crossing pair; the
    // window [-2n, 2n] contains every distinct pattern
    for (long long x = -2 * n; x <= 2 * n; ++x) {
        for (long long y = x - n; y <= x + n; ++y) {
            for (long long yp = y; yp <= x + n; ++yp) {
                if (yp < x - n) continue;
                if (ep(x, y) && ep(x, yp)) continue;
                if (!ep(y, yp)) continue;
                ++rep.premise_triples_checked;
                bool has_midpoint = false;
                for (long long m = -3 * n; m <= 3 * n && !has_midpoint; ++m)
                    has_midpoint = ep(x, m) && ep(m, y) && ep(m, yp);
                if (!has_midpoint) {
                    rep.failures.push_back({{x, y, yp}, 1, "no shared midpoint"});
                    continue;
                }
                std::vector<long long> mids;
                for (long long m = -3 * n; m <= 3 * n; ++m)
                    if (ep(x, m) && ep(m, y)) mids.push_back(m);
                // connected iff consecutive members are within scale n
                for (std::size_t i = 1; i < mids.size(); ++i) {
                    if (mids[i] - mids[i - 1] > n) {
                        rep.failures.push_back({{x, y, yp}, 2, "midpoint gap"});
                        break;
                    }
                }
            }
        }
    }
    rep.verdict = rep.failures.empty();
    return rep;
}

} // namespace scg
