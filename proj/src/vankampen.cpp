#include "scg/vankampen.hpp"

#include <algorithm>
#include <deque>

namespace scg {

namespace {

std::set<Vertex> intersection(const Cover& cover) {
    std::set<Vertex> out;
    for (Vertex v : cover.A)
        if (cover.B.count(v)) out.insert(v);
    return out;
}

std::vector<Vertex> tail_image(const TailSpec& t) {
    if (t.kind == TailKind::Constant) return {t.value};
    if (t.kind == TailKind::Periodic) return t.word;
    throw Error(ErrorCode::TailsNotControlled, "linearly drifting tails leave every finite set");
}

bool subset_of(const std::vector<Vertex>& values, const std::set<Vertex>& S) {
    return std::all_of(values.begin(), values.end(),
                       [&](Vertex v) { return S.count(v) > 0; });
}

/// 0 when the tail's image fits inside A, 1 when only inside B.
int tail_side(const TailSpec& t, const Cover& cover) {
    auto img = tail_image(t);
    if (subset_of(img, cover.A)) return 0;
    if (subset_of(img, cover.B)) return 1;
    throw Error(ErrorCode::TailsNotControlled,
                "tail image is not contained in either cover set");
}

std::vector<Vertex> map_image(const ZMap& f) {
    std::vector<Vertex> img = f.window.values;
    for (const TailSpec* t : {&f.left, &f.right}) {
        auto ti = tail_image(*t);
        img.insert(img.end(), ti.begin(), ti.end());
    }
    return img;
}

bool piece_inside(const StringOfMaps& piece, const std::set<Vertex>& S) {
    for (const ZMap& m : piece.maps)
        if (!subset_of(map_image(m), S)) return false;
    return true;
}

StringOfMaps identity_string_at(const ZMap& object) { return make_string({object}); }

} // namespace

CoverHypothesesReport verify_cover_hypotheses(const SemiCoarseSpace& space, const Cover& cover,
                                              const Atlas& U_family) {
    if (!space.is_finite())
        throw Error(ErrorCode::ValidationError, "cover hypotheses are finite-only");
    CoverHypothesesReport rep;

    rep.covers = true;
    for (Vertex v : space.graph().vertices)
        if (!cover.A.count(v) && !cover.B.count(v)) {
            rep.covers = false;
            rep.failures.push_back("vertex " + std::to_string(v) + " lies in neither cover set");
        }

    rep.split = well_split(cover);
    rep.well_split_ok = rep.split.verdict;
    if (!rep.well_split_ok) rep.failures.push_back("the cover is not well-split");

    rep.members_connected = true;
    rep.members_inside = true;
    for (std::size_t u = 0; u < U_family.size(); ++u) {
        const auto& U = U_family[u];
        if (U.empty() || components_of_subset(space, U).size() != 1) {
            rep.members_connected = false;
            rep.failures.push_back("atlas member " + std::to_string(u) + " is not connected");
        }
        bool inside = std::all_of(U.begin(), U.end(),
                                  [&](Vertex v) { return cover.A.count(v) > 0; }) ||
                      std::all_of(U.begin(), U.end(),
                                  [&](Vertex v) { return cover.B.count(v) > 0; });
        if (!inside) {
            rep.members_inside = false;
            rep.failures.push_back("atlas member " + std::to_string(u) +
                                   " is not inside either cover set");
        }
    }

    rep.components_meet_atlas = true;
    auto check_components = [&](const std::set<Vertex>& S, const std::string& name) {
        for (const auto& comp : components_of_subset(space, S)) {
            bool met = false;
            for (const auto& U : U_family)
                for (Vertex v : comp) met = met || U.count(v) > 0;
            if (!met) {
                rep.components_meet_atlas = false;
                rep.failures.push_back("a component of " + name + " meets no atlas member");
            }
        }
    };
    check_components(cover.A, "A");
    check_components(cover.B, "B");
    check_components(intersection(cover), "the intersection");

    rep.all_pass = rep.covers && rep.well_split_ok && rep.members_connected &&
                   rep.members_inside && rep.components_meet_atlas;
    return rep;
}

FactorizeResult factorize(const ZMap& f, const Cover& cover) {
    if (f.space != cover.space) throw Error(ErrorCode::SpaceMismatch, "factorize");
    auto inA = [&](Vertex v) { return cover.A.count(v) > 0; };
    auto inB = [&](Vertex v) { return cover.B.count(v) > 0; };
    auto inI = [&](Vertex v) { return inA(v) && inB(v); };

    int side = tail_side(f.left, cover);
    (void)tail_side(f.right, cover); // both tails must be controlled
    ZMap g = f;
    std::vector<long long> splits;
    std::vector<int> sides{side};
    long long z = g.window.lo;
    while (z <= g.window.hi() + tail_period(g.right) + 1) {
        Vertex v = eval(g, z);
        if (!inA(v) && !inB(v))
            throw Error(ErrorCode::NotACover, "value " + std::to_string(v) +
                                                  " lies in neither cover set");
        if (side == 0 ? inA(v) : inB(v)) {
            ++z;
            continue;
        }
        Vertex u = eval(g, z - 1);
        if (inI(u)) {
            splits.push_back(z - 1);
        } else {
            // insert the least shared midpoint between the crossing values
            Vertex m = bridge(cover, std::min(u, v), std::max(u, v));
            g = add_point(g, z, m);
            splits.push_back(z);
            ++z;
        }
        side = 1 - side;
        sides.push_back(side);
        ++z;
    }

    std::vector<ZMap> factors;
    for (std::size_t idx = 0; idx <= splits.size(); ++idx) {
        long long L = idx == 0 ? g.window.lo : splits[idx - 1];
        long long R = idx == splits.size() ? g.window.hi() : splits[idx];
        long long wlo = std::min(L, R), whi = std::max(L, R);
        std::vector<Vertex> values;
        for (long long p = wlo; p <= whi; ++p) values.push_back(eval(g, p));
        TailSpec lt = idx == 0 ? rebase_left_tail(g, wlo - 1)
                               : TailSpec::constant(eval(g, splits[idx - 1]));
        TailSpec rt = idx == splits.size() ? rebase_right_tail(g, whi + 1)
                                           : TailSpec::constant(eval(g, splits[idx]));
        factors.push_back(make_zmap(g.space, wlo, std::move(values), lt, rt));
    }

    FactorizeResult out;
    out.string = make_string(factors);
    out.sides = std::move(sides);
    for (long long p : splits) out.trace.push_back({RewriteStep::Merge, 0, p, 0});
    return out;
}

ConnectorTable connectors(const SemiCoarseSpace& space, const Cover& cover,
                          const Atlas& U_family) {
    ConnectorTable table;
    auto build = [&](int ctx, const std::set<Vertex>& S) {
        for (const auto& comp : components_of_subset(space, S)) {
            std::optional<std::size_t> uidx;
            for (std::size_t u = 0; u < U_family.size() && !uidx; ++u)
                for (Vertex v : comp)
                    if (U_family[u].count(v)) {
                        uidx = u;
                        break;
                    }
            if (!uidx)
                throw Error(ErrorCode::NoAtlasMember,
                            "a component meets no atlas member");
            Vertex target = -1;
            for (Vertex v : comp) // components are sorted ascending
                if (U_family[*uidx].count(v)) {
                    target = v;
                    break;
                }
            // breadth-first tree rooted at the target; ascending neighbor
            // order makes parents (and so every path) deterministic
            std::map<Vertex, Vertex> parent;
            std::deque<Vertex> queue{target};
            parent[target] = target;
            while (!queue.empty()) {
                Vertex cur = queue.front();
                queue.pop_front();
                for (Vertex nxt : comp)
                    if (!parent.count(nxt) && space.controlled(cur, nxt)) {
                        parent[nxt] = cur;
                        queue.push_back(nxt);
                    }
            }
            for (Vertex c : comp) {
                if (!parent.count(c))
                    throw Error(ErrorCode::ValidationError, "component is not connected");
                std::vector<Vertex> path{c};
                while (path.back() != target) path.push_back(parent[path.back()]);
                table.paths[{ctx, c}] = std::move(path);
            }
        }
    };
    build(0, cover.A);
    build(1, cover.B);
    build(2, intersection(cover));
    return table;
}

namespace {

/// Extend a factor whose ends are constant through the connector paths, so
/// both its objects sit at atlas vertices.
ZMap conjugate_factor(const ZMap& piece, int tag, const Cover& cover,
                      const ConnectorTable& table) {
    std::set<Vertex> I = intersection(cover);
    long long wlo = piece.window.lo;
    std::vector<Vertex> values(piece.window.values);
    TailSpec lt = piece.left, rt = piece.right;

    if (piece.left.kind == TailKind::Constant) {
        Vertex c = piece.left.value;
        int ctx = I.count(c) ? 2 : tag;
        const auto& path = table.paths.at({ctx, c}); // c, ..., target
        for (const Vertex v : path) { // prepend target, ..., c
            values.insert(values.begin(), v);
            --wlo;
        }
        lt = TailSpec::constant(path.back());
    }
    if (piece.right.kind == TailKind::Constant) {
        Vertex c = piece.right.value;
        int ctx = I.count(c) ? 2 : tag;
        const auto& path = table.paths.at({ctx, c});
        values.insert(values.end(), path.begin(), path.end());
        rt = TailSpec::constant(path.back());
    }
    return make_zmap(piece.space, wlo, std::move(values), lt, rt);
}

} // namespace

TaggedWord decompose(const StringOfMaps& F, const Cover& cover, const Atlas& U_family) {
    auto rep = verify_cover_hypotheses(F.space, cover, U_family);
    if (!rep.all_pass)
        throw Error(ErrorCode::ValidationError,
                    "cover hypotheses fail: " + (rep.failures.empty() ? "" : rep.failures[0]));
    ConnectorTable table = connectors(F.space, cover, U_family);
    std::set<Vertex> I = intersection(cover);

    TaggedWord word;
    word.cover = cover;
    for (const ZMap& f : F.maps) {
        FactorizeResult fr = factorize(f, cover);
        for (std::size_t j = 0; j < fr.string.maps.size(); ++j) {
            int tag = fr.sides[j];
            if (subset_of(map_image(fr.string.maps[j]), I)) tag = 0;
            ZMap piece = conjugate_factor(fr.string.maps[j], tag, cover, table);
            word.factors.push_back({make_string({piece}), tag == 0 ? 'A' : 'B'});
        }
    }
    return word;
}

namespace {

TaggedWord normalize_word(TaggedWord w, std::size_t bound) {
    std::set<Vertex> I = intersection(w.cover);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& fac : w.factors)
            if (fac.tag == 'B' && piece_inside(fac.piece, I)) {
                fac.tag = 'A';
                changed = true;
            }
        for (std::size_t i = 0; !changed && i + 1 < w.factors.size(); ++i) {
            if (w.factors[i].tag != w.factors[i + 1].tag) continue;
            try {
                w.factors[i].piece = star(w.factors[i].piece, w.factors[i + 1].piece);
                w.factors.erase(w.factors.begin() + static_cast<long long>(i) + 1);
                changed = true;
            } catch (const Error&) {
            }
        }
        for (std::size_t i = 0; !changed && i < w.factors.size() && w.factors.size() > 1; ++i) {
            const StringOfMaps& P = w.factors[i].piece;
            if (!object_equal(P.left_object, P.right_object).proved()) continue;
            if (string_equiv(P, identity_string_at(P.left_object), bound).proved()) {
                w.factors.erase(w.factors.begin() + static_cast<long long>(i));
                changed = true;
            }
        }
    }
    for (auto& fac : w.factors) fac.piece = normalize(fac.piece).result;
    return w;
}

} // namespace

Verdict words_equal(const TaggedWord& w1, const TaggedWord& w2, std::size_t bound) {
    if (w1.cover.space != w2.cover.space || w1.cover.A != w2.cover.A ||
        w1.cover.B != w2.cover.B)
        throw Error(ErrorCode::CoverMismatch, "words over different covers");
    if (w1.factors.empty() || w2.factors.empty())
        throw Error(ErrorCode::ValidationError, "empty tagged word");

    Verdict l = object_equal(w1.factors.front().piece.left_object,
                             w2.factors.front().piece.left_object);
    Verdict r = object_equal(w1.factors.back().piece.right_object,
                             w2.factors.back().piece.right_object);
    if (l.refuted() || r.refuted())
        return {VerdictKind::Refuted, std::nullopt,
                "words sit at different endpoint objects"};

    TaggedWord a = normalize_word(w1, bound);
    TaggedWord b = normalize_word(w2, bound);
    if (a.factors.size() != b.factors.size())
        return {VerdictKind::Unknown, std::nullopt,
                "normalized words have different factor counts"};
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        if (a.factors[i].tag != b.factors[i].tag)
            return {VerdictKind::Unknown, std::nullopt, "factor tags differ after retagging"};
        Verdict v = string_equiv(a.factors[i].piece, b.factors[i].piece, bound);
        if (!v.proved())
            return {VerdictKind::Unknown, std::nullopt,
                    "factor " + std::to_string(i) + " comparison: " + v.reason};
    }
    return {VerdictKind::Proved, std::nullopt, "words agree factor by factor"};
}

Verdict relation_preservation_test(const StringOfMaps& F, const RewriteStep& move,
                                   const Cover& cover, const Atlas& U_family,
                                   std::size_t bound) {
    StringOfMaps G = apply_step(F, move);
    TaggedWord w1 = decompose(F, cover, U_family);
    TaggedWord w2 = decompose(G, cover, U_family);
    return words_equal(w1, w2, bound);
}

} // namespace scg
