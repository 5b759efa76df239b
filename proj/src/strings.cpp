#include "scg/strings.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace scg {

namespace {

std::string map_key(const ZMap& f) {
    std::string k = std::to_string(f.window.lo) + "|";
    for (Vertex v : f.window.values) k += std::to_string(v) + ",";
    for (const TailSpec* t : {&f.left, &f.right}) {
        k += "|" + std::to_string(static_cast<int>(t->kind)) + ":";
        k += std::to_string(t->value) + ";";
        for (Vertex v : t->word) k += std::to_string(v) + ",";
        k += std::to_string(t->slope) + "/" + std::to_string(t->offset) + "/";
        for (long long c : t->correction) k += std::to_string(c) + ",";
    }
    return k;
}

std::string string_key(const StringOfMaps& F) {
    std::string k;
    for (const ZMap& m : F.maps) k += map_key(m) + "#";
    return k;
}

/// Replace one map, keeping the junction certificates: point moves and shifts
/// only translate/rotate the tail patterns, so every junction's ray class is
/// unchanged.
StringOfMaps with_map(const StringOfMaps& F, std::size_t k, ZMap m) {
    StringOfMaps G = F;
    G.maps[k] = std::move(m);
    G.left_object = object_from_left_ray(G.maps.front());
    G.right_object = object_from_right_ray(G.maps.back());
    return G;
}

StringOfMaps shift_normalized(const StringOfMaps& F) {
    StringOfMaps G = F;
    for (ZMap& m : G.maps) m = shift(m, -m.window.lo);
    G.left_object = object_from_left_ray(G.maps.front());
    G.right_object = object_from_right_ray(G.maps.back());
    return G;
}

long long junction_period(const ZMap& f, const ZMap& rev) {
    long long p = std::lcm(tail_period(f.left), tail_period(f.right));
    return std::lcm(p, std::lcm(tail_period(rev.left), tail_period(rev.right)));
}

} // namespace

ZMap object_from_right_ray(const ZMap& f) {
    long long c = f.window.hi() + 1;
    TailSpec right = translate_tail(rebase_right_tail(f, c + 1), -c);
    return make_zmap(f.space, 0, {eval(f, c)}, mirror_tail(right), right);
}

ZMap object_from_left_ray(const ZMap& f) { return object_from_right_ray(reverse(f)); }

std::optional<JunctionCert> verify_junction(const ZMap& f, const ZMap& g, std::size_t bound) {
    ZMap rev = reverse(g);
    if (eventually_equal(f, rev)) return JunctionCert{JunctionKind::Exact, std::nullopt};
    Verdict v = homotopic_ray(f, rev, bound);
    if (v.proved()) return JunctionCert{JunctionKind::Homotopy, v.certificate};
    return std::nullopt;
}

StringOfMaps make_string(const std::vector<ZMap>& maps, std::size_t bound) {
    if (maps.empty()) throw Error(ErrorCode::ValidationError, "a string needs at least one map");
    for (const ZMap& m : maps)
        if (m.space != maps[0].space)
            throw Error(ErrorCode::SpaceMismatch, "all maps of a string share one target space");
    StringOfMaps F;
    F.space = maps[0].space;
    F.maps = maps;
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
        auto cert = verify_junction(maps[i], maps[i + 1], bound);
        if (!cert)
            throw Error(ErrorCode::JunctionUnverified,
                        "junction " + std::to_string(i) + " could not be verified");
        F.junctions.push_back(*cert);
    }
    F.left_object = object_from_left_ray(maps.front());
    F.right_object = object_from_right_ray(maps.back());
    return F;
}

StringOfMaps star(const StringOfMaps& F, const StringOfMaps& G) {
    if (F.space != G.space) throw Error(ErrorCode::SpaceMismatch, "star");
    Verdict v = object_equal(F.right_object, G.left_object);
    if (!v.proved())
        throw Error(ErrorCode::ObjectsNotComposable,
                    "right object of the left factor vs left object of the right factor: " +
                        v.reason);
    StringOfMaps H;
    H.space = F.space;
    H.maps = F.maps;
    H.maps.insert(H.maps.end(), G.maps.begin(), G.maps.end());
    H.junctions = F.junctions;
    H.junctions.push_back(JunctionCert{JunctionKind::ViaObjects, std::nullopt});
    H.junctions.insert(H.junctions.end(), G.junctions.begin(), G.junctions.end());
    H.left_object = F.left_object;
    H.right_object = G.right_object;
    return H;
}

StringOfMaps reverse_string(const StringOfMaps& F) {
    std::vector<ZMap> maps;
    for (auto it = F.maps.rbegin(); it != F.maps.rend(); ++it) maps.push_back(reverse(*it));
    return make_string(maps); // junctions re-verified; the relation is symmetric
}

StringOfMaps apply_dop(const StringOfMaps& F, std::size_t i) {
    if (i + 1 >= F.maps.size()) throw Error(ErrorCode::ValidationError, "pair index out of range");
    ZMap rev = reverse(F.maps[i + 1]);
    long long t0 = F.maps[i].window.lo - rev.window.lo;
    long long P = junction_period(F.maps[i], rev);
    bool opposite = false;
    for (long long d = t0 - P; d <= t0 + P && !opposite; ++d)
        opposite = function_equal(F.maps[i], shift(rev, d));
    if (!opposite)
        throw Error(ErrorCode::NotOpposite, "maps " + std::to_string(i) + " and " +
                                                std::to_string(i + 1) +
                                                " are not a shifted opposite pair");
    if (F.maps.size() == 2)
        throw Error(ErrorCode::MoveInapplicable,
                    "deleting the only two maps would leave an empty string");
    std::vector<ZMap> maps;
    for (std::size_t k = 0; k < F.maps.size(); ++k)
        if (k != i && k != i + 1) maps.push_back(F.maps[k]);
    return make_string(maps);
}

StringOfMaps apply_merge(const StringOfMaps& F, std::size_t i, long long j) {
    if (i + 1 >= F.maps.size()) throw Error(ErrorCode::ValidationError, "pair index out of range");
    const ZMap& a = F.maps[i];
    const ZMap& b = F.maps[i + 1];
    if (a.right.kind != TailKind::Constant || b.left.kind != TailKind::Constant ||
        a.right.value != b.left.value)
        throw Error(ErrorCode::MoveInapplicable,
                    "merge needs matching constant tails at the junction");
    Vertex x0 = a.right.value;
    long long N = a.window.hi() + 1;
    while (N > a.window.lo && eval(a, N - 1) == x0) --N;
    long long M = b.window.lo - 1;
    while (M < b.window.hi() && eval(b, M + 1) == x0) ++M;
    if (N > M)
        throw Error(ErrorCode::EmptyMergeWindow, "constant stretches do not overlap: N=" +
                                                     std::to_string(N) +
                                                     " > M=" + std::to_string(M));
    if (j < N || j > M)
        throw Error(ErrorCode::MoveInapplicable,
                    "merge point " + std::to_string(j) + " outside [" + std::to_string(N) + "," +
                        std::to_string(M) + "]");
    long long wlo = std::min(a.window.lo, j);
    long long whi = std::max(b.window.hi(), j + 1);
    std::vector<Vertex> values;
    for (long long z = wlo; z <= whi; ++z) values.push_back(z <= j ? eval(a, z) : eval(b, z));
    ZMap g = make_zmap(F.space, wlo, std::move(values), rebase_left_tail(a, wlo - 1),
                       rebase_right_tail(b, whi + 1));
    check_move_guards(g);
    std::vector<ZMap> maps(F.maps.begin(), F.maps.begin() + static_cast<long long>(i));
    maps.push_back(g);
    maps.insert(maps.end(), F.maps.begin() + static_cast<long long>(i) + 2, F.maps.end());
    return make_string(maps);
}

StringOfMaps cut_equal_tails(const StringOfMaps& F, std::size_t i) {
    if (i + 1 >= F.maps.size()) throw Error(ErrorCode::ValidationError, "pair index out of range");
    const ZMap& f = F.maps[i];
    const ZMap& next = F.maps[i + 1];
    ZMap rev = reverse(next);
    if (!eventually_equal(f, rev))
        throw Error(ErrorCode::TailsNotEqual,
                    "right rays do not become exactly equal under any shift");
    long long P = junction_period(f, rev);
    // alignment s identifies f(z) with next(s - z); the match region is
    // z >= a on f's side, w <= b = s - a on next's side
    long long smin = (f.window.lo - 2 * P - 2) + (next.window.lo - 2 * P - 2);
    long long smax = (f.window.hi() + 2 * P + 2) + (next.window.hi() + 2 * P + 2);
    std::optional<std::pair<long long, long long>> best; // (a, b), min a then max b
    for (long long s = smin; s <= smax; ++s) {
        ZMap sr = shift(rev, s);
        long long top = std::max(f.window.hi(), sr.window.hi()) + 1;
        if (!ray_equal_from(f, sr, top)) continue;
        long long floor = std::min(f.window.lo, sr.window.lo) - 2 * P - 2;
        long long a = top;
        while (a > floor && eval(f, a - 1) == eval(sr, a - 1)) --a;
        long long b = s - a;
        if (!best || a < best->first || (a == best->first && b > best->second)) best = {a, b};
    }
    if (!best) throw Error(ErrorCode::TailsNotEqual, "no exact alignment found in the scan range");
    auto [a, b] = *best;
    ZMap tailmap = shift(next, a - b); // g follows this map above the cut point
    long long wlo = std::min(f.window.lo, a);
    long long whi = std::max(tailmap.window.hi(), a + 1);
    std::vector<Vertex> values;
    for (long long z = wlo; z <= whi; ++z)
        values.push_back(z <= a ? eval(f, z) : eval(tailmap, z));
    ZMap g = make_zmap(F.space, wlo, std::move(values), rebase_left_tail(f, wlo - 1),
                       rebase_right_tail(tailmap, whi + 1));
    std::vector<ZMap> maps(F.maps.begin(), F.maps.begin() + static_cast<long long>(i));
    maps.push_back(g);
    maps.insert(maps.end(), F.maps.begin() + static_cast<long long>(i) + 2, F.maps.end());
    return make_string(maps);
}

StringOfMaps apply_step(const StringOfMaps& F, const RewriteStep& step) {
    switch (step.kind) {
        case RewriteStep::Dop: return apply_dop(F, step.i);
        case RewriteStep::Merge: return apply_merge(F, step.i, step.j);
        case RewriteStep::Cut: return cut_equal_tails(F, step.i);
        case RewriteStep::ShiftAll: return shift_normalized(F);
        case RewriteStep::DeletePt: return with_map(F, step.i, delete_point(F.maps[step.i], step.j));
        case RewriteStep::AddPt:
            return with_map(F, step.i, add_point(F.maps[step.i], step.j, step.x));
    }
    throw Error(ErrorCode::ValidationError, "unknown rewrite step");
}

StringOfMaps replay(StringOfMaps F, const RewriteTrace& trace) {
    for (const RewriteStep& s : trace) F = apply_step(F, s);
    return F;
}

NormalizeResult normalize(const StringOfMaps& F) {
    NormalizeResult out{F, {}};
    auto shift_all = [&out]() {
        bool needed = false;
        for (const ZMap& m : out.result.maps) needed = needed || m.window.lo != 0;
        if (needed) {
            out.result = shift_normalized(out.result);
            out.trace.push_back({RewriteStep::ShiftAll, 0, 0, 0});
        }
    };
    shift_all();
    bool changed = true;
    while (changed) {
        changed = false;
        // rule order fixed: cancel opposite pairs, then cut shared tails,
        // then merge constant junctions
        for (std::size_t i = 0; !changed && i + 1 < out.result.maps.size(); ++i) {
            try {
                out.result = apply_dop(out.result, i);
                out.trace.push_back({RewriteStep::Dop, i, 0, 0});
                changed = true;
            } catch (const Error&) {
            }
        }
        for (std::size_t i = 0; !changed && i + 1 < out.result.maps.size(); ++i) {
            try {
                out.result = cut_equal_tails(out.result, i);
                out.trace.push_back({RewriteStep::Cut, i, 0, 0});
                changed = true;
            } catch (const Error&) {
            }
        }
        for (std::size_t i = 0; !changed && i + 1 < out.result.maps.size(); ++i) {
            const ZMap& a = out.result.maps[i];
            if (a.right.kind != TailKind::Constant) continue;
            long long j = a.window.hi() + 1;
            try {
                out.result = apply_merge(out.result, i, j);
                out.trace.push_back({RewriteStep::Merge, i, j, 0});
                changed = true;
            } catch (const Error&) {
            }
        }
    }
    shift_all();
    return out;
}

namespace {

bool same_maps(const StringOfMaps& A, const StringOfMaps& B) {
    if (A.maps.size() != B.maps.size()) return false;
    for (std::size_t k = 0; k < A.maps.size(); ++k)
        if (!function_equal(A.maps[k], B.maps[k])) return false;
    return true;
}

std::vector<StringOfMaps> rewrite_successors(const StringOfMaps& F) {
    std::vector<StringOfMaps> out;
    auto attempt = [&out](auto&& fn) {
        try {
            out.push_back(shift_normalized(fn()));
        } catch (const Error&) {
        }
    };
    for (std::size_t i = 0; i + 1 < F.maps.size(); ++i) {
        attempt([&] { return apply_dop(F, i); });
        attempt([&] { return cut_equal_tails(F, i); });
    }
    for (std::size_t k = 0; k < F.maps.size(); ++k) {
        const ZMap& m = F.maps[k];
        for (long long z = m.window.lo - 1; z <= m.window.hi() + 1; ++z) {
            attempt([&] { return with_map(F, k, delete_point(m, z)); });
            if (F.space.is_finite()) {
                for (Vertex x : F.space.graph().vertices)
                    attempt([&] { return with_map(F, k, add_point(m, z, x)); });
            } else {
                long long n = F.space.scale() ? *F.space.scale() : 2;
                Vertex around = eval(m, z - 1);
                for (Vertex x = around - n; x <= around + n; ++x)
                    attempt([&] { return with_map(F, k, add_point(m, z, x)); });
            }
        }
    }
    return out;
}

} // namespace

Verdict string_equiv(const StringOfMaps& F, const StringOfMaps& G, std::size_t bound) {
    if (F.space != G.space) throw Error(ErrorCode::SpaceMismatch, "string_equiv");
    Verdict l = object_equal(F.left_object, G.left_object);
    Verdict r = object_equal(F.right_object, G.right_object);
    if (l.refuted() || r.refuted())
        return {VerdictKind::Refuted, std::nullopt,
                "endpoint objects differ: " + (l.refuted() ? l.reason : r.reason)};
    if (!l.proved() || !r.proved())
        return {VerdictKind::Unknown, std::nullopt, "endpoint object comparison inconclusive"};

    StringOfMaps nf = normalize(F).result;
    StringOfMaps ng = normalize(G).result;
    if (same_maps(nf, ng)) return {VerdictKind::Proved, std::nullopt, "identical normal forms"};
    if (nf.maps.size() == 1 && ng.maps.size() == 1) {
        SimdResult s = simd_equiv(nf.maps[0], ng.maps[0], bound);
        if (s.verdict.proved())
            return {VerdictKind::Proved, std::nullopt, "normal forms joined by point moves"};
        // a point-move refutation is not sound here: tails at homotopy-equal
        // objects may differ as patterns, so fall through to the string search
    }

    std::unordered_map<std::string, StringOfMaps> from_f, from_g;
    std::deque<std::string> qf, qg;
    StringOfMaps sf = shift_normalized(nf), sg = shift_normalized(ng);
    std::string kf = string_key(sf), kg = string_key(sg);
    from_f.emplace(kf, sf);
    from_g.emplace(kg, sg);
    if (kf == kg) return {VerdictKind::Proved, std::nullopt, "identical normal forms"};
    qf.push_back(kf);
    qg.push_back(kg);
    auto expand = [&](std::unordered_map<std::string, StringOfMaps>& mine,
                      std::unordered_map<std::string, StringOfMaps>& other,
                      std::deque<std::string>& queue) -> bool {
        std::size_t layer = queue.size();
        for (std::size_t step = 0; step < layer; ++step) {
            std::string curk = queue.front();
            queue.pop_front();
            for (StringOfMaps& nxt : rewrite_successors(mine.at(curk))) {
                std::string k = string_key(nxt);
                if (mine.count(k)) continue;
                mine.emplace(k, std::move(nxt));
                queue.push_back(k);
                if (other.count(k)) return true;
            }
            if (mine.size() + other.size() > bound) return false;
        }
        return false;
    };
    while (!qf.empty() && !qg.empty() && from_f.size() + from_g.size() <= bound) {
        bool f_side = qf.size() <= qg.size();
        bool met = f_side ? expand(from_f, from_g, qf) : expand(from_g, from_f, qg);
        if (met)
            return {VerdictKind::Proved, std::nullopt, "normal forms joined by string rewrites"};
    }
    return {VerdictKind::Unknown, std::nullopt, "rewrite search exhausted at bound"};
}

namespace {

bool region_contains(const Region& U, Vertex v) {
    if (U.halfline) return U.dir > 0 ? v >= U.threshold : v <= U.threshold;
    return U.verts.count(v) > 0;
}

bool tail_in_region(const TailSpec& t, const Region& U, bool left_side) {
    switch (t.kind) {
        case TailKind::Constant: return region_contains(U, t.value);
        case TailKind::Periodic:
            return std::all_of(t.word.begin(), t.word.end(),
                               [&](Vertex v) { return region_contains(U, v); });
        case TailKind::QuasiAffine: {
            if (!U.halfline) return false; // unbounded image never fits a finite set
            long long drift = left_side ? -t.slope : t.slope; // value trend along the tail
            return (drift > 0) == (U.dir > 0); // eventual containment by sign
        }
    }
    return false;
}

} // namespace

bool tails_controlled(const StringOfMaps& F, const std::vector<Region>& U_family) {
    if (F.space.is_int_line())
        for (const Region& U : U_family)
            if (!U.halfline)
                throw Error(ErrorCode::UnsupportedRegion,
                            "integer-line regions must be threshold half-lines");
    for (const ZMap& m : F.maps) {
        for (bool left_side : {true, false}) {
            const TailSpec& t = left_side ? m.left : m.right;
            bool covered = std::any_of(U_family.begin(), U_family.end(), [&](const Region& U) {
                return tail_in_region(t, U, left_side);
            });
            if (!covered) return false;
        }
    }
    return true;
}

StringOfMaps pi1_embedding(const SemiCoarseSpace& space, Vertex basepoint,
                           const std::vector<Vertex>& loop) {
    std::vector<Vertex> values = loop.empty() ? std::vector<Vertex>{basepoint} : loop;
    ZMap f = make_zmap(space, 0, std::move(values), TailSpec::constant(basepoint),
                       TailSpec::constant(basepoint));
    return make_string({f});
}

EliminableReport eliminable_check(
    const std::vector<std::pair<StringOfMaps, StringOfMaps>>& probes) {
    EliminableReport rep;
    rep.all_cuttable = !probes.empty();
    for (const auto& [F, G] : probes) {
        bool ok = false;
        try {
            StringOfMaps S = star(F, G);
            cut_equal_tails(S, F.maps.size() - 1);
            ok = true;
        } catch (const Error&) {
        }
        rep.cuttable.push_back(ok);
        rep.all_cuttable = rep.all_cuttable && ok;
    }
    return rep;
}

} // namespace scg
