#include "scg/homotopy.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace scg {

FinitePath make_path(const SemiCoarseSpace& space, std::vector<Vertex> values) {
    if (values.empty()) throw Error(ErrorCode::ValidationError, "empty path");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (space.is_finite() && !space.has_vertex(values[i]))
            throw Error(ErrorCode::UnknownVertex, std::to_string(values[i]));
        if (i > 0 && !space.controlled(values[i - 1], values[i]))
            throw Error(ErrorCode::NotBornologous,
                        "(" + std::to_string(values[i - 1]) + "," + std::to_string(values[i]) +
                            ") is not controlled");
    }
    return FinitePath{space, std::move(values)};
}

bool step_ok(const FinitePath& r, const FinitePath& rp) {
    if (r.space != rp.space) throw Error(ErrorCode::SpaceMismatch, "step_ok");
    if (r.values.size() != rp.values.size()) throw Error(ErrorCode::LengthMismatch, "step_ok");
    long long n = static_cast<long long>(r.values.size());
    for (long long i = 0; i < n; ++i)
        for (long long d = -1; d <= 1; ++d) {
            long long j = i + d;
            if (j < 0 || j >= n) continue;
            if (!r.space.controlled(r.values[i], rp.values[j])) return false;
        }
    return true;
}

bool zmap_step_ok(const ZMap& f, const ZMap& g) {
    if (f.space != g.space) throw Error(ErrorCode::SpaceMismatch, "zmap_step_ok");
    auto affine = [](const TailSpec& t) { return t.kind == TailKind::QuasiAffine; };
    // unbounded drift on one side rules out a uniform displacement bound
    if (affine(f.right) != affine(g.right)) return false;
    if (affine(f.right) && f.right.slope != g.right.slope) return false;
    if (affine(f.left) != affine(g.left)) return false;
    if (affine(f.left) && f.left.slope != g.left.slope) return false;

    long long pr = std::lcm(tail_period(f.right), tail_period(g.right));
    long long pl = std::lcm(tail_period(f.left), tail_period(g.left));
    long long R = std::max(f.window.hi(), g.window.hi()) + pr + 2;
    long long L = std::min(f.window.lo, g.window.lo) - pl - 2;
    for (long long z = L; z <= R; ++z)
        for (long long d = -1; d <= 1; ++d)
            if (!f.space.controlled(eval(f, z), eval(g, z + d))) return false;
    return true;
}

namespace {

// Candidate replacement values at a position, given the constraint vertices
// the new value must be controlled with.
std::vector<Vertex> move_candidates(const SemiCoarseSpace& space,
                                    const std::vector<Vertex>& constraints) {
    std::vector<Vertex> out;
    if (space.is_finite()) {
        for (Vertex v : space.graph().vertices) {
            bool ok = true;
            for (Vertex c : constraints) ok = ok && space.controlled(c, v);
            if (ok) out.push_back(v);
        }
        return out;
    }
    // integer line: intersect the control intervals around the constraints
    long long n = space.scale() ? *space.scale() : 2; // INF: +-2 reaches anything stepwise
    long long lo = constraints[0] - n, hi = constraints[0] + n;
    for (Vertex c : constraints) {
        lo = std::max(lo, c - n);
        hi = std::min(hi, c + n);
    }
    for (long long v = lo; v <= hi; ++v)
        if (std::all_of(constraints.begin(), constraints.end(),
                        [&](Vertex c) { return space.controlled(c, v); }))
            out.push_back(v);
    return out;
}

std::string key_of(const std::vector<Vertex>& values) {
    std::string k;
    k.reserve(values.size() * sizeof(Vertex));
    for (Vertex v : values)
        k.append(reinterpret_cast<const char*>(&v), sizeof(Vertex));
    return k;
}

} // namespace

Verdict homotopic_finite(const FinitePath& p, const FinitePath& q,
                         const FiniteHomotopyOptions& options) {
    if (p.space != q.space) throw Error(ErrorCode::SpaceMismatch, "homotopic_finite");
    const SemiCoarseSpace& space = p.space;
    std::size_t n = std::max(p.values.size(), q.values.size()) + options.padding;
    auto pad = [&](std::vector<Vertex> v) {
        while (v.size() < n) v.push_back(v.back());
        return v;
    };
    std::vector<Vertex> src = pad(p.values), dst = pad(q.values);
    if (options.fix_left && src.front() != dst.front())
        throw Error(ErrorCode::ValidationError, "left endpoints differ in rel mode");
    if (options.fix_right && src.back() != dst.back())
        throw Error(ErrorCode::ValidationError, "right endpoints differ in rel mode");

    HomotopyMode mode = options.fix_left && options.fix_right ? HomotopyMode::RelEndpoints
                                                              : HomotopyMode::Free;
    if (src == dst)
        return {VerdictKind::Proved, HomotopyCertificate{mode, {src}}, "identical"};

    std::vector<std::vector<Vertex>> states{src};
    std::vector<long long> parent{-1};
    std::unordered_map<std::string, std::size_t> seen{{key_of(src), 0}};
    std::deque<std::size_t> frontier{0};
    std::size_t last = n - 1;

    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        std::vector<Vertex> row = states[cur];
        std::size_t first = options.fix_left ? 1 : 0;
        std::size_t stop = options.fix_right ? last : last + 1;
        for (std::size_t i = first; i < stop; ++i) {
            std::vector<Vertex> constraints{row[i]};
            if (i > 0) constraints.push_back(row[i - 1]);
            if (i < last) constraints.push_back(row[i + 1]);
            for (Vertex v : move_candidates(space, constraints)) {
                if (v == row[i]) continue;
                Vertex old = row[i];
                row[i] = v;
                auto [it, fresh] = seen.try_emplace(key_of(row), states.size());
                if (fresh) {
                    if (states.size() >= options.max_states)
                        return {VerdictKind::Unknown, std::nullopt, "state cap reached"};
                    states.push_back(row);
                    parent.push_back(static_cast<long long>(cur));
                    if (row == dst) {
                        HomotopyCertificate cert{mode, {}};
                        for (long long s = static_cast<long long>(states.size()) - 1; s >= 0;
                             s = parent[s])
                            cert.rows.push_back(states[s]);
                        std::reverse(cert.rows.begin(), cert.rows.end());
                        return {VerdictKind::Proved, std::move(cert), ""};
                    }
                    frontier.push_back(it->second);
                }
                row[i] = old;
            }
        }
    }
    return {VerdictKind::Refuted, std::nullopt,
            "reachable set exhausted at length " + std::to_string(n)};
}

Verdict homotopic_ray(const ZMap& f, const ZMap& g, std::size_t bound) {
    if (f.space != g.space) throw Error(ErrorCode::SpaceMismatch, "homotopic_ray");
    bool fa = f.right.kind == TailKind::QuasiAffine;
    bool ga = g.right.kind == TailKind::QuasiAffine;
    if (fa != ga)
        return {VerdictKind::Refuted, std::nullopt,
                "one tail drifts linearly, the other is bounded: no uniform displacement bound"};
    if (fa && f.right.slope != g.right.slope)
        return {VerdictKind::Refuted, std::nullopt,
                "tail slopes " + std::to_string(f.right.slope) + " vs " +
                    std::to_string(g.right.slope) + " force unbounded pointwise displacement"};

    long long R = std::max({f.window.hi(), g.window.hi(), 0ll}) +
                  std::lcm(tail_period(f.right), tail_period(g.right)) + 1;
    if (ray_equal_from(f, g, R)) {
        std::vector<Vertex> pv, qv;
        for (long long z = 0; z <= R; ++z) {
            pv.push_back(eval(f, z));
            qv.push_back(eval(g, z));
        }
        FiniteHomotopyOptions opt;
        opt.fix_left = false; // the z=0 end of the ray is free
        opt.fix_right = true; // rays agree from R on
        opt.max_states = bound;
        Verdict v = homotopic_finite(make_path(f.space, pv), make_path(g.space, qv), opt);
        if (v.certificate) v.certificate->mode = HomotopyMode::Ray;
        if (v.refuted())
            // exhaustion at a frozen tail region is not a complete ray search
            return {VerdictKind::Unknown, std::nullopt,
                    "window search exhausted with the tail region held fixed"};
        return v;
    }
    if (f.space.is_int_line() && !f.space.scale()) {
        // unbounded-scale line: matching slopes leave a bounded pointwise
        // displacement, and every bounded set is controlled, so stepwise
        // straight-line interpolation between the rays is a valid homotopy
        return {VerdictKind::Proved, std::nullopt,
                "bounded displacement interpolates on the unbounded-scale line"};
    }
    return {VerdictKind::Unknown, std::nullopt,
            "tails are not eventually pointwise equal; no finite reduction applies"};
}

namespace {

std::optional<std::size_t> component_of_value(const SemiCoarseSpace& space, Vertex v) {
    auto comps = components(space);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (std::binary_search(comps[i].begin(), comps[i].end(), v)) return i;
    return std::nullopt;
}

} // namespace

Verdict object_equal(const ZMap& f, const ZMap& g, std::size_t bound) {
    if (f.space != g.space) throw Error(ErrorCode::SpaceMismatch, "object_equal");
    if (eventually_equal(f, g))
        return {VerdictKind::Proved, std::nullopt, "eventually equal"};
    if (f.space.is_finite()) {
        // indiscrete space: everything is one homotopy step away
        bool indiscrete = true;
        const auto& verts = f.space.graph().vertices;
        for (std::size_t i = 0; i < verts.size() && indiscrete; ++i)
            for (std::size_t j = i + 1; j < verts.size() && indiscrete; ++j)
                indiscrete = f.space.controlled(verts[i], verts[j]);
        if (indiscrete)
            return {VerdictKind::Proved, std::nullopt, "indiscrete target: one-step homotopy"};
        // component invariant: both relations preserve the component of the image
        auto cf = component_of_value(f.space, eval(f, f.window.lo));
        auto cg = component_of_value(g.space, eval(g, g.window.lo));
        if (cf != cg)
            return {VerdictKind::Refuted, std::nullopt, "images lie in different components"};
    }
    Verdict h = homotopic_ray(f, g, bound);
    if (h.proved()) return h;
    if (h.refuted()) return h; // slope/displacement argument also bars eventual equality chains
    return {VerdictKind::Unknown, std::nullopt, h.reason};
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

struct LoopTable {
    std::vector<std::vector<Vertex>> loops; // lexicographic order
    std::unordered_map<std::string, std::size_t> index;
    UnionFind uf{0};
};

std::vector<long long> base_distances(const SemiCoarseSpace& space, Vertex basepoint) {
    const auto& verts = space.graph().vertices;
    std::map<Vertex, long long> dist;
    std::deque<Vertex> q{basepoint};
    dist[basepoint] = 0;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        for (Vertex u : verts)
            if (!dist.count(u) && space.controlled(u, v)) {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
    }
    std::vector<long long> out;
    for (Vertex v : verts) out.push_back(dist.count(v) ? dist[v] : -1);
    return out;
}

LoopTable enumerate_loops(const SemiCoarseSpace& space, Vertex basepoint, long long length,
                          std::size_t max_loops) {
    const auto& verts = space.graph().vertices;
    auto dist = base_distances(space, basepoint);
    auto index_of = [&](Vertex v) {
        return std::lower_bound(verts.begin(), verts.end(), v) - verts.begin();
    };

    LoopTable table;
    std::vector<Vertex> cur{basepoint};
    // iterative DFS in lexicographic vertex order
    std::vector<std::size_t> next_choice{0};
    while (!next_choice.empty()) {
        if (static_cast<long long>(cur.size()) == length + 1) {
            if (cur.back() == basepoint) {
                if (table.loops.size() >= max_loops)
                    throw Error(ErrorCode::ResourceCap, "loop enumeration cap exceeded");
                table.index.emplace(key_of(cur), table.loops.size());
                table.loops.push_back(cur);
            }
            next_choice.pop_back();
            cur.pop_back();
            continue;
        }
        std::size_t& choice = next_choice.back();
        bool advanced = false;
        while (choice < verts.size()) {
            Vertex v = verts[choice++];
            long long remaining = length + 1 - static_cast<long long>(cur.size());
            if (!space.controlled(cur.back(), v)) continue;
            if (dist[index_of(v)] < 0 || dist[index_of(v)] > remaining - 1) continue;
            cur.push_back(v);
            next_choice.push_back(0);
            advanced = true;
            break;
        }
        if (!advanced) {
            next_choice.pop_back();
            if (!cur.empty()) cur.pop_back();
        }
    }

    table.uf = UnionFind(table.loops.size());
    long long n = length + 1;
    for (std::size_t li = 0; li < table.loops.size(); ++li) {
        std::vector<Vertex> row = table.loops[li];
        for (long long i = 1; i < n - 1; ++i) {
            std::vector<Vertex> constraints{row[i], row[i - 1], row[i + 1]};
            for (Vertex v : move_candidates(space, constraints)) {
                if (v == row[i]) continue;
                Vertex old = row[i];
                row[i] = v;
                auto it = table.index.find(key_of(row));
                if (it != table.index.end()) table.uf.unite(li, it->second);
                row[i] = old;
            }
        }
    }
    return table;
}

} // namespace

Pi1Result pi1_classes(const SemiCoarseSpace& space, Vertex basepoint, long long length_cap,
                      const Pi1Options& options) {
    if (!space.is_finite()) throw Error(ErrorCode::ValidationError, "finite space expected");
    if (!space.has_vertex(basepoint)) throw Error(ErrorCode::UnknownVertex, "basepoint");
    if (length_cap < 2) throw Error(ErrorCode::ValidationError, "length cap must be >= 2");

    Pi1Result res;
    res.length_cap = length_cap;
    LoopTable table = enumerate_loops(space, basepoint, length_cap, options.max_loops);
    res.loop_count = table.loops.size();

    std::map<std::size_t, std::size_t> class_of_root;
    std::vector<std::size_t> class_of_loop(table.loops.size());
    for (std::size_t i = 0; i < table.loops.size(); ++i) {
        std::size_t r = table.uf.find(i);
        auto [it, fresh] = class_of_root.try_emplace(r, res.representatives.size());
        if (fresh) res.representatives.push_back(table.loops[i]); // lexicographic least
        class_of_loop[i] = it->second;
    }
    res.class_count = res.representatives.size();

    // stabilization: classes of shorter loops, re-examined with the extra
    // room of the full cap, must neither split nor merge
    res.stabilization_flag = true;
    for (long long shorter = std::max(2ll, length_cap - 2); shorter < length_cap; ++shorter) {
        LoopTable small = enumerate_loops(space, basepoint, shorter, options.max_loops);
        std::map<std::size_t, std::size_t> small_roots;
        std::set<std::size_t> padded_classes;
        std::map<std::size_t, std::set<std::size_t>> targets_per_root;
        for (std::size_t i = 0; i < small.loops.size(); ++i) {
            std::vector<Vertex> padded = small.loops[i];
            padded.resize(length_cap + 1, basepoint);
            std::size_t cls = class_of_loop[table.index.at(key_of(padded))];
            padded_classes.insert(cls);
            targets_per_root[small.uf.find(i)].insert(cls);
        }
        std::set<std::size_t> roots;
        for (std::size_t i = 0; i < small.loops.size(); ++i) roots.insert(small.uf.find(i));
        if (roots.size() != padded_classes.size()) res.stabilization_flag = false;
        for (auto& [root, targets] : targets_per_root)
            if (targets.size() != 1) res.stabilization_flag = false;
    }

    if (options.products) {
        std::size_t k = res.representatives.size();
        res.product_table.assign(k, std::vector<std::optional<std::size_t>>(k));
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                // concatenate, then search for a form with a constant second half
                std::vector<Vertex> concat = res.representatives[a];
                concat.insert(concat.end(), res.representatives[b].begin() + 1,
                              res.representatives[b].end());
                long long n = static_cast<long long>(concat.size());
                auto trailing = [&](const std::vector<Vertex>& v) {
                    long long t = 0;
                    while (t < n && v[n - 1 - t] == basepoint) ++t;
                    return t;
                };
                using Entry = std::pair<long long, std::size_t>; // (-trailing, state id)
                std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
                std::vector<std::vector<Vertex>> states{concat};
                std::unordered_map<std::string, std::size_t> seen{{key_of(concat), 0}};
                pq.push({-trailing(concat), 0});
                std::optional<std::size_t> found;
                while (!pq.empty() && !found) {
                    auto [negt, cur] = pq.top();
                    pq.pop();
                    if (-negt >= length_cap + 1) { // positions cap..2*cap all basepoint
                        std::vector<Vertex> head(states[cur].begin(),
                                                 states[cur].begin() + length_cap + 1);
                        found = class_of_loop[table.index.at(key_of(head))];
                        break;
                    }
                    std::vector<Vertex> row = states[cur];
                    for (long long i = 1; i < n - 1; ++i) {
                        std::vector<Vertex> constraints{row[i], row[i - 1], row[i + 1]};
                        for (Vertex v : move_candidates(space, constraints)) {
                            if (v == row[i]) continue;
                            Vertex old = row[i];
                            row[i] = v;
                            auto [it, fresh] = seen.try_emplace(key_of(row), states.size());
                            if (fresh && states.size() < options.product_node_cap) {
                                states.push_back(row);
                                pq.push({-trailing(row), it->second});
                            }
                            row[i] = old;
                        }
                    }
                    if (states.size() >= options.product_node_cap) break;
                }
                res.product_table[a][b] = found;
            }
        }
    }
    return res;
}

} // namespace scg
