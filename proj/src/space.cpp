#include "scg/space.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace scg {

namespace {

VertexPair norm_pair(Vertex a, Vertex b) {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

std::vector<Vertex> sorted_unique(std::vector<Vertex> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// union-find with minimum-identifier representatives
struct MinFind {
    std::map<Vertex, Vertex> parent;

    Vertex find(Vertex v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) {
            parent[v] = v;
            return v;
        }
        Vertex root = find(it->second);
        parent[v] = root;
        return root;
    }

    void unite(Vertex a, Vertex b) {
        Vertex ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (ra < rb) parent[rb] = ra;
        else parent[ra] = rb;
    }
};

} // namespace

SemiCoarseSpace SemiCoarseSpace::finite(std::vector<Vertex> vertices, const PairSet& edge_pairs) {
    SemiCoarseSpace s;
    FiniteSpace g;
    g.vertices = sorted_unique(std::move(vertices));
    for (const auto& [a, b] : edge_pairs) {
        if (!std::binary_search(g.vertices.begin(), g.vertices.end(), a) ||
            !std::binary_search(g.vertices.begin(), g.vertices.end(), b)) {
            throw Error(ErrorCode::UnknownVertex,
                        "edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") references an undeclared vertex");
        }
        if (a != b) g.edges.insert(norm_pair(a, b));
    }
    s.finite_ = std::move(g);
    return s;
}

SemiCoarseSpace SemiCoarseSpace::int_line(std::optional<long long> scale) {
    if (scale && *scale < 1) throw Error(ErrorCode::ValidationError, "int line scale must be >= 1");
    SemiCoarseSpace s;
    s.line_ = IntLineSpace{scale};
    return s;
}

bool SemiCoarseSpace::has_vertex(Vertex v) const {
    if (is_int_line()) return true;
    const auto& vs = finite_->vertices;
    return std::binary_search(vs.begin(), vs.end(), v);
}

bool SemiCoarseSpace::controlled(Vertex a, Vertex b) const {
    if (a == b) return true;
    if (is_int_line()) {
        if (!line_->scale) return true;
        return std::llabs(a - b) <= *line_->scale;
    }
    return finite_->edges.count(norm_pair(a, b)) > 0;
}

std::vector<Vertex> SemiCoarseSpace::closed_neighborhood(Vertex v) const {
    if (is_int_line()) throw Error(ErrorCode::ValidationError, "neighborhood needs a finite space");
    std::vector<Vertex> out{v};
    for (Vertex u : finite_->vertices) {
        if (u != v && controlled(u, v)) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Vertex FiniteMap::operator()(Vertex v) const {
    auto it = assignment.find(v);
    if (it == assignment.end())
        throw Error(ErrorCode::UnknownVertex, "map not defined at " + std::to_string(v));
    return it->second;
}

SemiCoarseSpace build_finite_space(const std::vector<Vertex>& vertices, const PairSet& edge_pairs) {
    return SemiCoarseSpace::finite(vertices, edge_pairs);
}

bool is_controlled(const SemiCoarseSpace& space, const PairSet& pairs) {
    for (const auto& [a, b] : pairs) {
        if (!space.has_vertex(a) || !space.has_vertex(b))
            throw Error(ErrorCode::UnknownVertex, "pair endpoint outside the ground set");
        if (!space.controlled(a, b)) return false;
    }
    return true;
}

bool is_bornologous(const FiniteMap& map) {
    if (!map.domain.is_finite() || !map.codomain.is_finite())
        throw Error(ErrorCode::ValidationError, "bornologousness test needs finite spaces");
    for (Vertex v : map.domain.graph().vertices) {
        Vertex w = map(v);
        if (!map.codomain.has_vertex(w))
            throw Error(ErrorCode::UnknownVertex, "image vertex " + std::to_string(w) +
                                                      " missing from the codomain");
    }
    for (const auto& [a, b] : map.domain.graph().edges) {
        if (!map.codomain.controlled(map(a), map(b))) return false;
    }
    return true;
}

SemiCoarseSpace subspace(const SemiCoarseSpace& space, const std::set<Vertex>& vertex_subset) {
    if (space.is_int_line())
        throw Error(ErrorCode::ValidationError, "explicit subspaces are finite-only");
    std::vector<Vertex> vs;
    for (Vertex v : vertex_subset) {
        if (!space.has_vertex(v))
            throw Error(ErrorCode::UnknownVertex, std::to_string(v));
        vs.push_back(v);
    }
    PairSet edges;
    for (const auto& [a, b] : space.graph().edges) {
        if (vertex_subset.count(a) && vertex_subset.count(b)) edges.push_back({a, b});
    }
    return SemiCoarseSpace::finite(vs, edges);
}

Vertex ProductSpace::id_of(Vertex x, Vertex y) const {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first == x && pairs[i].second == y) return static_cast<Vertex>(i);
    }
    throw Error(ErrorCode::UnknownVertex, "pair not in the product");
}

ProductSpace product(const SemiCoarseSpace& x, const SemiCoarseSpace& y) {
    if (!x.is_finite() || !y.is_finite())
        throw Error(ErrorCode::ValidationError, "product is finite-only");
    ProductSpace out;
    for (Vertex v : x.graph().vertices)
        for (Vertex w : y.graph().vertices) out.pairs.push_back({v, w});
    std::vector<Vertex> ids(out.pairs.size());
    std::iota(ids.begin(), ids.end(), 0);
    PairSet edges;
    for (std::size_t i = 0; i < out.pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < out.pairs.size(); ++j) {
            const auto& [v, w] = out.pairs[i];
            const auto& [v2, w2] = out.pairs[j];
            if (x.controlled(v, v2) && y.controlled(w, w2))
                edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
        }
    }
    out.space = SemiCoarseSpace::finite(ids, edges);
    return out;
}

SemiCoarseSpace quotient(const SemiCoarseSpace& space, const std::map<Vertex, Vertex>& assignment,
                         const std::vector<Vertex>& target_vertices) {
    if (!space.is_finite()) throw Error(ErrorCode::ValidationError, "quotient is finite-only");
    std::set<Vertex> targets(target_vertices.begin(), target_vertices.end());
    std::set<Vertex> hit;
    for (Vertex v : space.graph().vertices) {
        auto it = assignment.find(v);
        if (it == assignment.end())
            throw Error(ErrorCode::NotSurjective, "assignment not total at " + std::to_string(v));
        if (!targets.count(it->second))
            throw Error(ErrorCode::UnknownVertex, "image outside the declared target set");
        hit.insert(it->second);
    }
    if (hit != targets)
        throw Error(ErrorCode::NotSurjective, "assignment misses part of the target set");
    PairSet edges;
    for (const auto& [a, b] : space.graph().edges) {
        Vertex ga = assignment.at(a), gb = assignment.at(b);
        if (ga != gb) edges.push_back({ga, gb});
    }
    return SemiCoarseSpace::finite(target_vertices, edges);
}

Vertex DisjointUnion::id_of(std::size_t summand, Vertex v) const {
    const auto& vs = originals.at(summand);
    auto it = std::lower_bound(vs.begin(), vs.end(), v);
    if (it == vs.end() || *it != v)
        throw Error(ErrorCode::UnknownVertex, std::to_string(v));
    return offsets.at(summand) + static_cast<Vertex>(it - vs.begin());
}

DisjointUnion disjoint_union(const std::vector<SemiCoarseSpace>& spaces) {
    DisjointUnion out;
    std::vector<Vertex> vertices;
    PairSet edges;
    Vertex offset = 0;
    for (const auto& s : spaces) {
        if (!s.is_finite())
            throw Error(ErrorCode::ValidationError, "disjoint union is finite-only");
        out.offsets.push_back(offset);
        out.originals.push_back(s.graph().vertices);
        for (std::size_t i = 0; i < s.graph().vertices.size(); ++i)
            vertices.push_back(offset + static_cast<Vertex>(i));
        for (const auto& [a, b] : s.graph().edges)
            edges.push_back({out.id_of(out.offsets.size() - 1, a), out.id_of(out.offsets.size() - 1, b)});
        offset += static_cast<Vertex>(s.graph().vertices.size());
    }
    out.space = SemiCoarseSpace::finite(vertices, edges);
    return out;
}

PushoutResult pushout(const SemiCoarseSpace& a, const SemiCoarseSpace& b, const SemiCoarseSpace& c,
                      const FiniteMap& f, const FiniteMap& g) {
    if (!is_bornologous(f) || !is_bornologous(g))
        throw Error(ErrorCode::NotBornologous, "pushout legs must be bornologous");
    DisjointUnion du = disjoint_union({a, b});
    MinFind uf;
    for (Vertex v : du.space.graph().vertices) uf.find(v);
    for (Vertex cv : c.graph().vertices) uf.unite(du.id_of(0, f(cv)), du.id_of(1, g(cv)));

    std::map<Vertex, Vertex> cls;
    std::vector<Vertex> class_vertices;
    for (Vertex v : du.space.graph().vertices) {
        Vertex r = uf.find(v);
        cls[v] = r;
        class_vertices.push_back(r);
    }
    class_vertices = [&] {
        std::sort(class_vertices.begin(), class_vertices.end());
        class_vertices.erase(std::unique(class_vertices.begin(), class_vertices.end()),
                             class_vertices.end());
        return class_vertices;
    }();

    SemiCoarseSpace glued = quotient(du.space, cls, class_vertices);

    PushoutResult out;
    out.space = glued;
    out.injection_a = FiniteMap{a, glued, {}};
    for (Vertex v : a.graph().vertices) out.injection_a.assignment[v] = cls.at(du.id_of(0, v));
    out.injection_b = FiniteMap{b, glued, {}};
    for (Vertex v : b.graph().vertices) out.injection_b.assignment[v] = cls.at(du.id_of(1, v));
    if (!is_bornologous(out.injection_a) || !is_bornologous(out.injection_b))
        throw Error(ErrorCode::NotBornologous, "canonical pushout injection failed its check");
    return out;
}

SemiCoarseSpace product_extension(const SemiCoarseSpace& space, std::optional<long long> k) {
    if (!space.is_finite())
        throw Error(ErrorCode::ValidationError, "product extension is finite-only");
    auto compose_once = [](const SemiCoarseSpace& s) {
        // E' = (E u diag) o (E u diag), diagonal dropped from storage
        const auto& g = s.graph();
        PairSet edges;
        for (Vertex a : g.vertices) {
            for (Vertex m : g.vertices) {
                if (!s.controlled(a, m)) continue;
                for (Vertex b : g.vertices) {
                    if (a != b && s.controlled(m, b)) edges.push_back({a, b});
                }
            }
        }
        return SemiCoarseSpace::finite(g.vertices, edges);
    };
    if (k) {
        SemiCoarseSpace cur = space;
        for (long long i = 0; i < *k; ++i) cur = compose_once(cur);
        return cur;
    }
    // component-complete closure
    PairSet edges;
    for (const auto& comp : components(space)) {
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = i + 1; j < comp.size(); ++j) edges.push_back({comp[i], comp[j]});
    }
    return SemiCoarseSpace::finite(space.graph().vertices, edges);
}

bool is_coarse(const SemiCoarseSpace& space) {
    if (space.is_int_line()) return !space.scale().has_value();
    const auto& g = space.graph();
    for (Vertex a : g.vertices) {
        for (Vertex m : g.vertices) {
            if (!space.controlled(a, m)) continue;
            for (Vertex b : g.vertices) {
                if (space.controlled(m, b) && !space.controlled(a, b)) return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<Vertex>> components(const SemiCoarseSpace& space) {
    if (!space.is_finite())
        throw Error(ErrorCode::ValidationError, "components is finite-only");
    std::set<Vertex> subset(space.graph().vertices.begin(), space.graph().vertices.end());
    return components_of_subset(space, subset);
}

std::vector<std::vector<Vertex>> components_of_subset(const SemiCoarseSpace& space,
                                                      const std::set<Vertex>& subset) {
    MinFind uf;
    for (Vertex v : subset) uf.find(v);
    for (Vertex a : subset)
        for (Vertex b : subset)
            if (a < b && space.controlled(a, b)) uf.unite(a, b);
    std::map<Vertex, std::vector<Vertex>> by_root;
    for (Vertex v : subset) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<Vertex>> out;
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace scg
