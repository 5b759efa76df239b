#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "scg/error.hpp"

namespace scg {

using Vertex = long long;
using VertexPair = std::pair<Vertex, Vertex>;
using PairSet = std::vector<VertexPair>;

/// A finite reflexive symmetric edge relation. Edges are stored as (min,max)
/// pairs; the diagonal is implicit and never stored.
struct FiniteSpace {
    std::vector<Vertex> vertices; // sorted, unique
    std::set<VertexPair> edges;

    bool operator==(const FiniteSpace&) const = default;
};

/// The integer line at a fixed scale. scale == nullopt means the coarse line:
/// every finite set of bounded diameter is controlled.
struct IntLineSpace {
    std::optional<long long> scale;

    bool operator==(const IntLineSpace&) const = default;
};

class SemiCoarseSpace {
public:
    static SemiCoarseSpace finite(std::vector<Vertex> vertices, const PairSet& edge_pairs);
    static SemiCoarseSpace int_line(std::optional<long long> scale);

    bool is_finite() const { return finite_.has_value(); }
    bool is_int_line() const { return line_.has_value(); }

    const FiniteSpace& graph() const { return *finite_; }
    std::optional<long long> scale() const { return line_->scale; }

    bool has_vertex(Vertex v) const;
    /// Singleton-pair controlledness; diagonal pairs are always controlled.
    bool controlled(Vertex a, Vertex b) const;
    /// Closed neighborhood of v (includes v itself).
    std::vector<Vertex> closed_neighborhood(Vertex v) const;

    bool operator==(const SemiCoarseSpace&) const = default;

    SemiCoarseSpace() = default;

private:
    std::optional<FiniteSpace> finite_;
    std::optional<IntLineSpace> line_;
};

struct FiniteMap {
    SemiCoarseSpace domain;
    SemiCoarseSpace codomain;
    std::map<Vertex, Vertex> assignment;

    Vertex operator()(Vertex v) const;
};

struct DisjointUnion {
    SemiCoarseSpace space;
    // id(k, v) = offset[k] + rank of v among the k-th summand's vertices
    std::vector<Vertex> offsets;
    std::vector<std::vector<Vertex>> originals; // per summand, sorted vertices

    Vertex id_of(std::size_t summand, Vertex v) const;
};

struct PushoutResult {
    SemiCoarseSpace space;
    FiniteMap injection_a;
    FiniteMap injection_b;
};

struct ProductSpace {
    SemiCoarseSpace space;
    std::vector<std::pair<Vertex, Vertex>> pairs; // pairs[id] = (x-vertex, y-vertex)

    Vertex id_of(Vertex x, Vertex y) const;
};

SemiCoarseSpace build_finite_space(const std::vector<Vertex>& vertices, const PairSet& edge_pairs);

bool is_controlled(const SemiCoarseSpace& space, const PairSet& pairs);

bool is_bornologous(const FiniteMap& map);

SemiCoarseSpace subspace(const SemiCoarseSpace& space, const std::set<Vertex>& vertex_subset);

ProductSpace product(const SemiCoarseSpace& x, const SemiCoarseSpace& y);

/// Quotient by a total assignment onto the declared target vertex set.
SemiCoarseSpace quotient(const SemiCoarseSpace& space, const std::map<Vertex, Vertex>& assignment,
                         const std::vector<Vertex>& target_vertices);

DisjointUnion disjoint_union(const std::vector<SemiCoarseSpace>& spaces);

PushoutResult pushout(const SemiCoarseSpace& a, const SemiCoarseSpace& b, const SemiCoarseSpace& c,
                      const FiniteMap& f, const FiniteMap& g);

/// k = nullopt means the induced coarse structure (component-complete closure).
SemiCoarseSpace product_extension(const SemiCoarseSpace& space, std::optional<long long> k);

bool is_coarse(const SemiCoarseSpace& space);

std::vector<std::vector<Vertex>> components(const SemiCoarseSpace& space);

/// Component partition of an arbitrary vertex subset under the subspace structure.
std::vector<std::vector<Vertex>> components_of_subset(const SemiCoarseSpace& space,
                                                      const std::set<Vertex>& subset);

} // namespace scg
