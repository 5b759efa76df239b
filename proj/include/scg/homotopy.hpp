#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scg/zmap.hpp"

namespace scg {

struct FinitePath {
    SemiCoarseSpace space;
    std::vector<Vertex> values;

    bool operator==(const FinitePath&) const = default;
};

FinitePath make_path(const SemiCoarseSpace& space, std::vector<Vertex> values);

enum class HomotopyMode { RelEndpoints, Free, Ray };

struct HomotopyCertificate {
    HomotopyMode mode = HomotopyMode::RelEndpoints;
    std::vector<std::vector<Vertex>> rows; // first = source, last = target
};

enum class VerdictKind { Proved, Refuted, Unknown };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<HomotopyCertificate> certificate;
    std::string reason;

    bool proved() const { return kind == VerdictKind::Proved; }
    bool refuted() const { return kind == VerdictKind::Refuted; }
};

/// All pairs (r(i), r'(i')) with |i-i'| <= 1 singleton-controlled.
bool step_ok(const FinitePath& r, const FinitePath& rp);

/// Same condition for whole maps Z -> X, decided symbolically (tail slope
/// compatibility plus one full period of pointwise checks past the windows).
bool zmap_step_ok(const ZMap& f, const ZMap& g);

struct FiniteHomotopyOptions {
    bool fix_left = true;
    bool fix_right = true;
    long long padding = 0;
    std::size_t max_states = 2'000'000;
};

/// Complete BFS over single-position moves at the padded common length.
Verdict homotopic_finite(const FinitePath& p, const FinitePath& q,
                         const FiniteHomotopyOptions& options = {});

/// Homotopy of right rays f|[0,inf) vs g|[0,inf).
Verdict homotopic_ray(const ZMap& f, const ZMap& g, std::size_t bound = 2'000'000);

/// Equality of groupoid objects: eventually equal or ray-homotopic, with
/// sound refutation via tail-class invariants.
Verdict object_equal(const ZMap& f, const ZMap& g, std::size_t bound = 2'000'000);

struct Pi1Options {
    bool products = true;
    std::size_t product_node_cap = 500'000;
    std::size_t max_loops = 5'000'000;
};

struct Pi1Result {
    long long length_cap = 0;
    std::size_t loop_count = 0;
    std::size_t class_count = 0;
    std::vector<std::vector<Vertex>> representatives; // lexicographically least per class
    // product_table[i][j] = class of rep_i * rep_j, or nullopt if the
    // bounded stabilization search gave up
    std::vector<std::vector<std::optional<std::size_t>>> product_table;
    bool stabilization_flag = false; // classes of shorter loops neither split nor merge
};

Pi1Result pi1_classes(const SemiCoarseSpace& space, Vertex basepoint, long long length_cap,
                      const Pi1Options& options = {});

} // namespace scg
