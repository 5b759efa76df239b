#pragma once

#include "scg/dmoves.hpp"
#include "scg/homotopy.hpp"
#include "scg/zmap.hpp"

namespace scg {

enum class JunctionKind { Exact, Homotopy, ViaObjects };

struct JunctionCert {
    JunctionKind kind = JunctionKind::Exact;
    std::optional<HomotopyCertificate> rows; // Homotopy only
};

/// A string of maps: consecutive right tails provably match the next map's
/// left tail (read backwards). Construction is refusal-based — an unproved
/// junction throws, so a StringOfMaps is always proof-carrying.
struct StringOfMaps {
    SemiCoarseSpace space;
    std::vector<ZMap> maps;
    ZMap left_object, right_object; // symmetric maps carrying the tail data
    std::vector<JunctionCert> junctions;
};

struct RewriteStep {
    enum Kind { Dop, Merge, Cut, ShiftAll, DeletePt, AddPt } kind = ShiftAll;
    std::size_t i = 0; // junction / map index
    long long j = 0;   // merge point / move coordinate
    Vertex x = 0;      // AddPt value
};

using RewriteTrace = std::vector<RewriteStep>;

/// The symmetric map spreading f's right tail both ways (the groupoid object
/// sitting at f's right end); object_from_left_ray mirrors it.
ZMap object_from_right_ray(const ZMap& f);
ZMap object_from_left_ray(const ZMap& f);

/// Verify one junction: exact eventual ray match, else a bounded ray
/// homotopy between f's right ray and the reversed g's right ray.
std::optional<JunctionCert> verify_junction(const ZMap& f, const ZMap& g, std::size_t bound);

StringOfMaps make_string(const std::vector<ZMap>& maps, std::size_t bound = 500'000);

StringOfMaps star(const StringOfMaps& F, const StringOfMaps& G);

StringOfMaps reverse_string(const StringOfMaps& F);

/// Delete the exactly-opposite consecutive pair (i, i+1); 0-based i.
StringOfMaps apply_dop(const StringOfMaps& F, std::size_t i);

/// Merge a constant junction at point j (Def-style splice).
StringOfMaps apply_merge(const StringOfMaps& F, std::size_t i, long long j);

/// Splice out a maximal exactly-shared tail at junction i.
StringOfMaps cut_equal_tails(const StringOfMaps& F, std::size_t i);

StringOfMaps apply_step(const StringOfMaps& F, const RewriteStep& step);
StringOfMaps replay(StringOfMaps F, const RewriteTrace& trace);

struct NormalizeResult {
    StringOfMaps result;
    RewriteTrace trace;
};

/// shift-normalize -> cancel opposite pairs -> cut shared tails -> merge
/// constant junctions, to a fixpoint; deterministic rule order.
NormalizeResult normalize(const StringOfMaps& F);

Verdict string_equiv(const StringOfMaps& F, const StringOfMaps& G, std::size_t bound = 20'000);

struct Region {
    bool halfline = false;      // integer-line half-line when true
    int dir = +1;               // +1: [threshold, inf), -1: (-inf, threshold]
    long long threshold = 0;
    std::set<Vertex> verts;     // finite region otherwise
};

bool tails_controlled(const StringOfMaps& F, const std::vector<Region>& U_family);

/// A based loop as a 1-string at the constant-basepoint object.
StringOfMaps pi1_embedding(const SemiCoarseSpace& space, Vertex basepoint,
                           const std::vector<Vertex>& loop);

struct EliminableReport {
    std::vector<bool> cuttable; // per probe pair
    bool all_cuttable = false;
};

/// Probe-level eliminability: does exact tail cutting apply to F * G at the
/// object's junction, for each probe pair?
EliminableReport eliminable_check(const std::vector<std::pair<StringOfMaps, StringOfMaps>>& probes);

} // namespace scg
