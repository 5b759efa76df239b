#pragma once

#include <json.hpp>

#include "scg/vankampen.hpp"

namespace scg {

using Json = nlohmann::ordered_json;

Json space_to_json(const SemiCoarseSpace& space);
SemiCoarseSpace space_from_json(const Json& j);

Json tail_to_json(const TailSpec& t);
TailSpec tail_from_json(const Json& j);

Json zmap_to_json(const ZMap& f);
ZMap zmap_from_json(const Json& j);

Json string_to_json(const StringOfMaps& F);

Json cover_to_json(const Cover& c);
Cover cover_from_json(const Json& j, const SemiCoarseSpace& space);

Json atlas_to_json(const Atlas& atlas);
Atlas atlas_from_json(const Json& j);

Json trace_to_json(const RewriteTrace& trace);
RewriteTrace trace_from_json(const Json& j);
RewriteStep step_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);

/// A parsed corpus / input file: named objects plus a list of checks with
/// expected outcomes and provenance strings.
struct Fixture {
    std::string name;
    std::optional<SemiCoarseSpace> space;
    std::optional<Cover> cover;
    std::optional<Atlas> atlas;
    std::map<std::string, ZMap> zmaps;
    std::map<std::string, StringOfMaps> strings;
    Json checks; // array of {op, ..., expect, provenance}
};

Fixture parse_fixture(const std::string& text);

struct CheckResult {
    std::string op;
    std::string provenance;
    bool matched = false;
    std::string detail; // what was computed
};

/// Execute every check of a fixture against its expected outcome.
std::vector<CheckResult> run_fixture(const Fixture& fixture);

} // namespace scg
