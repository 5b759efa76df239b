#include "scg/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace scg {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        parse_fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

long long need_int(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_integer()) parse_fail(std::string("field '") + key + "' must be an integer");
    return v.get<long long>();
}

std::vector<Vertex> int_list(const Json& j, const char* what) {
    if (!j.is_array()) parse_fail(std::string(what) + " must be an array");
    std::vector<Vertex> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) parse_fail(std::string(what) + " entries must be integers");
        out.push_back(v.get<long long>());
    }
    return out;
}

std::string verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Proved: return "proved";
        case VerdictKind::Refuted: return "refuted";
        default: return "unknown";
    }
}

} // namespace

Json space_to_json(const SemiCoarseSpace& space) {
    Json j;
    if (space.is_finite()) {
        j["kind"] = "finite";
        j["vertices"] = space.graph().vertices;
        Json edges = Json::array();
        for (const auto& [a, b] : space.graph().edges) edges.push_back(Json::array({a, b}));
        j["edges"] = std::move(edges);
    } else {
        j["kind"] = "intline";
        if (space.scale())
            j["scale"] = *space.scale();
        else
            j["scale"] = "inf";
    }
    return j;
}

SemiCoarseSpace space_from_json(const Json& j) {
    const Json& kind = need(j, "kind");
    if (kind == "finite") {
        auto vertices = int_list(need(j, "vertices"), "vertices");
        PairSet edges;
        const Json& je = need(j, "edges");
        if (!je.is_array()) parse_fail("edges must be an array of pairs");
        for (const auto& e : je) {
            if (!e.is_array() || e.size() != 2) parse_fail("each edge must be a pair [a,b]");
            edges.emplace_back(e.at(0).get<long long>(), e.at(1).get<long long>());
        }
        return build_finite_space(vertices, edges);
    }
    if (kind == "intline") {
        const Json& s = need(j, "scale");
        if (s == "inf") return SemiCoarseSpace::int_line(std::nullopt);
        if (!s.is_number_integer()) parse_fail("scale must be an integer or \"inf\"");
        return SemiCoarseSpace::int_line(s.get<long long>());
    }
    parse_fail("space kind must be \"finite\" or \"intline\"");
}

Json tail_to_json(const TailSpec& t) {
    Json j;
    switch (t.kind) {
        case TailKind::Constant:
            j["kind"] = "const";
            j["value"] = t.value;
            break;
        case TailKind::Periodic:
            j["kind"] = "periodic";
            j["word"] = t.word;
            break;
        case TailKind::QuasiAffine:
            j["kind"] = "affine";
            j["slope"] = t.slope;
            j["offset"] = t.offset;
            j["correction"] = t.correction;
            break;
    }
    return j;
}

TailSpec tail_from_json(const Json& j) {
    const Json& kind = need(j, "kind");
    if (kind == "const") return TailSpec::constant(need_int(j, "value"));
    if (kind == "periodic") return TailSpec::periodic(int_list(need(j, "word"), "word"));
    if (kind == "affine") {
        auto corr = int_list(need(j, "correction"), "correction");
        return TailSpec::quasi_affine(need_int(j, "slope"), need_int(j, "offset"),
                                      {corr.begin(), corr.end()});
    }
    parse_fail("tail kind must be \"const\", \"periodic\", or \"affine\"");
}

Json zmap_to_json(const ZMap& f) {
    Json j;
    j["space"] = space_to_json(f.space);
    j["window"] = Json{{"lo", f.window.lo}, {"values", f.window.values}};
    j["left_tail"] = tail_to_json(f.left);
    j["right_tail"] = tail_to_json(f.right);
    return j;
}

ZMap zmap_from_json(const Json& j) {
    auto space = space_from_json(need(j, "space"));
    const Json& w = need(j, "window");
    try {
        return make_zmap(space, need_int(w, "lo"), int_list(need(w, "values"), "window values"),
                         tail_from_json(need(j, "left_tail")),
                         tail_from_json(need(j, "right_tail")));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        throw Error(ErrorCode::ValidationError, e.what());
    }
}

Json string_to_json(const StringOfMaps& F) {
    Json j;
    Json maps = Json::array();
    for (const auto& m : F.maps) maps.push_back(zmap_to_json(m));
    j["maps"] = std::move(maps);
    j["left_object"] = zmap_to_json(F.left_object);
    j["right_object"] = zmap_to_json(F.right_object);
    return j;
}

Json cover_to_json(const Cover& c) {
    Json j;
    j["A"] = std::vector<Vertex>(c.A.begin(), c.A.end());
    j["B"] = std::vector<Vertex>(c.B.begin(), c.B.end());
    return j;
}

Cover cover_from_json(const Json& j, const SemiCoarseSpace& space) {
    auto A = int_list(need(j, "A"), "A");
    auto B = int_list(need(j, "B"), "B");
    Cover cover{space, {A.begin(), A.end()}, {B.begin(), B.end()}};
    for (Vertex v : cover.A)
        if (!space.has_vertex(v))
            throw Error(ErrorCode::ValidationError, "cover set A mentions an unknown vertex");
    for (Vertex v : cover.B)
        if (!space.has_vertex(v))
            throw Error(ErrorCode::ValidationError, "cover set B mentions an unknown vertex");
    return cover;
}

Json atlas_to_json(const Atlas& atlas) {
    Json j = Json::array();
    for (const auto& U : atlas) j.push_back(std::vector<Vertex>(U.begin(), U.end()));
    return j;
}

Atlas atlas_from_json(const Json& j) {
    if (!j.is_array()) parse_fail("atlas must be an array of vertex sets");
    Atlas atlas;
    for (const auto& u : j) {
        auto verts = int_list(u, "atlas member");
        atlas.push_back({verts.begin(), verts.end()});
    }
    return atlas;
}

namespace {

const char* step_name(RewriteStep::Kind k) {
    switch (k) {
        case RewriteStep::Dop: return "dop";
        case RewriteStep::Merge: return "merge";
        case RewriteStep::Cut: return "cut";
        case RewriteStep::ShiftAll: return "shift";
        case RewriteStep::DeletePt: return "delete";
        default: return "add";
    }
}

RewriteStep::Kind step_kind(const std::string& s) {
    if (s == "dop") return RewriteStep::Dop;
    if (s == "merge") return RewriteStep::Merge;
    if (s == "cut") return RewriteStep::Cut;
    if (s == "shift") return RewriteStep::ShiftAll;
    if (s == "delete") return RewriteStep::DeletePt;
    if (s == "add") return RewriteStep::AddPt;
    parse_fail("unknown rewrite step kind '" + s + "'");
}

} // namespace

Json trace_to_json(const RewriteTrace& trace) {
    Json j = Json::array();
    for (const auto& s : trace) {
        Json step;
        step["kind"] = step_name(s.kind);
        step["i"] = s.i;
        step["j"] = s.j;
        if (s.kind == RewriteStep::AddPt) step["x"] = s.x;
        j.push_back(std::move(step));
    }
    return j;
}

RewriteStep step_from_json(const Json& j) {
    RewriteStep s;
    s.kind = step_kind(need(j, "kind").get<std::string>());
    s.i = static_cast<std::size_t>(need_int(j, "i"));
    s.j = need_int(j, "j");
    if (j.contains("x")) s.x = need_int(j, "x");
    return s;
}

RewriteTrace trace_from_json(const Json& j) {
    if (!j.is_array()) parse_fail("trace must be an array of steps");
    RewriteTrace trace;
    for (const auto& s : j) trace.push_back(step_from_json(s));
    return trace;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["verdict"] = verdict_name(v.kind);
    j["reason"] = v.reason;
    if (v.certificate) {
        Json cert;
        cert["rows"] = v.certificate->rows;
        j["certificate"] = std::move(cert);
    }
    return j;
}

Fixture parse_fixture(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(e.what());
    }
    Fixture fx;
    fx.name = j.contains("name") ? need(j, "name").get<std::string>() : "";
    if (j.contains("space")) fx.space = space_from_json(j.at("space"));
    if (j.contains("cover")) {
        if (!fx.space) parse_fail("a cover requires a top-level space");
        fx.cover = cover_from_json(j.at("cover"), *fx.space);
    }
    if (j.contains("atlas")) fx.atlas = atlas_from_json(j.at("atlas"));
    if (j.contains("zmaps")) {
        const Json& zm = j.at("zmaps");
        if (!zm.is_object()) parse_fail("zmaps must be an object of named maps");
        for (const auto& [name, desc] : zm.items()) {
            Json d = desc;
            if (!d.contains("space")) {
                if (!fx.space) parse_fail("zmap '" + name + "' has no space");
                d["space"] = space_to_json(*fx.space);
            }
            fx.zmaps.emplace(name, zmap_from_json(d));
        }
    }
    if (j.contains("strings")) {
        const Json& st = j.at("strings");
        if (!st.is_object()) parse_fail("strings must be an object of named strings");
        for (const auto& [name, desc] : st.items()) {
            const Json& maps_j = need(desc, "maps");
            if (!maps_j.is_array()) parse_fail("string maps must be an array");
            std::vector<ZMap> maps;
            for (const auto& m : maps_j) {
                if (m.is_string()) {
                    auto it = fx.zmaps.find(m.get<std::string>());
                    if (it == fx.zmaps.end())
                        parse_fail("string '" + name + "' references unknown zmap '" +
                                   m.get<std::string>() + "'");
                    maps.push_back(it->second);
                } else {
                    Json d = m;
                    if (!d.contains("space") && fx.space) d["space"] = space_to_json(*fx.space);
                    maps.push_back(zmap_from_json(d));
                }
            }
            try {
                fx.strings.emplace(name, make_string(maps));
            } catch (const Error& e) {
                throw Error(ErrorCode::ValidationError,
                            "string '" + name + "' failed to verify: " + e.what());
            }
        }
    }
    fx.checks = j.contains("checks") ? j.at("checks") : Json::array();
    if (!fx.checks.is_array()) parse_fail("checks must be an array");
    return fx;
}

namespace {

const ZMap& fixture_zmap(const Fixture& fx, const Json& ref) {
    if (!ref.is_string()) parse_fail("zmap reference must be a name string");
    auto it = fx.zmaps.find(ref.get<std::string>());
    if (it == fx.zmaps.end()) parse_fail("unknown zmap '" + ref.get<std::string>() + "'");
    return it->second;
}

const StringOfMaps& fixture_string(const Fixture& fx, const Json& ref) {
    if (!ref.is_string()) parse_fail("string reference must be a name string");
    auto it = fx.strings.find(ref.get<std::string>());
    if (it == fx.strings.end()) parse_fail("unknown string '" + ref.get<std::string>() + "'");
    return it->second;
}

std::optional<long long> scale_from(const Json& j) {
    if (j == "inf") return std::nullopt;
    return j.get<long long>();
}

struct Outcome {
    bool matched = false;
    std::string detail;
};

Outcome match_verdict(const Verdict& v, const Json& expect) {
    return {verdict_name(v.kind) == expect.get<std::string>(),
            verdict_name(v.kind) + (v.reason.empty() ? "" : " (" + v.reason + ")")};
}

Outcome run_check(const Fixture& fx, const Json& c) {
    const std::string op = need(c, "op").get<std::string>();

    if (op == "well_split") {
        if (!fx.cover) parse_fail("well_split needs a fixture cover");
        auto rep = well_split(*fx.cover);
        bool ok = rep.verdict == need(c, "expect").get<bool>();
        std::string detail = rep.verdict ? "well-split" : "not well-split";
        if (!rep.failures.empty()) {
            detail += "; first failure: condition " +
                      std::to_string(rep.failures.front().failed_condition) + ", " +
                      rep.failures.front().witness;
            if (c.contains("expect_condition"))
                ok = ok && rep.failures.front().failed_condition ==
                               c.at("expect_condition").get<int>();
        } else if (c.contains("expect_condition")) {
            ok = false;
        }
        return {ok, detail};
    }

    if (op == "well_split_halflines") {
        auto rep = well_split_intline_halflines(scale_from(need(c, "scale")));
        return {rep.verdict == need(c, "expect").get<bool>(),
                rep.verdict ? "well-split" : "not well-split"};
    }

    if (op == "halfline_cross_pair_excluded") {
        auto scale = scale_from(need(c, "scale"));
        long long kmax = need_int(c, "k_max");
        for (long long k = 1; k <= kmax; ++k)
            if (!halfline_cross_pair_excluded(scale, k))
                return {false, "pair (-" + std::to_string(k) + "," + std::to_string(k) +
                                   ") not excluded"};
        return {true, "all cross pairs up to k=" + std::to_string(kmax) + " excluded"};
    }

    if (op == "object_equal")
        return match_verdict(object_equal(fixture_zmap(fx, need(c, "f")),
                                          fixture_zmap(fx, need(c, "g"))),
                             need(c, "expect"));

    if (op == "eventually_equal") {
        bool got = eventually_equal(fixture_zmap(fx, need(c, "f")), fixture_zmap(fx, need(c, "g")));
        return {got == need(c, "expect").get<bool>(), got ? "eventually equal" : "not eventually equal"};
    }

    if (op == "function_equal") {
        bool got = function_equal(fixture_zmap(fx, need(c, "f")), fixture_zmap(fx, need(c, "g")));
        return {got == need(c, "expect").get<bool>(), got ? "equal" : "not equal"};
    }

    if (op == "simd_equiv") {
        std::size_t bound = c.contains("bound") ? static_cast<std::size_t>(need_int(c, "bound"))
                                                : std::size_t{20'000};
        auto res = simd_equiv(fixture_zmap(fx, need(c, "f")), fixture_zmap(fx, need(c, "g")), bound);
        return match_verdict(res.verdict, need(c, "expect"));
    }

    if (op == "merge") {
        const auto& F = fixture_string(fx, need(c, "string"));
        const Json& expect = need(c, "expect");
        try {
            auto G = apply_merge(F, static_cast<std::size_t>(need_int(c, "i")), need_int(c, "j"));
            if (!expect.is_string() || expect != "ok")
                return {false, "merge succeeded but an error was expected"};
            if (c.contains("result") &&
                !function_equal(G.maps.at(static_cast<std::size_t>(need_int(c, "i"))),
                                fixture_zmap(fx, c.at("result"))))
                return {false, "merged map differs from the expected result"};
            return {true, "merge applied"};
        } catch (const Error& e) {
            return {expect.is_string() && expect.get<std::string>() == error_code_name(e.code()),
                    std::string("refused: ") + e.what()};
        }
    }

    if (op == "merge_chain") {
        StringOfMaps G = fixture_string(fx, need(c, "string"));
        for (const auto& s : need(c, "steps"))
            G = apply_merge(G, static_cast<std::size_t>(s.at(0).get<long long>()),
                            s.at(1).get<long long>());
        if (G.maps.size() != 1) return {false, "chain did not reduce to a single map"};
        bool ok = G.maps[0] == fixture_zmap(fx, need(c, "result"));
        return {ok, ok ? "chain reduces to the expected descriptor"
                       : "descriptor differs from the expected result"};
    }

    if (op == "string_equiv") {
        std::size_t bound = c.contains("bound") ? static_cast<std::size_t>(need_int(c, "bound"))
                                                : std::size_t{20'000};
        return match_verdict(string_equiv(fixture_string(fx, need(c, "F")),
                                          fixture_string(fx, need(c, "G")), bound),
                             need(c, "expect"));
    }

    if (op == "pi1") {
        if (!fx.space) parse_fail("pi1 needs a fixture space");
        auto res = pi1_classes(*fx.space, need_int(c, "basepoint"), need_int(c, "length_cap"));
        bool ok = res.class_count == static_cast<std::size_t>(need_int(c, "classes"));
        std::string detail = std::to_string(res.loop_count) + " loops, " +
                             std::to_string(res.class_count) + " classes";
        if (c.contains("loops"))
            ok = ok && res.loop_count == static_cast<std::size_t>(need_int(c, "loops"));
        return {ok, detail};
    }

    if (op == "eliminable") {
        std::vector<std::pair<StringOfMaps, StringOfMaps>> probes;
        for (const auto& p : need(c, "probes"))
            probes.emplace_back(fixture_string(fx, p.at(0)), fixture_string(fx, p.at(1)));
        auto rep = eliminable_check(probes);
        const Json& expect = need(c, "expect");
        if (expect.size() != rep.cuttable.size()) return {false, "probe count mismatch"};
        for (std::size_t i = 0; i < rep.cuttable.size(); ++i)
            if (rep.cuttable[i] != expect.at(i).get<bool>())
                return {false, "probe " + std::to_string(i) +
                                   (rep.cuttable[i] ? " cuttable" : " not cuttable")};
        return {true, rep.all_cuttable ? "all probes cuttable" : "cuttability as expected"};
    }

    if (op == "verify_cover") {
        if (!fx.space || !fx.cover || !fx.atlas)
            parse_fail("verify_cover needs space, cover, and atlas");
        auto rep = verify_cover_hypotheses(*fx.space, *fx.cover, *fx.atlas);
        std::string detail = rep.all_pass ? "all hypotheses hold" : "failed: ";
        for (const auto& f : rep.failures) detail += f + "; ";
        return {rep.all_pass == need(c, "expect").get<bool>(), detail};
    }

    if (op == "factorize") {
        if (!fx.cover) parse_fail("factorize needs a fixture cover");
        auto fr = factorize(fixture_zmap(fx, need(c, "f")), *fx.cover);
        if (c.contains("expect_sides")) {
            auto want = int_list(c.at("expect_sides"), "expect_sides");
            if (std::vector<long long>(fr.sides.begin(), fr.sides.end()) != want)
                return {false, "side pattern differs"};
        }
        auto rebuilt = replay(fr.string, fr.trace);
        if (rebuilt.maps.size() != 1) return {false, "trace replay did not rebuild one map"};
        auto v = string_equiv(rebuilt, make_string({fixture_zmap(fx, need(c, "f"))}));
        return {v.proved(), std::to_string(fr.string.maps.size()) +
                                " factors; replay equivalence " + verdict_name(v.kind)};
    }

    if (op == "vk_preserve") {
        if (!fx.cover || !fx.atlas) parse_fail("vk_preserve needs cover and atlas");
        auto v = relation_preservation_test(fixture_string(fx, need(c, "F")),
                                            step_from_json(need(c, "move")), *fx.cover, *fx.atlas);
        return match_verdict(v, need(c, "expect"));
    }

    parse_fail("unknown check op '" + op + "'");
}

} // namespace

std::vector<CheckResult> run_fixture(const Fixture& fixture) {
    std::vector<CheckResult> results;
    for (const auto& c : fixture.checks) {
        CheckResult r;
        r.op = need(c, "op").get<std::string>();
        r.provenance = c.contains("provenance") ? c.at("provenance").get<std::string>() : "";
        try {
            auto out = run_check(fixture, c);
            r.matched = out.matched;
            r.detail = out.detail;
        } catch (const Error& e) {
            r.matched = false;
            r.detail = std::string("error: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace scg
