#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "scg/json_io.hpp"

namespace fs = std::filesystem;
using namespace scg;

namespace {

constexpr int kExitProved = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInvalid = 3;

struct Options {
    std::string in;
    std::size_t bound = 64;
    long long length_cap = 12;
    std::string format = "json";
    long long seed = 0;
    std::string move; // vk preserve only
};

int verdict_exit(VerdictKind k) {
    switch (k) {
        case VerdictKind::Proved: return kExitProved;
        case VerdictKind::Refuted: return kExitRefuted;
        default: return kExitUnknown;
    }
}

std::string verdict_word(VerdictKind k) {
    switch (k) {
        case VerdictKind::Proved: return "PROVED";
        case VerdictKind::Refuted: return "REFUTED";
        default: return "UNKNOWN";
    }
}

void print_text(const Json& j, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                std::cout << pad << k << ":\n";
                print_text(v, indent + 1);
            } else {
                std::cout << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                          << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                std::cout << pad << "-\n";
                print_text(v, indent + 1);
            } else {
                std::cout << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump())
                          << "\n";
            }
        }
    } else {
        std::cout << pad << j.dump() << "\n";
    }
}

int emit(const Options& opt, Json report, int code) {
    report["exit"] = code;
    if (opt.format == "text")
        print_text(report);
    else
        std::cout << report.dump(2) << "\n";
    return code;
}

Fixture load_fixture(const Options& opt) {
    if (opt.in.empty()) throw Error(ErrorCode::ParseError, "missing --in FILE");
    std::ifstream in(opt.in);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open input file " + opt.in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str());
}

const ZMap& named_zmap(const Fixture& fx, const std::string& name) {
    auto it = fx.zmaps.find(name);
    if (it == fx.zmaps.end())
        throw Error(ErrorCode::ParseError, "input must define a zmap named '" + name + "'");
    return it->second;
}

const StringOfMaps& named_string(const Fixture& fx, const std::string& name) {
    auto it = fx.strings.find(name);
    if (it == fx.strings.end())
        throw Error(ErrorCode::ParseError, "input must define a string named '" + name + "'");
    return it->second;
}

Json fixture_raw(const Options& opt) {
    std::ifstream in(opt.in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return Json::parse(ss.str());
}

// ---- command bodies ------------------------------------------------------

int cmd_space_check(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.space) throw Error(ErrorCode::ParseError, "input must define a space");
    Json report{{"command", "space check"}, {"input", opt.in}};
    report["verdict"] = "verified";
    if (fx.space->is_finite()) {
        report["vertices"] = fx.space->graph().vertices.size();
        report["edges"] = fx.space->graph().edges.size();
        report["components"] = components(*fx.space).size();
    } else {
        report["scale"] = fx.space->scale() ? Json(*fx.space->scale()) : Json("inf");
    }
    return emit(opt, report, kExitProved);
}

int cmd_space_build(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.space) throw Error(ErrorCode::ParseError, "input must define a space");
    Json report{{"command", "space build"},
                {"input", opt.in},
                {"verdict", "verified"},
                {"space", space_to_json(*fx.space)}};
    return emit(opt, report, kExitProved);
}

int cmd_wellsplit(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.space || !fx.cover)
        throw Error(ErrorCode::ParseError, "input must define a space and a cover");
    auto rep = well_split(*fx.cover);
    Json report{{"command", "wellsplit"}, {"input", opt.in}};
    report["verdict"] = rep.verdict ? "PROVED" : "REFUTED";
    report["premise_triples_checked"] = rep.premise_triples_checked;
    Json pe = Json::array();
    for (const auto& [a, b] : rep.pushout_edges) pe.push_back(Json::array({a, b}));
    report["pushout_edges"] = std::move(pe);
    Json fails = Json::array();
    for (const auto& f : rep.failures)
        fails.push_back(Json{{"triple", Json::array({f.triple.x, f.triple.y, f.triple.yp})},
                             {"condition", f.failed_condition},
                             {"witness", f.witness}});
    report["failures"] = std::move(fails);
    return emit(opt, report, rep.verdict ? kExitProved : kExitRefuted);
}

int cmd_homotopy(const Options& opt) {
    auto fx = load_fixture(opt);
    auto res = simd_equiv(named_zmap(fx, "f"), named_zmap(fx, "g"), opt.bound);
    Json report{{"command", "homotopy"}, {"input", opt.in}, {"bound", opt.bound}};
    report["verdict"] = verdict_word(res.verdict.kind);
    report["reason"] = res.verdict.reason;
    if (res.verdict.proved()) {
        Json moves = Json::array();
        for (const auto& m : res.moves) {
            Json mj{{"kind", m.kind == DMove::Delete ? "delete" : "add"}, {"z", m.z}};
            if (m.kind == DMove::Add) mj["x"] = m.x;
            moves.push_back(std::move(mj));
        }
        report["moves"] = std::move(moves);
    }
    return emit(opt, report, verdict_exit(res.verdict.kind));
}

int cmd_pi1(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.space) throw Error(ErrorCode::ParseError, "input must define a space");
    Json raw = fixture_raw(opt);
    if (!raw.contains("basepoint"))
        throw Error(ErrorCode::ParseError, "input must define a basepoint");
    Vertex basepoint = raw.at("basepoint").get<long long>();
    auto res = pi1_classes(*fx.space, basepoint, opt.length_cap);
    Json report{{"command", "pi1"},
                {"input", opt.in},
                {"basepoint", basepoint},
                {"length_cap", res.length_cap},
                {"loop_count", res.loop_count},
                {"class_count", res.class_count},
                {"stabilization", res.stabilization_flag}};
    Json reps = Json::array();
    for (const auto& r : res.representatives) reps.push_back(r);
    report["representatives"] = std::move(reps);
    report["verdict"] = "verified";
    return emit(opt, report, kExitProved);
}

int cmd_zmap_eq(const Options& opt) {
    auto fx = load_fixture(opt);
    auto v = object_equal(named_zmap(fx, "f"), named_zmap(fx, "g"));
    Json report{{"command", "zmap eq"}, {"input", opt.in}};
    report["verdict"] = verdict_word(v.kind);
    report["reason"] = v.reason;
    if (v.certificate) report["certificate"] = Json{{"rows", v.certificate->rows}};
    return emit(opt, report, verdict_exit(v.kind));
}

int cmd_string_normalize(const Options& opt) {
    auto fx = load_fixture(opt);
    auto nr = normalize(named_string(fx, "F"));
    Json report{{"command", "string normalize"},
                {"input", opt.in},
                {"verdict", "PROVED"},
                {"normal_form", string_to_json(nr.result)},
                {"trace", trace_to_json(nr.trace)}};
    return emit(opt, report, kExitProved);
}

int cmd_string_equal(const Options& opt) {
    auto fx = load_fixture(opt);
    const auto& F = named_string(fx, "F");
    const auto& G = named_string(fx, "G");
    auto v = string_equiv(F, G, opt.bound);
    Json report{{"command", "string equal"}, {"input", opt.in}, {"bound", opt.bound}};
    report["verdict"] = verdict_word(v.kind);
    report["reason"] = v.reason;
    if (v.proved()) {
        // the replayable evidence: both sides' normalization traces
        report["trace_F"] = trace_to_json(normalize(F).trace);
        report["trace_G"] = trace_to_json(normalize(G).trace);
    }
    return emit(opt, report, verdict_exit(v.kind));
}

int cmd_string_star(const Options& opt) {
    auto fx = load_fixture(opt);
    auto H = star(named_string(fx, "F"), named_string(fx, "G"));
    Json report{{"command", "string star"},
                {"input", opt.in},
                {"verdict", "PROVED"},
                {"result", string_to_json(H)}};
    return emit(opt, report, kExitProved);
}

int cmd_groupoid_embed(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.space) throw Error(ErrorCode::ParseError, "input must define a space");
    Json raw = fixture_raw(opt);
    if (!raw.contains("basepoint") || !raw.contains("loop"))
        throw Error(ErrorCode::ParseError, "input must define a basepoint and a loop");
    Vertex basepoint = raw.at("basepoint").get<long long>();
    std::vector<Vertex> loop = raw.at("loop").get<std::vector<Vertex>>();
    auto F = pi1_embedding(*fx.space, basepoint, loop);
    Json report{{"command", "groupoid embed"},
                {"input", opt.in},
                {"verdict", "PROVED"},
                {"string", string_to_json(F)}};
    return emit(opt, report, kExitProved);
}

int cmd_groupoid_eliminable(const Options& opt) {
    auto fx = load_fixture(opt);
    Json raw = fixture_raw(opt);
    if (!raw.contains("probes")) throw Error(ErrorCode::ParseError, "input must define probes");
    std::vector<std::pair<StringOfMaps, StringOfMaps>> probes;
    for (const auto& p : raw.at("probes"))
        probes.emplace_back(named_string(fx, p.at(0).get<std::string>()),
                            named_string(fx, p.at(1).get<std::string>()));
    auto rep = eliminable_check(probes);
    Json report{{"command", "groupoid eliminable"}, {"input", opt.in}};
    report["cuttable"] = rep.cuttable;
    report["all_cuttable"] = rep.all_cuttable;
    report["verdict"] = rep.all_cuttable ? "PROVED" : "REFUTED";
    return emit(opt, report, rep.all_cuttable ? kExitProved : kExitRefuted);
}

int cmd_vk_verify_cover(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.space || !fx.cover || !fx.atlas)
        throw Error(ErrorCode::ParseError, "input must define space, cover, and atlas");
    auto rep = verify_cover_hypotheses(*fx.space, *fx.cover, *fx.atlas);
    Json report{{"command", "vk verify-cover"},
                {"input", opt.in},
                {"covers", rep.covers},
                {"well_split", rep.well_split_ok},
                {"members_connected", rep.members_connected},
                {"members_inside", rep.members_inside},
                {"components_meet_atlas", rep.components_meet_atlas},
                {"failures", rep.failures}};
    report["verdict"] = rep.all_pass ? "PROVED" : "REFUTED";
    return emit(opt, report, rep.all_pass ? kExitProved : kExitRefuted);
}

int cmd_vk_factorize(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.cover) throw Error(ErrorCode::ParseError, "input must define a cover");
    auto fr = factorize(named_zmap(fx, "f"), *fx.cover);
    Json report{{"command", "vk factorize"}, {"input", opt.in}};
    Json factors = Json::array();
    for (std::size_t i = 0; i < fr.string.maps.size(); ++i)
        factors.push_back(Json{{"side", fr.sides[i] == 0 ? "A" : "B"},
                               {"map", zmap_to_json(fr.string.maps[i])}});
    report["factors"] = std::move(factors);
    report["trace"] = trace_to_json(fr.trace);
    report["verdict"] = "PROVED";
    return emit(opt, report, kExitProved);
}

int cmd_vk_decompose(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.space || !fx.cover || !fx.atlas)
        throw Error(ErrorCode::ParseError, "input must define space, cover, and atlas");
    auto w = decompose(named_string(fx, "F"), *fx.cover, *fx.atlas);
    Json report{{"command", "vk decompose"}, {"input", opt.in}};
    Json factors = Json::array();
    for (const auto& f : w.factors)
        factors.push_back(
            Json{{"tag", std::string(1, f.tag)}, {"piece", string_to_json(f.piece)}});
    report["word"] = std::move(factors);
    report["verdict"] = "PROVED";
    return emit(opt, report, kExitProved);
}

int cmd_vk_preserve(const Options& opt) {
    auto fx = load_fixture(opt);
    if (!fx.cover || !fx.atlas)
        throw Error(ErrorCode::ParseError, "input must define a cover and an atlas");
    Json move_j;
    if (!opt.move.empty()) {
        move_j = Json::parse(opt.move, nullptr, false);
        if (move_j.is_discarded())
            throw Error(ErrorCode::ParseError, "--move must be a JSON step object");
    } else {
        Json raw = fixture_raw(opt);
        if (!raw.contains("move"))
            throw Error(ErrorCode::ParseError, "give --move or a 'move' field in the input");
        move_j = raw.at("move");
    }
    auto v = relation_preservation_test(named_string(fx, "F"), step_from_json(move_j), *fx.cover,
                                        *fx.atlas, opt.bound);
    Json report{{"command", "vk preserve"}, {"input", opt.in}, {"move", move_j}};
    report["verdict"] = verdict_word(v.kind);
    report["reason"] = v.reason;
    return emit(opt, report, verdict_exit(v.kind));
}

int cmd_corpus_run(const Options& opt) {
    fs::path dir = opt.in.empty() ? fs::path("corpus") : fs::path(opt.in);
    Json report{{"command", "corpus run"}, {"corpus", dir.string()}, {"seed", opt.seed}};
    if (!fs::is_directory(dir)) {
        report["warning"] = "corpus directory not found";
        report["fixtures"] = Json::array();
        report["checks_total"] = 0;
        report["mismatches"] = 0;
        report["verdict"] = "PROVED";
        return emit(opt, report, kExitProved);
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    Json fixtures = Json::array();
    std::size_t total = 0, mismatches = 0;
    for (const auto& file : files) {
        Json fj{{"file", file.filename().string()}};
        Json checks = Json::array();
        try {
            std::ifstream in(file);
            std::ostringstream ss;
            ss << in.rdbuf();
            auto fx = parse_fixture(ss.str());
            fj["name"] = fx.name;
            for (const auto& r : run_fixture(fx)) {
                ++total;
                if (!r.matched) ++mismatches;
                checks.push_back(Json{{"op", r.op},
                                      {"provenance", r.provenance},
                                      {"matched", r.matched},
                                      {"detail", r.detail}});
            }
        } catch (const Error& e) {
            ++total;
            ++mismatches;
            checks.push_back(Json{{"op", "parse"},
                                  {"provenance", ""},
                                  {"matched", false},
                                  {"detail", std::string("error: ") + e.what()}});
        }
        fj["checks"] = std::move(checks);
        fixtures.push_back(std::move(fj));
    }
    report["fixtures"] = std::move(fixtures);
    report["checks_total"] = total;
    report["mismatches"] = mismatches;
    if (files.empty()) report["warning"] = "empty corpus directory";
    report["verdict"] = mismatches == 0 ? "PROVED" : "REFUTED";
    return emit(opt, report, mismatches == 0 ? kExitProved : kExitRefuted);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for discrete homotopy on semi-coarse spaces"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--in", opt.in, "input fixture file (or corpus directory)");
    app.add_option("--bound", opt.bound, "search bound for equivalence provers");
    app.add_option("--length-cap", opt.length_cap, "loop length cap for pi1");
    app.add_option("--format", opt.format, "report format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", opt.seed, "seed echoed into reports for random suites");
    app.fallthrough();

    int (*body)(const Options&) = nullptr;
    auto pick = [&body](int (*fn)(const Options&)) { return [&body, fn]() { body = fn; }; };

    auto* space = app.add_subcommand("space", "parse and validate spaces");
    space->require_subcommand(1);
    space->add_subcommand("check", "validate a space descriptor")->callback(pick(cmd_space_check));
    space->add_subcommand("build", "emit the canonical space descriptor")
        ->callback(pick(cmd_space_build));

    app.add_subcommand("wellsplit", "decide well-splitting of a cover")
        ->callback(pick(cmd_wellsplit));
    app.add_subcommand("homotopy", "bounded move-equivalence of two maps f, g")
        ->callback(pick(cmd_homotopy));
    app.add_subcommand("pi1", "loop classes at a basepoint up to the length cap")
        ->callback(pick(cmd_pi1));

    auto* zmap = app.add_subcommand("zmap", "operations on maps of the integers");
    zmap->require_subcommand(1);
    zmap->add_subcommand("eq", "object equality of two maps f, g")->callback(pick(cmd_zmap_eq));

    auto* str = app.add_subcommand("string", "operations on strings of maps");
    str->require_subcommand(1);
    str->add_subcommand("normalize", "normal form and rewrite trace of F")
        ->callback(pick(cmd_string_normalize));
    str->add_subcommand("equal", "equivalence of strings F and G")
        ->callback(pick(cmd_string_equal));
    str->add_subcommand("star", "composition of strings F and G")
        ->callback(pick(cmd_string_star));

    auto* grp = app.add_subcommand("groupoid", "groupoid-level operations");
    grp->require_subcommand(1);
    grp->add_subcommand("embed", "embed a based loop as a string")
        ->callback(pick(cmd_groupoid_embed));
    grp->add_subcommand("eliminable", "exact-cut eliminability probes")
        ->callback(pick(cmd_groupoid_eliminable));

    auto* vk = app.add_subcommand("vk", "cover decomposition toolkit");
    vk->require_subcommand(1);
    vk->add_subcommand("verify-cover", "check all cover hypotheses")
        ->callback(pick(cmd_vk_verify_cover));
    vk->add_subcommand("factorize", "factor map f through the cover")
        ->callback(pick(cmd_vk_factorize));
    vk->add_subcommand("decompose", "decompose string F into a tagged word")
        ->callback(pick(cmd_vk_decompose));
    auto* pres = vk->add_subcommand("preserve", "relation preservation under one rewrite");
    pres->add_option("--move", opt.move, "rewrite step as a JSON object");
    pres->callback(pick(cmd_vk_preserve));

    auto* corpus = app.add_subcommand("corpus", "bundled example corpus");
    corpus->require_subcommand(1);
    corpus->add_subcommand("run", "run every corpus fixture")->callback(pick(cmd_corpus_run));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        return body(opt);
    } catch (const Error& e) {
        bool input_error =
            e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError;
        Json report{{"command", "error"},
                    {"error", error_code_name(e.code())},
                    {"detail", e.what()}};
        return emit(opt, report, input_error ? kExitInvalid : kExitRefuted);
    } catch (const std::exception& e) {
        Json report{{"command", "error"}, {"error", "internal"}, {"detail", e.what()}};
        return emit(opt, report, kExitInvalid);
    }
}
