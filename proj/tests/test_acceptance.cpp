// Acceptance suite: twelve end-to-end criteria, one pass/fail line each.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "scg/json_io.hpp"

using namespace scg;
namespace fs = std::filesystem;

namespace {

std::string g_detail;

void detail(const std::string& s) {
    if (g_detail.empty()) g_detail = s;
}

// ---------- shared fixtures ----------

SemiCoarseSpace hex() {
    return build_finite_space({0, 1, 2, 3, 4, 5},
                              {{4, 0}, {4, 2}, {4, 3}, {4, 5}, {0, 1}, {0, 2}, {0, 3}, {0, 5},
                               {1, 3}, {1, 5}, {3, 2}, {3, 5}});
}
Cover hex_cover() { return {hex(), {0, 1, 4, 5}, {2, 3, 4, 5}}; }
Atlas hex_atlas() { return {{5}, {0}, {2}}; }

SemiCoarseSpace cycle(int n) {
    std::vector<Vertex> verts;
    PairSet edges;
    for (int i = 0; i < n; ++i) {
        verts.push_back(i);
        edges.emplace_back(i, (i + 1) % n);
    }
    return build_finite_space(verts, edges);
}

// all labeled graphs on n vertices, as edge bitmasks over the C(n,2) slots
std::vector<std::pair<Vertex, Vertex>> slot_pairs(int n) {
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    return slots;
}

SemiCoarseSpace graph_from_mask(int n, const std::vector<std::pair<Vertex, Vertex>>& slots,
                                unsigned long mask) {
    std::vector<Vertex> verts;
    for (int i = 0; i < n; ++i) verts.push_back(i);
    PairSet edges;
    for (std::size_t s = 0; s < slots.size(); ++s)
        if (mask >> s & 1) edges.push_back(slots[s]);
    return build_finite_space(verts, edges);
}

Vertex walk_step(const SemiCoarseSpace& space, Vertex at, std::mt19937_64& rng) {
    auto nb = space.closed_neighborhood(at);
    return nb[rng() % nb.size()];
}

std::vector<Vertex> random_walk(const SemiCoarseSpace& space, Vertex start, std::size_t len,
                                std::mt19937_64& rng) {
    std::vector<Vertex> w{start};
    while (w.size() < len) w.push_back(walk_step(space, w.back(), rng));
    return w;
}

SemiCoarseSpace random_graph(std::mt19937_64& rng, int max_n) {
    int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 1));
    std::vector<Vertex> verts;
    PairSet edges;
    for (int i = 0; i < n; ++i) verts.push_back(i);
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1); // spine keeps it connected
    for (int a = 0; a < n; ++a)
        for (int b = a + 2; b < n; ++b)
            if (rng() % 10 < 3) edges.emplace_back(a, b);
    return build_finite_space(verts, edges);
}

bool same_maps(const StringOfMaps& A, const StringOfMaps& B) {
    if (A.maps.size() != B.maps.size()) return false;
    for (std::size_t k = 0; k < A.maps.size(); ++k)
        if (!function_equal(A.maps[k], B.maps[k])) return false;
    return true;
}

// ---------- criteria ----------

bool criterion1() {
    auto rep6 = well_split(hex_cover());
    if (!rep6.verdict) return detail("6-vertex cover not recognized as well-split"), false;

    auto five = build_finite_space({0, 1, 2, 3, 4},
                                   {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    auto rep5 = well_split({five, {0, 2, 3, 4}, {1, 2, 3, 4}});
    if (rep5.verdict || rep5.failures.empty() || rep5.failures.front().failed_condition != 2)
        return detail("5-vertex non-example did not fail at condition 2"), false;

    Cover parity{cycle(8), {0, 2, 4, 6}, {1, 3, 5, 7}};
    auto rep8 = well_split(parity);
    if (rep8.verdict || rep8.failures.empty() || rep8.failures.front().failed_condition != 1)
        return detail("parity cover of the 8-cycle did not fail at condition 1"), false;
    if (!pushout_edge_set(parity).empty())
        return detail("parity cover has a nonempty pushout edge set"), false;
    return true;
}

bool criterion2() {
    for (int n = 1; n <= 5; ++n) {
        auto slots = slot_pairs(n);
        for (unsigned long mask = 0; mask < (1ul << slots.size()); ++mask) {
            auto rep = disconnected_iff_empty_intersection(graph_from_mask(n, slots, mask));
            if (!rep.equivalent)
                return detail("equivalence fails at n=" + std::to_string(n) + " mask=" +
                              std::to_string(mask)),
                       false;
        }
    }
    return true;
}

bool criterion3() {
    for (int n = 1; n <= 5; ++n) {
        auto slots = slot_pairs(n);
        for (unsigned long mask = 0; mask < (1ul << slots.size()); ++mask) {
            auto space = graph_from_mask(n, slots, mask);
            // every cover: each vertex in A only, B only, or both
            std::vector<int> side(static_cast<std::size_t>(n), 0);
            long long total = 1;
            for (int i = 0; i < n; ++i) total *= 3;
            for (long long code = 0; code < total; ++code) {
                long long c = code;
                Cover cover{space, {}, {}};
                for (int i = 0; i < n; ++i, c /= 3) {
                    int s = static_cast<int>(c % 3);
                    if (s != 1) cover.A.insert(i);
                    if (s != 0) cover.B.insert(i);
                }
                if (cover.A.empty() || cover.B.empty()) continue; // not a cover by two sets
                auto rep = which_side_check(cover);
                if (!rep.pass)
                    return detail("boundary property fails at n=" + std::to_string(n) +
                                  " mask=" + std::to_string(mask) + " cover code " +
                                  std::to_string(code)),
                           false;
            }
        }
    }
    return true;
}

bool criterion4() {
    auto c4 = cycle(4);
    auto e1 = make_zmap(c4, 0, {0, 1, 2, 3, 0}, TailSpec::constant(0), TailSpec::constant(0));
    auto e3 = make_zmap(c4, 0, {0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3, 0}, TailSpec::constant(0),
                        TailSpec::constant(0));
    auto F = make_string({e1, shift(e1, 4), shift(e1, 8)});
    auto first = apply_merge(apply_merge(F, 0, 4), 0, 8);
    auto second = apply_merge(apply_merge(F, 1, 8), 0, 4);
    if (first.maps.size() != 1 || second.maps.size() != 1)
        return detail("merge chain did not reduce to one map"), false;
    if (!(first.maps[0] == e3) || !(second.maps[0] == e3))
        return detail("merge orders disagree with the canonical descriptor"), false;
    try {
        apply_merge(make_string({e1, e1}), 0, 4);
        return detail("(e1,e1) merge was not rejected"), false;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyMergeWindow)
            return detail("(e1,e1) merge rejected with the wrong code"), false;
    }
    return true;
}

StringOfMaps random_string(const SemiCoarseSpace& space, std::mt19937_64& rng,
                           std::size_t max_maps, Vertex start) {
    std::size_t nmaps = 1 + rng() % max_maps;
    std::vector<ZMap> maps;
    Vertex at = start;
    long long lo = 0;
    for (std::size_t m = 0; m < nmaps; ++m) {
        auto vals = random_walk(space, at, 3 + rng() % 5, rng);
        at = vals.back();
        maps.push_back(make_zmap(space, lo, vals, TailSpec::constant(vals.front()),
                                 TailSpec::constant(vals.back())));
        lo += 10;
    }
    return make_string(maps);
}

bool criterion5() {
    std::mt19937_64 rng(501);
    for (int t = 0; t < 200; ++t) {
        auto space = random_graph(rng, 6);
        Vertex start = static_cast<Vertex>(rng() % space.graph().vertices.size());
        auto F = random_string(space, rng, 3, start);

        auto inv = star(F, reverse_string(F));
        auto target = make_string({F.maps.front(), reverse(F.maps.front())});
        if (!string_equiv(inv, target, 64).proved())
            return detail("F * reverse(F) law not proved at trial " + std::to_string(t)), false;

        auto idL = make_string({F.left_object});
        auto idR = make_string({F.right_object});
        if (!string_equiv(star(idL, F), F, 64).proved() ||
            !string_equiv(star(F, idR), F, 64).proved())
            return detail("identity law not proved at trial " + std::to_string(t)), false;

        // one-step rewrite invariance of the composition
        auto G = reverse_string(F);
        long long j = F.maps[0].window.lo;
        RewriteStep add{RewriteStep::AddPt, 0, j, eval(F.maps[0], j)};
        auto Fp = apply_step(F, add);
        if (!string_equiv(star(F, G), star(Fp, G), 64).proved())
            return detail("rewrite invariance not proved at trial " + std::to_string(t)), false;
    }
    return true;
}

bool criterion6() {
    std::mt19937_64 rng(601);
    for (int t = 0; t < 100; ++t) {
        auto space = random_graph(rng, 6);
        std::size_t len = 4 + rng() % 5; // window <= 8
        auto row0 = random_walk(space, static_cast<Vertex>(rng() % space.graph().vertices.size()),
                                len, rng);
        std::vector<std::vector<Vertex>> rows{row0};
        std::size_t nrows = 2 + rng() % 5; // <= 6 rows
        while (rows.size() < nrows) {
            auto cand = rows.back();
            bool placed = false;
            for (int attempt = 0; attempt < 50 && !placed; ++attempt) {
                auto next = cand;
                std::size_t i = 1 + rng() % (len - 2);
                auto nb = space.closed_neighborhood(next[i]);
                next[i] = nb[rng() % nb.size()];
                if (step_ok({space, rows.back()}, {space, next}) &&
                    make_path(space, next) == FinitePath{space, next}) {
                    rows.push_back(next);
                    placed = true;
                }
            }
            if (!placed) rows.push_back(rows.back());
        }
        auto f = make_zmap(space, 0, rows.front(), TailSpec::constant(rows.front().front()),
                           TailSpec::constant(rows.front().back()));
        auto g = make_zmap(space, 0, rows.back(), TailSpec::constant(rows.back().front()),
                           TailSpec::constant(rows.back().back()));
        HomotopyCertificate cert{HomotopyMode::RelEndpoints, rows};
        try {
            auto moves = homotopy_to_dmoves(f, g, cert, 0);
            if (!function_equal(apply_dmoves(f, moves), g))
                return detail("replay missed the target at trial " + std::to_string(t)), false;
        } catch (const Error& e) {
            return detail("replay threw at trial " + std::to_string(t) + ": " + e.what()), false;
        }
    }
    return true;
}

bool criterion7() {
    auto inf = SemiCoarseSpace::int_line(std::nullopt);
    auto abs1 = make_zmap(inf, 0, {0}, TailSpec::quasi_affine(-1, 0, {0}),
                          TailSpec::quasi_affine(1, 0, {0}));
    auto abs2 = make_zmap(inf, 0, {0}, TailSpec::quasi_affine(-2, 0, {0}),
                          TailSpec::quasi_affine(2, 0, {0}));
    if (!object_equal(abs1, abs2).refuted())
        return detail("|z| vs 2|z| not refuted"), false;
    if (eventually_equal(abs1, abs2)) return detail("|z| vs 2|z| eventually equal"), false;

    // indiscrete space: complete graph on 4 vertices
    PairSet all;
    for (Vertex a = 0; a < 4; ++a)
        for (Vertex b = a + 1; b < 4; ++b) all.emplace_back(a, b);
    auto indiscrete = build_finite_space({0, 1, 2, 3}, all);
    std::mt19937_64 rng(701);
    for (int t = 0; t < 20; ++t) {
        auto make_sym = [&] {
            std::size_t m = 1 + rng() % 3;
            std::vector<Vertex> half;
            for (std::size_t i = 0; i <= m; ++i) half.push_back(static_cast<Vertex>(rng() % 4));
            std::vector<Vertex> vals(half.rbegin(), half.rend());
            vals.insert(vals.end(), half.begin() + 1, half.end());
            return make_zmap(indiscrete, -static_cast<long long>(m), vals,
                             TailSpec::constant(half.back()), TailSpec::constant(half.back()));
        };
        if (!object_equal(make_sym(), make_sym()).proved())
            return detail("indiscrete symmetric pair not proved equal at trial " +
                          std::to_string(t)),
                   false;
    }
    return true;
}

bool criterion8() {
    if (!well_split_intline_halflines(std::nullopt).verdict)
        return detail("half-line cover of the coarse line not well-split"), false;
    for (long long k = 1; k <= 100; ++k)
        if (!halfline_cross_pair_excluded(std::nullopt, k))
            return detail("(-k,k) not excluded at k=" + std::to_string(k)), false;
    return true;
}

bool check_factorization(const ZMap& f, const Cover& cover) {
    auto fr = factorize(f, cover);
    for (std::size_t i = 0; i < fr.string.maps.size(); ++i) {
        const auto& side = fr.sides[i] == 0 ? cover.A : cover.B;
        const auto& m = fr.string.maps[i];
        for (long long z = m.window.lo - 2; z <= m.window.hi() + 2; ++z)
            if (!side.count(eval(m, z))) return false;
        if (i + 1 < fr.string.maps.size()) {
            if (m.right.kind != TailKind::Constant ||
                fr.string.maps[i + 1].left.kind != TailKind::Constant ||
                m.right.value != fr.string.maps[i + 1].left.value)
                return false;
        }
    }
    auto rebuilt = replay(fr.string, fr.trace);
    return rebuilt.maps.size() == 1 && string_equiv(rebuilt, make_string({f})).proved();
}

bool criterion9() {
    auto cover = hex_cover();
    auto crossing = make_zmap(hex(), 0, {1, 0, 2, 3}, TailSpec::constant(1), TailSpec::constant(3));
    if (!check_factorization(crossing, cover))
        return detail("fixture crossing map failed factorization"), false;

    std::mt19937_64 rng(901);
    auto space = hex();
    int done = 0;
    while (done < 50) {
        Vertex start = rng() % 2 ? 0 : 1; // strictly inside A
        auto vals = random_walk(space, start, 4 + rng() % 7, rng);
        if (vals.back() != 2 && vals.back() != 3) continue; // want a genuine crossing
        auto f = make_zmap(space, 0, vals, TailSpec::constant(vals.front()),
                           TailSpec::constant(vals.back()));
        if (!check_factorization(f, cover))
            return detail("seeded crossing map failed at trial " + std::to_string(done)), false;
        ++done;
    }
    return true;
}

bool criterion10() {
    auto space = hex();
    auto cover = hex_cover();
    auto atlas = hex_atlas();
    auto loop1 = make_zmap(space, 0, {0, 3, 5, 0}, TailSpec::constant(0), TailSpec::constant(0));
    auto crossing =
        make_zmap(space, 0, {1, 0, 2, 3}, TailSpec::constant(1), TailSpec::constant(3));
    auto M = make_string({loop1, shift(loop1, 4)});
    auto D = make_string({loop1, reverse(loop1), loop1});
    auto F = make_string({crossing});

    std::vector<std::pair<const StringOfMaps*, RewriteStep>> moves = {
        {&M, {RewriteStep::Merge, 0, 4, 0}},          // valid merge
        {&D, {RewriteStep::Dop, 0, 0, 0}},            // opposite-pair deletion
        {&F, {RewriteStep::DeletePt, 0, 2, 0}},       // delete-point at the crossing
        {&F, {RewriteStep::DeletePt, 0, 0, 0}},       // delete-point away from the crossing
        {&F, {RewriteStep::AddPt, 0, 1, 0}},          // add-point away from the crossing
        {&F, {RewriteStep::AddPt, 0, 2, 0}},          // add-point at the crossing
    };
    int idx = 0;
    for (const auto& [S, mv] : moves) {
        auto v = relation_preservation_test(*S, mv, cover, atlas);
        if (!v.proved())
            return detail("move " + std::to_string(idx) + " gave " +
                          std::string(v.refuted() ? "REFUTED" : "UNKNOWN")),
                   false;
        ++idx;
    }
    // opposite-pair insertion: (loop1) -> (loop1, reverse loop1, loop1)
    auto w1 = decompose(make_string({loop1}), cover, atlas);
    auto w2 = decompose(D, cover, atlas);
    if (!words_equal(w1, w2).proved())
        return detail("opposite-pair insertion gave a non-proved word comparison"), false;
    return true;
}

bool criterion11() {
    struct Golden {
        int n;
        long long cap;
        std::size_t loops, classes;
    };
    // committed brute-force oracle values (tools/pi1_oracle.py)
    const std::vector<Golden> golden = {
        {4, 10, 14763, 5}, {4, 12, 132861, 7}, {5, 10, 11859, 5}, {5, 12, 106417, 5}};

    Pi1Options noprod;
    noprod.products = false; // class counting only; the product table is a separate prover
    if (pi1_classes(build_finite_space({0}, {}), 0, 8, noprod).class_count != 1)
        return detail("K1 cap 8 is not a single class"), false;
    if (pi1_classes(cycle(3), 0, 8, noprod).class_count != 1)
        return detail("C3 cap 8 is not a single class"), false;

    for (const auto& g : golden) {
        auto res = pi1_classes(cycle(g.n), 0, g.cap, noprod);
        if (res.loop_count != g.loops || res.class_count != g.classes)
            return detail("C" + std::to_string(g.n) + " cap " + std::to_string(g.cap) +
                          " got " + std::to_string(res.loop_count) + "/" +
                          std::to_string(res.class_count)),
                   false;
        if (!res.stabilization_flag)
            return detail("C" + std::to_string(g.n) + " cap " + std::to_string(g.cap) +
                          " classes not stable from cap-2"),
                   false;
    }

    // embeddings of distinct classes must never be proved equal
    auto c4 = cycle(4);
    auto res = pi1_classes(c4, 0, 10, noprod);
    std::vector<StringOfMaps> embedded;
    for (const auto& rep : res.representatives) embedded.push_back(pi1_embedding(c4, 0, rep));
    for (std::size_t i = 0; i < embedded.size(); ++i)
        for (std::size_t j = i + 1; j < embedded.size(); ++j)
            if (string_equiv(embedded[i], embedded[j], 64).proved())
                return detail("distinct classes " + std::to_string(i) + "," + std::to_string(j) +
                              " proved equal"),
                       false;
    return true;
}

std::string corpus_report(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    Json report = Json::array();
    for (const auto& file : files) {
        std::ifstream in(file);
        std::ostringstream ss;
        ss << in.rdbuf();
        auto fx = parse_fixture(ss.str());
        Json checks = Json::array();
        for (const auto& r : run_fixture(fx))
            checks.push_back(Json{{"op", r.op},
                                  {"provenance", r.provenance},
                                  {"matched", r.matched},
                                  {"detail", r.detail}});
        report.push_back(Json{{"file", file.filename().string()}, {"checks", checks}});
    }
    return report.dump(2);
}

bool criterion12() {
    fs::path dir = SCG_CORPUS_DIR;
    if (!fs::is_directory(dir)) return detail("corpus directory missing"), false;
    auto a = corpus_report(dir);
    auto b = corpus_report(dir);
    if (a != b) return detail("two corpus runs differ"), false;
    auto parsed = Json::parse(a);
    for (const auto& f : parsed)
        for (const auto& c : f.at("checks"))
            if (!c.at("matched").get<bool>())
                return detail("corpus mismatch in " + f.at("file").get<std::string>()), false;
    return true;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        bool (*fn)();
    };
    const Entry entries[] = {
        {"well-splitting fixtures (6-vertex, 5-vertex, parity 8-cycle)", criterion1},
        {"disconnected iff an empty-intersection bipartition is well-split (all graphs <= 5)",
         criterion2},
        {"boundary property sweep over all graphs <= 5 vertices and all covers", criterion3},
        {"C4 merge chain, both orders, and the self-merge rejection", criterion4},
        {"groupoid laws on 200 seeded random strings, bound 64", criterion5},
        {"100 seeded rel-endpoint homotopies translate to replayable point moves", criterion6},
        {"integer-line objects: |z| vs 2|z| refuted, indiscrete pairs identified", criterion7},
        {"half-line cover of the coarse line: well-split, cross pairs excluded", criterion8},
        {"factorization through the cover on the 6-vertex fixture and 50 seeded maps",
         criterion9},
        {"relation preservation for every generating move on the curated string set",
         criterion10},
        {"loop classes match the committed oracle and embeddings stay distinct", criterion11},
        {"corpus runs are byte-identical and fully green", criterion12},
    };
    int failures = 0;
    int n = 0;
    for (const auto& e : entries) {
        ++n;
        g_detail.clear();
        bool ok = false;
        std::string err;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = e.fn();
        } catch (const std::exception& ex) {
            err = ex.what();
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s — %s (%.1fs)%s%s\n", n, ok ? "PASS" : "FAIL", e.name,
                    secs, g_detail.empty() && err.empty() ? "" : " :: ",
                    err.empty() ? g_detail.c_str() : err.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d/12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
