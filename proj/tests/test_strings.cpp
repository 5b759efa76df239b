#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "scg/strings.hpp"

using namespace scg;

namespace {

SemiCoarseSpace c4() {
    return build_finite_space({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

SemiCoarseSpace c3() { return build_finite_space({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}); }

// one full turn around the 4-cycle, flanked by constant-0 tails
ZMap e1() {
    return make_zmap(c4(), 0, {0, 1, 2, 3, 0}, TailSpec::constant(0), TailSpec::constant(0));
}

ZMap constant_map(const SemiCoarseSpace& s, Vertex x) {
    return make_zmap(s, 0, {x}, TailSpec::constant(x), TailSpec::constant(x));
}

bool same_maps(const StringOfMaps& A, const StringOfMaps& B) {
    if (A.maps.size() != B.maps.size()) return false;
    for (std::size_t k = 0; k < A.maps.size(); ++k)
        if (!function_equal(A.maps[k], B.maps[k])) return false;
    return true;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::ValidationError;
}

} // namespace

TEST_CASE("objects spread a map's rays symmetrically") {
    auto f = e1();
    auto o = object_from_right_ray(f);
    CHECK(is_symmetric(o));
    for (long long k = 0; k <= 5; ++k) CHECK(eval(o, k) == eval(f, f.window.hi() + 1 + k));
    auto ol = object_from_left_ray(f);
    CHECK(is_symmetric(ol));
    for (long long k = 0; k <= 5; ++k) CHECK(eval(ol, k) == eval(f, f.window.lo - 1 - k));
}

TEST_CASE("make_string verifies junctions and refuses mismatches") {
    auto f = e1();
    auto F = make_string({f, shift(f, 4), shift(f, 8)});
    CHECK(F.maps.size() == 3);
    CHECK(F.junctions.size() == 2);
    CHECK(F.junctions[0].kind == JunctionKind::Exact);

    // constant tails 0 vs 2 cannot meet: (0,2) is not an edge of the 4-cycle
    auto g = make_zmap(c4(), 0, {2, 1, 2}, TailSpec::constant(2), TailSpec::constant(2));
    CHECK(code_of([&] { make_string({f, g}); }) == ErrorCode::JunctionUnverified);
}

TEST_CASE("merge chain around the 4-cycle, both orders") {
    auto f = e1();
    auto F = make_string({f, shift(f, 4), shift(f, 8)});
    // three consecutive turns spliced into one window
    auto e3 = make_zmap(c4(), 0, {0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3, 0}, TailSpec::constant(0),
                        TailSpec::constant(0));

    auto first = apply_merge(apply_merge(F, 0, 4), 0, 8);
    REQUIRE(first.maps.size() == 1);
    CHECK(function_equal(first.maps[0], e3));

    auto second = apply_merge(apply_merge(F, 1, 8), 0, 4);
    REQUIRE(second.maps.size() == 1);
    CHECK(function_equal(second.maps[0], e3));

    // only the single overlap point is a legal merge point here
    CHECK(code_of([&] { apply_merge(F, 0, 5); }) == ErrorCode::MoveInapplicable);
}

TEST_CASE("a map cannot merge with itself: stretches do not overlap") {
    auto f = e1();
    auto F = make_string({f, f});
    CHECK(code_of([&] { apply_merge(F, 0, 4); }) == ErrorCode::EmptyMergeWindow);
}

TEST_CASE("apply_dop deletes shifted opposite pairs only") {
    auto f = e1();
    auto F = make_string({f, reverse(f), f});
    auto G = apply_dop(F, 0);
    REQUIRE(G.maps.size() == 1);
    CHECK(function_equal(G.maps[0], f));

    auto H = make_string({f, shift(f, 4)});
    CHECK(code_of([&] { apply_dop(H, 0); }) == ErrorCode::NotOpposite);
}

TEST_CASE("cut at a constant junction reproduces the canonical merge") {
    auto f = e1();
    auto F = make_string({f, shift(f, 4)});
    auto cutres = cut_equal_tails(F, 0);
    REQUIRE(cutres.maps.size() == 1);
    CHECK(function_equal(cutres.maps[0], apply_merge(F, 0, 4).maps[0]));
}

TEST_CASE("cutting a map against its own reverse cancels completely") {
    auto f = e1();
    auto F = make_string({f, reverse(f)});
    auto G = cut_equal_tails(F, 0);
    REQUIRE(G.maps.size() == 1);
    CHECK(function_equal(G.maps[0], constant_map(c4(), 0)));
}

TEST_CASE("normalize reduces, replays, and is idempotent") {
    auto f = e1();
    auto F = make_string({f, shift(f, 4), shift(f, 8)});
    auto n = normalize(F);
    REQUIRE(n.result.maps.size() == 1);
    CHECK(n.result.maps[0].window.lo == 0);
    CHECK(same_maps(replay(F, n.trace), n.result));
    CHECK(normalize(n.result).trace.empty());
}

TEST_CASE("shifted strings share a normal form") {
    auto f = e1();
    auto F = make_string({f, shift(f, 4)});
    auto G = make_string({shift(f, 7), shift(f, 11)});
    CHECK(same_maps(normalize(F).result, normalize(G).result));
}

TEST_CASE("star composes at provably equal objects and refuses otherwise") {
    auto f = e1();
    auto F = make_string({f});
    auto G = make_string({shift(f, 4)});
    auto H = star(F, G);
    CHECK(H.maps.size() == 2);
    CHECK(H.junctions.size() == 1);

    auto off = make_zmap(c4(), 0, {2}, TailSpec::constant(2), TailSpec::constant(2));
    CHECK(code_of([&] { star(F, make_string({off})); }) == ErrorCode::ObjectsNotComposable);
}

TEST_CASE("groupoid laws on the 4-cycle examples") {
    auto f = e1();
    auto F = make_string({f, shift(f, 4)});
    auto id0 = make_string({constant_map(c4(), 0)});

    CHECK(string_equiv(star(id0, F), F).proved());
    CHECK(string_equiv(star(F, id0), F).proved());

    auto inv = star(F, reverse_string(F));
    auto unit = make_string({F.maps[0], reverse(F.maps[0])});
    CHECK(string_equiv(inv, unit).proved());
    CHECK(string_equiv(unit, id0).proved());
}

TEST_CASE("string_equiv refutes distinct endpoint objects") {
    auto f = e1();
    auto off = make_zmap(c4(), 0, {2}, TailSpec::constant(2), TailSpec::constant(2));
    // the 4-cycle is not indiscrete and 0 vs 2 tails are two steps apart,
    // but both constants sit in one component, so only tail-class reasoning
    // applies; use a disconnected space for a sound refutation instead
    auto two = build_finite_space({0, 1, 2, 3}, {{0, 1}, {2, 3}});
    auto p = make_zmap(two, 0, {0}, TailSpec::constant(0), TailSpec::constant(0));
    auto q = make_zmap(two, 0, {2}, TailSpec::constant(2), TailSpec::constant(2));
    CHECK(string_equiv(make_string({p}), make_string({q})).refuted());
    (void)off;
}

TEST_CASE("three turns equal the merged chain as strings") {
    auto f = e1();
    auto chain = make_string({f, shift(f, 4), shift(f, 8)});
    auto merged = apply_merge(apply_merge(chain, 0, 4), 0, 8);
    CHECK(string_equiv(merged, chain).proved());
}

TEST_CASE("loop embedding distinguishes contractible from winding loops") {
    auto triv3 = pi1_embedding(c3(), 0, {0});
    auto loop3 = pi1_embedding(c3(), 0, {0, 1, 2, 0});
    CHECK(string_equiv(loop3, triv3, 5'000).proved());

    auto triv4 = pi1_embedding(c4(), 0, {0});
    auto loop4 = pi1_embedding(c4(), 0, {0, 1, 2, 3, 0});
    CHECK(!string_equiv(loop4, triv4, 2'000).proved());
}

TEST_CASE("tails_controlled on finite spaces and the integer line") {
    auto F = make_string({e1(), shift(e1(), 4)});
    CHECK(tails_controlled(F, {Region{false, +1, 0, {0}}}));
    CHECK(!tails_controlled(F, {Region{false, +1, 0, {1}}}));

    auto inf = SemiCoarseSpace::int_line(std::nullopt);
    auto vee = make_zmap(inf, 0, {0}, TailSpec::quasi_affine(-1, 0, {0}),
                         TailSpec::quasi_affine(1, 0, {0}));
    auto V = make_string({vee});
    CHECK(tails_controlled(V, {Region{true, +1, 0, {}}}));
    CHECK(!tails_controlled(V, {Region{true, -1, -1, {}}}));
    CHECK_THROWS_AS(tails_controlled(V, {Region{false, +1, 0, {0, 1}}}), Error);
}

TEST_CASE("eliminable probes: scaled line object cuts, jiggled coarse ray does not") {
    // the doubled distance map on the scale-2 line: tails of slope +-2
    auto z2 = SemiCoarseSpace::int_line(2);
    auto dbl = make_zmap(z2, 0, {0}, TailSpec::quasi_affine(-2, 0, {0}),
                         TailSpec::quasi_affine(2, 0, {0}));
    auto D = make_string({dbl});
    auto rep = eliminable_check({{D, D}});
    CHECK(rep.all_cuttable);

    // on the unbounded-scale line, a parity-jiggled partner ray is homotopic
    // to the straight one but never pointwise equal, so no exact cut exists
    auto inf = SemiCoarseSpace::int_line(std::nullopt);
    auto vee = make_zmap(inf, 0, {0}, TailSpec::quasi_affine(-1, 0, {0}),
                         TailSpec::quasi_affine(1, 0, {0}));
    auto jig = make_zmap(inf, 0, {0}, TailSpec::quasi_affine(-1, 0, {0, 1}),
                         TailSpec::quasi_affine(1, 0, {0, 1}));
    auto rep2 = eliminable_check({{make_string({vee}), make_string({jig})}});
    REQUIRE(rep2.cuttable.size() == 1);
    CHECK(!rep2.cuttable[0]);
    CHECK(!rep2.all_cuttable);
}

TEST_CASE("reverse_string round-trips") {
    auto f = e1();
    auto F = make_string({f, shift(f, 4)});
    auto R = reverse_string(F);
    REQUIRE(R.maps.size() == 2);
    CHECK(function_equal(R.maps[0], reverse(shift(f, 4))));
    CHECK(same_maps(reverse_string(R), F));
}
