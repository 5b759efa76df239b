#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scg/zmap.hpp"

using namespace scg;

namespace {

SemiCoarseSpace c4() {
    return build_finite_space({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

SemiCoarseSpace zinf() { return SemiCoarseSpace::int_line(std::nullopt); }

ZMap e1() { // 0,1,2,3 once around the 4-cycle, constant 0 outside
    return make_zmap(c4(), 0, {0, 1, 2, 3}, TailSpec::constant(0), TailSpec::constant(0));
}

ZMap abs_map(long long a) { // z -> a*|z| on the coarse line
    return make_zmap(zinf(), 0, {0}, TailSpec::quasi_affine(-a, 0, {0}),
                     TailSpec::quasi_affine(a, 0, {0}));
}

} // namespace

TEST_CASE("window/tail evaluation and canonical absorption") {
    auto f = e1();
    CHECK(eval(f, -5) == 0);
    CHECK(eval(f, 0) == 0);
    CHECK(eval(f, 2) == 2);
    CHECK(eval(f, 3) == 3);
    CHECK(eval(f, 4) == 0);
    CHECK(eval(f, 100) == 0);
    // leading 0 absorbed into the constant left tail
    CHECK(f.window.lo == 1);
    CHECK(f.window.values == std::vector<Vertex>({1, 2, 3}));
}

TEST_CASE("construction rejects bad maps") {
    CHECK_THROWS_AS(make_zmap(c4(), 0, {0, 2}, TailSpec::constant(0), TailSpec::constant(2)),
                    Error);
    CHECK_THROWS_AS(
        make_zmap(c4(), 0, {0}, TailSpec::constant(0), TailSpec::quasi_affine(1, 0, {0})), Error);
}

TEST_CASE("periodic canonicalization") {
    auto s = build_finite_space({0, 1}, {{0, 1}});
    auto f = make_zmap(s, 0, {0}, TailSpec::constant(0), TailSpec::periodic({1, 0, 1, 0}));
    CHECK(f.right.kind == TailKind::Periodic);
    CHECK(f.right.word == std::vector<Vertex>({1, 0}));
    CHECK(eval(f, 1) == 1);
    CHECK(eval(f, 2) == 0);
    CHECK(eval(f, 3) == 1);
    auto g = make_zmap(s, 0, {0}, TailSpec::constant(0), TailSpec::periodic({0, 0}));
    CHECK(g.right == TailSpec::constant(0));
}

TEST_CASE("quasi-affine maps on the coarse line") {
    auto f = abs_map(1);
    CHECK(eval(f, -5) == 5);
    CHECK(eval(f, 7) == 7);
    CHECK(eval(f, 0) == 0);
    CHECK(is_symmetric(f));
    auto g = abs_map(2);
    CHECK(eval(g, -3) == 6);
    CHECK(is_symmetric(g));
}

TEST_CASE("slope-0 quasi-affine demoted to periodic") {
    auto f = make_zmap(zinf(), 0, {0}, TailSpec::constant(0),
                       TailSpec::quasi_affine(0, 5, {0, 1}));
    CHECK(f.right.kind == TailKind::Periodic);
    CHECK(eval(f, 1) == 5 + 1); // correction index 1 mod 2
    CHECK(eval(f, 2) == 5);
}

TEST_CASE("shift and reverse") {
    auto f = e1();
    auto g = shift(f, 4);
    for (long long z = -3; z <= 12; ++z) CHECK(eval(g, z) == eval(f, z - 4));
    CHECK(function_equal(reverse(reverse(f)), f));
    auto a = abs_map(1);
    CHECK(function_equal(reverse(a), a));
    auto sa = shift(a, 3); // |z-3|
    CHECK(eval(sa, 0) == 3);
    CHECK(eval(sa, 3) == 0);
    CHECK(eval(sa, 10) == 7);
    CHECK_FALSE(function_equal(sa, a));
    auto rsa = reverse(sa); // |z+3|
    CHECK(eval(rsa, -3) == 0);
    CHECK(eval(rsa, 2) == 5);
}

TEST_CASE("ray equality") {
    auto f = e1();
    CHECK(ray_equal_from(f, f, -10));
    auto g = make_zmap(c4(), 0, {0, 1, 0}, TailSpec::constant(0), TailSpec::constant(0));
    CHECK(ray_equal_from(f, g, 4));
    CHECK_FALSE(ray_equal_from(f, g, 2));
    CHECK(ray_equal_upto(f, g, 0));
}

TEST_CASE("eventual equality") {
    auto f = e1();
    CHECK(eventually_equal(f, shift(f, 3)));
    CHECK_FALSE(eventually_equal(abs_map(1), abs_map(2)));
    auto c0 = make_zmap(c4(), 0, {0}, TailSpec::constant(0), TailSpec::constant(0));
    auto c1 = make_zmap(c4(), 0, {1}, TailSpec::constant(1), TailSpec::constant(1));
    CHECK_FALSE(eventually_equal(c0, c1));

    // z vs z+5: equal after a relative shift
    auto idmap = make_zmap(zinf(), 0, {0}, TailSpec::quasi_affine(1, 0, {0}),
                           TailSpec::quasi_affine(1, 0, {0}));
    auto idp5 = make_zmap(zinf(), 0, {5}, TailSpec::quasi_affine(1, 5, {0}),
                          TailSpec::quasi_affine(1, 5, {0}));
    CHECK(eventually_equal(idmap, idp5));
    // z vs z + parity jiggle: no shift aligns them
    auto jig = make_zmap(zinf(), 0, {0}, TailSpec::quasi_affine(1, 0, {0, 1}),
                         TailSpec::quasi_affine(1, 0, {0, 1}));
    CHECK_FALSE(eventually_equal(idmap, jig));
    CHECK(eventually_equal(jig, shift(jig, 2)));
    CHECK(eventually_equal(jig, shift(jig, 1))); // any shift of the same map qualifies
}

TEST_CASE("eventual equality respects periodic rotation") {
    auto s = build_finite_space({0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
    auto f = make_zmap(s, 0, {0}, TailSpec::constant(0), TailSpec::periodic({0, 1, 2}));
    auto g = make_zmap(s, 0, {0}, TailSpec::constant(0), TailSpec::periodic({1, 2, 0}));
    auto h = make_zmap(s, 0, {0}, TailSpec::constant(0), TailSpec::periodic({0, 2, 1}));
    CHECK(eventually_equal(f, g));
    CHECK_FALSE(eventually_equal(f, h));
}
