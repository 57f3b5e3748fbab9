#include <doctest.h>

#include <algorithm>

#include "qdual/lamination.hpp"
#include "test_util.hpp"

using namespace qdual;
using qdual::test::punctured_torus;
using qdual::test::sphere4;

namespace {

CurveWord pt_curve_10() {
    // the curve crossing edges 2,3 (1-indexed) once each: "2L,3R"
    return CurveWord(punctured_torus(), {{1, Turn::Left}, {2, Turn::Right}});
}

} // namespace

TEST_CASE("curve word validation and canonical form") {
    const auto& T = punctured_torus();
    CurveWord c = pt_curve_10();
    CHECK(c.length() == 2);
    CHECK(c.mu(T) == std::vector<Int>{0, 1, 1});

    // rotations and reversals share the canonical representative
    CurveWord rotated(T, {{2, Turn::Right}, {1, Turn::Left}});
    CHECK(c == rotated);
    // this curve is its own reversal: [(e1, ~t2), (e2, ~t1)] = [(1,L),(2,R)]
    const auto& st = c.steps();
    std::vector<CurveStep> rev;
    for (std::size_t k = 0; k < st.size(); ++k)
        rev.push_back({st[(st.size() - k) % st.size()].edge, flip(st[st.size() - 1 - k].turn)});
    CHECK(CurveWord(T, rev) == c);

    CHECK_THROWS_AS(CurveWord(T, {{0, Turn::Left}}), ParseError);            // one crossing
    CHECK_THROWS_AS(CurveWord(T, {{1, Turn::Left}, {1, Turn::Left}}), ParseError);
    CHECK_THROWS_AS(CurveWord(T, {{1, Turn::Left}, {0, Turn::Left}}), ParseError); // wrong exit
    CHECK_THROWS_AS(CurveWord(T, {{7, Turn::Left}, {2, Turn::Right}}), ParseError);
}

TEST_CASE("coords of basic laminations") {
    const auto& T = punctured_torus();
    Component comp{pt_curve_10(), 1, false, 0};
    IntegralLamination l1(T, {comp});
    CHECK(l1.mu() == std::vector<Int>{0, 1, 1}); // a = (0, 1/2, 1/2)
    comp.weight = 2;
    IntegralLamination l2(T, {comp});
    CHECK(l2.mu() == std::vector<Int>{0, 2, 2});
    CHECK(peripheral_lamination(T, 0, -1).mu() == std::vector<Int>{-2, -2, -2});
}

TEST_CASE("from_coords on the punctured torus") {
    const auto& T = punctured_torus();
    CHECK(from_coords_doubled(T, {0, 0, 0}).empty());

    IntegralLamination per = from_coords_doubled(T, {2, 2, 2});
    REQUIRE(per.components().size() == 1);
    CHECK(per.components()[0].peripheral);
    CHECK(per.components()[0].weight == 1);
    CHECK(per.components()[0].puncture == 0);

    IntegralLamination curve = from_coords_doubled(T, {0, 1, 1});
    REQUIRE(curve.components().size() == 1);
    CHECK_FALSE(curve.components()[0].peripheral);
    CHECK(curve.components()[0].weight == 1);
    CHECK(curve.components()[0].curve == pt_curve_10());

    CHECK_THROWS_AS(from_coords_doubled(T, {1, 0, 0}), NonRealizable);
}

TEST_CASE("from_coords peels negative peripheral weights") {
    const auto& T = punctured_torus();
    IntegralLamination l = from_coords_doubled(T, {2, 0, 0});
    // (2,0,0) = 2*(2,1,1) - (2,2,2): one doubled curve plus peripheral weight -1
    CHECK(l.mu() == std::vector<Int>{2, 0, 0});
    bool has_negative_peripheral = false;
    for (const auto& c : l.components()) {
        if (c.weight < 0) {
            CHECK(c.peripheral);
            has_negative_peripheral = true;
        }
    }
    CHECK(has_negative_peripheral);
}

TEST_CASE("round trip on the punctured torus box") {
    const auto& T = punctured_torus();
    int realizable = 0;
    for (Int m0 = -6; m0 <= 6; ++m0)
        for (Int m1 = -6; m1 <= 6; ++m1)
            for (Int m2 = -6; m2 <= 6; ++m2) {
                std::vector<Int> mu{m0, m1, m2};
                try {
                    IntegralLamination l = from_coords_doubled(T, mu);
                    CHECK(l.mu() == mu);
                    ++realizable;
                    for (const auto& c : l.components())
                        if (c.weight < 0) CHECK(c.peripheral);
                } catch (const NonRealizable&) {
                }
            }
    CHECK(realizable > 0);
}

TEST_CASE("is_peripheral") {
    const auto& T = punctured_torus();
    CurveWord loop = peripheral_word(T, 0);
    CHECK(loop.length() == 6);
    auto p = is_peripheral(T, loop);
    REQUIRE(p.has_value());
    CHECK(*p == 0);
    CHECK_FALSE(is_peripheral(T, pt_curve_10()).has_value());

    const auto& S = sphere4();
    for (std::size_t q = 0; q < 4; ++q) {
        CurveWord w = peripheral_word(S, q);
        CHECK(w.length() == 3);
        auto r = is_peripheral(S, w);
        REQUIRE(r.has_value());
        CHECK(*r == q);
    }
}

TEST_CASE("canonical_decompose") {
    const auto& T = punctured_torus();
    CurveWord c = pt_curve_10();
    IntegralLamination merged = canonical_decompose(T, {{c, 2}, {c, 3}});
    REQUIRE(merged.components().size() == 1);
    CHECK(merged.components()[0].weight == 5);

    CHECK(canonical_decompose(T, {{c, 0}}).empty());
    CHECK_THROWS_AS(canonical_decompose(T, {{c, -1}}), NegativeNonPeripheral);

    IntegralLamination both = canonical_decompose(T, {{c, 1}, {peripheral_word(T, 0), 2}});
    CHECK(both.components().size() == 2);
    CHECK(both.mu() == std::vector<Int>{4, 5, 5});
}

TEST_CASE("module_add") {
    const auto& T = punctured_torus();
    IntegralLamination l = from_coords_doubled(T, {0, 1, 1});
    IntegralLamination zero = empty_lamination(T);
    CHECK(module_add(T, l, zero) == l);

    IntegralLamination doubled = module_add(T, l, l);
    CHECK(doubled.mu() == std::vector<Int>{0, 2, 2});
    REQUIRE(doubled.components().size() == 1);
    CHECK(doubled.components()[0].weight == 2);

    IntegralLamination mix = module_add(T, l, peripheral_lamination(T, 0, 1));
    CHECK(mix.mu() == std::vector<Int>{2, 3, 3}); // a = (1, 3/2, 3/2)
}

TEST_CASE("reversed words give the same lamination") {
    const auto& T = sphere4();
    // a curve around two punctures: trace it from coordinates
    for (Int m = 1; m <= 3; ++m) {
        std::vector<Int> mu{m, m, 0, 0, m, m};
        try {
            IntegralLamination l = from_coords_doubled(T, mu);
            for (const auto& comp : l.components()) {
                const auto& st = comp.curve.steps();
                std::vector<CurveStep> rev;
                const std::size_t s = st.size();
                for (std::size_t k = 0; k < s; ++k)
                    rev.push_back({st[(s - k) % s].edge, flip(st[s - 1 - k].turn)});
                CHECK(CurveWord(T, rev) == comp.curve);
            }
        } catch (const NonRealizable&) {
        }
    }
}

TEST_CASE("sphere curve reconstruction") {
    const auto& S = sphere4();
    // mu = (1,1,0,0,1,1): a simple closed curve separating two punctures
    IntegralLamination l = from_coords_doubled(S, {1, 1, 0, 0, 1, 1});
    REQUIRE(l.components().size() == 1);
    CHECK(l.components()[0].weight == 1);
    CHECK_FALSE(l.components()[0].peripheral);
    CHECK(l.components()[0].curve.length() == 4);
}
