#include <doctest.h>

#include "qdual/classical.hpp"
#include "qdual/duality.hpp"
#include "qdual/skein.hpp"
#include "test_util.hpp"

using namespace qdual;
using qdual::test::punctured_torus;
using qdual::test::sphere4;

namespace {

CurveWord pt_curve_10() {
    return CurveWord(punctured_torus(), {{1, Turn::Left}, {2, Turn::Right}});
}

// [Z^(2,2,2)] + [Z^(-2,-2,-2)] over the punctured torus
QLaurent pt_peripheral_trace(const EpsilonPtr& eps) {
    QLaurent expect(eps);
    expect.add_term({2, 2, 2}, 1, -8);
    expect.add_term({-2, -2, -2}, 1, -8);
    return expect;
}

} // namespace

TEST_CASE("triangle arc values") {
    // corner between slots 0 and 1: [Z_0 Z_1] with the single kill pattern
    auto v = triangle_arc_trace(0, 1, +1, +1);
    REQUIRE(v.has_value());
    CHECK(*v == QMonomial(-1, {1, 1, 0}));
    CHECK_FALSE(triangle_arc_trace(0, 1, -1, +1).has_value());
    auto w = triangle_arc_trace(0, 1, +1, -1);
    REQUIRE(w.has_value());
    CHECK(*w == QMonomial(1, {1, -1, 0}));
    // entering the other way through the same corner: kill pattern swaps
    CHECK_FALSE(triangle_arc_trace(1, 0, +1, -1).has_value());
    CHECK(triangle_arc_trace(1, 0, -1, +1).has_value());
    CHECK_THROWS_AS(triangle_arc_trace(0, 0, 1, 1), DomainError);
}

TEST_CASE("kauffman_resolve on small braids") {
    BiangleDiagram d;
    d.edge = 0;
    d.left = {{0, true}, {1, true}};
    d.right = {{0, false}, {1, false}};

    SUBCASE("no crossings") {
        d.match = {2, 3, 0, 1};
        auto out = kauffman_resolve(d);
        REQUIRE(out.size() == 1);
        CHECK(out[0].first == OmegaScalar::one());
        CHECK(out[0].second.match == d.match);
    }

    SUBCASE("one crossing, upward strand over") {
        d.crossings = {{0, true}};
        auto out = kauffman_resolve(d);
        REQUIRE(out.size() == 2);
        for (const auto& [coef, res] : out) {
            if (res.match[0] == 2) {
                CHECK(coef == OmegaScalar::power(2)); // horizontal smoothing
            } else {
                CHECK(res.match[0] == 1); // left return
                CHECK(res.match[2] == 3); // right return
                CHECK(coef == OmegaScalar::power(-2)); // vertical smoothing
            }
            CHECK(res.loops == 0);
        }
    }

    SUBCASE("one crossing, upward strand under") {
        d.crossings = {{0, false}};
        auto out = kauffman_resolve(d);
        REQUIRE(out.size() == 2);
        for (const auto& [coef, res] : out)
            CHECK(coef == (res.match[0] == 2 ? OmegaScalar::power(-2) : OmegaScalar::power(2)));
    }

    SUBCASE("two crossings merge and can close loops") {
        d.crossings = {{0, true}, {0, true}};
        auto out = kauffman_resolve(d);
        CHECK(out.size() <= 4);
        bool saw_loop = false;
        for (const auto& [coef, res] : out) {
            for (const auto& [e, c] : coef.terms()) CHECK(e % 4 == 0);
            if (res.loops > 0) saw_loop = true;
        }
        CHECK(saw_loop); // both vertical smoothings trap a circle
    }
}

TEST_CASE("biangle_trace local values") {
    BiangleDiagram d;
    d.edge = 0;

    SUBCASE("single through strand") {
        d.left = {{0, true}};
        d.right = {{0, false}};
        d.match = {1, 0};
        CHECK(biangle_trace(d, {+1, +1}) == OmegaScalar::one());
        CHECK(biangle_trace(d, {-1, -1}) == OmegaScalar::one());
        CHECK(biangle_trace(d, {+1, -1}).is_zero());
    }

    SUBCASE("left return") {
        d.left = {{0, true}, {0, false}};
        d.match = {1, 0};
        CHECK(biangle_trace(d, {+1, -1}) == OmegaScalar(-1, -5)); // top +, bottom -
        CHECK(biangle_trace(d, {-1, +1}) == OmegaScalar(1, -1));
        CHECK(biangle_trace(d, {+1, +1}).is_zero());
    }

    SUBCASE("right return") {
        d.right = {{0, true}, {0, false}};
        d.match = {1, 0};
        CHECK(biangle_trace(d, {-1, +1}) == OmegaScalar(-1, 5)); // top -, bottom +
        CHECK(biangle_trace(d, {+1, -1}) == OmegaScalar(1, 1));
        CHECK(biangle_trace(d, {-1, -1}).is_zero());
    }

    SUBCASE("closed loop") {
        d.loops = 1;
        OmegaScalar expect = OmegaScalar(-1, 4) + OmegaScalar(-1, -4);
        CHECK(biangle_trace(d, {}) == expect);
    }
}

TEST_CASE("good position of the (1,0) curve") {
    const auto& T = punctured_torus();
    GoodPosition gp = good_position(T, pt_curve_10());
    CHECK(gp.arcs.size() == 2);
    for (const auto& b : gp.biangles) {
        CHECK(b.left.size() <= 1);
        CHECK(b.crossings.empty());
    }
}

TEST_CASE("good position of the peripheral loop") {
    const auto& T = punctured_torus();
    GoodPosition gp = good_position(T, peripheral_word(T, 0));
    CHECK(gp.arcs.size() == 6);
    std::size_t crossings = 0;
    for (const auto& b : gp.biangles) {
        CHECK(b.left.size() + b.right.size() == 4); // 2 strands per biangle
        crossings += b.crossings.size();
    }
    CHECK(crossings == 1);
    CHECK(gp.ascent.has_value());
    CHECK_FALSE(gp.dump().empty());
}

TEST_CASE("state sum of the (1,0) curve") {
    const auto& T = punctured_torus();
    auto eps = epsilon_matrix(T);
    QLaurent tr = quantum_trace(T, pt_curve_10(), eps);
    QLaurent expect(eps);
    expect.add_term({0, 1, 1}, 1, -2);   // [Z2 Z3]
    expect.add_term({0, 1, -1}, 1, 2);   // [Z2 Z3^-1]
    expect.add_term({0, -1, -1}, 1, -2); // [Z2^-1 Z3^-1]
    CHECK(tr == expect);
}

TEST_CASE("state sum of the peripheral loop collapses to two Weyl terms") {
    const auto& T = punctured_torus();
    auto eps = epsilon_matrix(T);
    CurveWord loop = peripheral_word(T, 0);

    QLaurent via_braid = state_sum(good_position(T, loop), eps);
    CHECK(via_braid == pt_peripheral_trace(eps));

    QLaurent via_oriented = state_sum(peripheral_good_position(T, loop), eps);
    CHECK(via_oriented == pt_peripheral_trace(eps));

    CHECK_THROWS_AS(peripheral_good_position(T, pt_curve_10()), NotPeripheral);
}

TEST_CASE("peripheral state sums on the sphere") {
    const auto& T = sphere4();
    auto eps = epsilon_matrix(T);
    for (std::size_t p = 0; p < 4; ++p) {
        CurveWord loop = peripheral_word(T, p);
        std::vector<Int> mu = loop.mu(T);
        QLaurent expect(eps);
        ExpVec plus(mu.begin(), mu.end());
        ExpVec minus(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) minus[i] = -mu[i];
        expect.add_term(plus, 1, -eps->weyl_phase(plus));
        expect.add_term(minus, 1, -eps->weyl_phase(minus));

        CHECK(state_sum(good_position(T, loop), eps) == expect);
        CHECK(state_sum(peripheral_good_position(T, loop), eps) == expect);
    }
}

TEST_CASE("empty good position") {
    const auto& T = punctured_torus();
    GoodPosition gp;
    gp.T = &T;
    auto eps = epsilon_matrix(T);
    CHECK(state_sum(gp, eps) == QLaurent::one(eps));
}

TEST_CASE("quantum trace properties on bundled curves") {
    const auto& T = punctured_torus();
    auto eps = epsilon_matrix(T);
    std::vector<CurveWord> curves = {
        pt_curve_10(),
        CurveWord(T, {{0, Turn::Right}, {2, Turn::Left}}),  // the (0,1)-type curve
        peripheral_word(T, 0),
    };
    // a 4-crossing curve: mu = (2,1,1)
    IntegralLamination l211 = from_coords_doubled(T, {2, 1, 1});
    REQUIRE(l211.components().size() == 1);
    curves.push_back(l211.components()[0].curve);

    for (const CurveWord& c : curves) {
        QLaurent tr = quantum_trace(T, c, eps);

        // star invariance
        CHECK(star(tr) == tr);

        // parity homogeneity: a single class
        CHECK(parity_decompose(tr).size() == 1);

        // positivity of all coefficients
        CHECK(tr.coefficients_nonnegative());

        // highest term is the Weyl ordering of Z^mu
        std::vector<Int> mu = c.mu(T);
        ExpVec p(mu.begin(), mu.end());
        CHECK(highest_term(tr) == weyl_order(p, *eps));

        // classical limit equals the turn-matrix trace
        QLaurent cl = monodromy(T, c).trace();
        CHECK(same_terms(tr.classical_limit(), cl));

        // starting point independence
        const auto& steps = c.steps();
        for (std::size_t r = 1; r < steps.size(); ++r) {
            std::vector<CurveStep> rot(steps.begin() + r, steps.end());
            rot.insert(rot.end(), steps.begin(), steps.begin() + r);
            CHECK(state_sum(good_position_from_steps(T, rot), eps) == tr);
        }
    }
}

TEST_CASE("quantum trace on the sphere matches its classical limit") {
    const auto& T = sphere4();
    auto eps = epsilon_matrix(T);
    IntegralLamination l = from_coords_doubled(T, {1, 1, 0, 0, 1, 1});
    const CurveWord& c = l.components()[0].curve;
    QLaurent tr = quantum_trace(T, c, eps);
    CHECK(star(tr) == tr);
    CHECK(same_terms(tr.classical_limit(), monodromy(T, c).trace()));
    std::vector<Int> mu = c.mu(T);
    ExpVec p(mu.begin(), mu.end());
    CHECK(highest_term(tr) == weyl_order(p, *eps));
}
