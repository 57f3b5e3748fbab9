#include <doctest.h>

#include <set>

#include "qdual/duality.hpp"
#include "qdual/render.hpp"
#include "test_util.hpp"

using namespace qdual;
using qdual::test::punctured_torus;
using qdual::test::sphere4;

namespace {

// q^-2 X2 X3 + (q + q^-1) X2 + q^2 X2 X3^-1 + (q + q^-1) X3^-1 + q^-2 X2^-1 X3^-1,
// the image of the doubled (1,0)-curve, expanded by hand from F_2 of the
// three-term trace.
QLaurent golden_dual_011(const EpsilonPtr& eps) {
    QLaurent f(eps, /*q_form=*/true);
    f.add_term({0, 1, 1}, 1, -2);
    f.add_term({0, 1, 0}, OmegaScalar(1, 1) + OmegaScalar(1, -1));
    f.add_term({0, 1, -1}, 1, 2);
    f.add_term({0, 0, -1}, OmegaScalar(1, 1) + OmegaScalar(1, -1));
    f.add_term({0, -1, -1}, 1, -2);
    return f;
}

} // namespace

TEST_CASE("i_omega on basic laminations") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);
    CHECK(eng.i_omega(empty_lamination(T)) == QLaurent::one(eng.eps()));

    QLaurent per = eng.i_omega(peripheral_lamination(T, 0, 1));
    QLaurent expect(eng.eps());
    expect.add_term({2, 2, 2}, 1, -8); // [Z1^2 Z2^2 Z3^2]
    CHECK(per == expect);

    IntegralLamination doubled = from_coords_doubled(T, {0, 2, 2});
    QLaurent tr = eng.trace_of(from_coords_doubled(T, {0, 1, 1}).components()[0].curve);
    QLaurent f2 = tr * tr - QLaurent::scalar(eng.eps(), OmegaScalar::integer(2));
    CHECK(eng.i_omega(doubled) == f2);
}

TEST_CASE("i_omega is multiplicative over disjoint components in any order") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);
    IntegralLamination mix = from_coords_doubled(T, {2, 3, 3});
    REQUIRE(mix.components().size() == 2);
    QLaurent whole = eng.i_omega(mix);
    IntegralLamination a(T, {mix.components()[0]});
    IntegralLamination b(T, {mix.components()[1]});
    CHECK(whole == eng.i_omega(a) * eng.i_omega(b));
    CHECK(whole == eng.i_omega(b) * eng.i_omega(a));
}

TEST_CASE("peripheral images are central") {
    for (const IdealTriangulation* T : {&punctured_torus(), &sphere4()}) {
        DualityEngine eng(*T);
        for (std::size_t p = 0; p < T->num_punctures(); ++p) {
            QLaurent f = eng.i_omega(peripheral_lamination(*T, p, 1));
            for (std::size_t i = 0; i < T->num_edges(); ++i) {
                QLaurent z = QLaurent::generator(eng.eps(), i);
                CHECK((f * z - z * f).is_zero());
            }
        }
    }
}

TEST_CASE("i_hat_q golden values") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);

    IntegralLamination doubled = from_coords_doubled(T, {0, 2, 2});
    const QLaurent& f = eng.i_hat_q(doubled);
    CHECK(f == golden_dual_011(eng.eps()));
    CHECK(highest_term(f) == QMonomial(-2, {0, 1, 1}));

    IntegralLamination per = peripheral_lamination(T, 0, 1);
    const QLaurent& g = eng.i_hat_q(per);
    CHECK(g.term_count() == 1);
    CHECK(g.coefficient({1, 1, 1}) == OmegaScalar::power(-2));

    IntegralLamination half = from_coords_doubled(T, {0, 1, 1});
    CHECK_THROWS_AS(eng.i_hat_q(half), NotInALattice);
}

TEST_CASE("product expansion") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);
    IntegralLamination doubled = from_coords_doubled(T, {0, 2, 2});
    IntegralLamination per = peripheral_lamination(T, 0, 1);

    SUBCASE("peripheral factors are absorbed") {
        StructureConstantTable t = eng.product_expand(doubled, per);
        REQUIRE(t.rows.size() == 1);
        CHECK(t.rows[0].first.mu() == std::vector<Int>{2, 4, 4});
        CHECK(t.rows[0].second == OmegaScalar::one());
        // and I^w(l) I^w(l') = I^w(l + l') exactly
        CHECK(eng.i_hat_q(doubled) * eng.i_hat_q(per) ==
              eng.i_hat_q_mu(std::vector<Int>{2, 4, 4}));
    }

    SUBCASE("unit element") {
        StructureConstantTable t = eng.product_expand(doubled, empty_lamination(T));
        REQUIRE(t.rows.size() == 1);
        CHECK(t.rows[0].first == doubled);
        CHECK(t.rows[0].second == OmegaScalar::one());
    }

    SUBCASE("square of the doubled curve") {
        StructureConstantTable t = eng.product_expand(doubled, doubled);
        REQUIRE(!t.rows.empty());
        CHECK(t.rows[0].first.mu() == std::vector<Int>{0, 4, 4});
        CHECK(t.rows[0].second == OmegaScalar::one());
        for (const auto& [l, c] : t.rows) CHECK(!c.is_zero());
    }

    SUBCASE("structure constants at q=1 are nonnegative") {
        StructureConstantTable t =
            eng.product_expand(doubled, from_coords_doubled(T, {2, 2, 0}));
        for (const auto& [l, c] : t.rows) CHECK(c.classical_limit() >= 0);
    }
}

TEST_CASE("frobenius identity") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);
    IntegralLamination doubled = from_coords_doubled(T, {0, 2, 2});
    IntegralLamination per = peripheral_lamination(T, 0, 1);

    CHECK(eng.frobenius_check(doubled, 1));
    CHECK(eng.frobenius_check(doubled, 3));
    CHECK(eng.frobenius_check(per, 5));
    CHECK_THROWS_AS(eng.frobenius_check(doubled, 2), DomainError);
}

TEST_CASE("peripheral shift") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);
    IntegralLamination doubled = from_coords_doubled(T, {0, 2, 2});

    CHECK(eng.peripheral_shift_check(doubled, {0, 0, 0}));
    CHECK(eng.peripheral_shift_check(doubled, {1, 1, 1}));
    CHECK(eng.peripheral_shift_check(doubled, {-2, -2, -2}));
    CHECK_THROWS_AS(eng.peripheral_shift_check(doubled, {1, 0, 0}), KernelViolation);

    // the displayed identity, directly: I(l') = q^-2 X1X2X3 I(l)
    QLaurent xmono(eng.eps(), true);
    xmono.add_term({1, 1, 1}, 1, -2);
    CHECK(eng.i_hat_q_mu(std::vector<Int>{2, 4, 4}) == xmono * eng.i_hat_q(doubled));
}

TEST_CASE("verify bundle") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);

    VerifyReport r1 = eng.verify_bundle(from_coords_doubled(T, {0, 2, 2}));
    CHECK(r1.all_ok());
    CHECK(r1.positive_observed);

    VerifyReport r2 = eng.verify_bundle(peripheral_lamination(T, 0, -2));
    CHECK(r2.all_ok());

    DualityEngine engs(sphere4());
    VerifyReport r3 = engs.verify_bundle(from_coords_doubled(sphere4(), {2, 2, 0, 0, 2, 2}));
    CHECK(r3.all_ok());
}

TEST_CASE("distinct laminations have distinct highest monomials") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);
    std::set<ExpVec> tops;
    int count = 0;
    for (Int m0 = 0; m0 <= 2; ++m0)
        for (Int m1 = 0; m1 <= 2; ++m1)
            for (Int m2 = 0; m2 <= 2; ++m2) {
                std::vector<Int> mu{2 * m0, 2 * m1, 2 * m2};
                const QLaurent& f = eng.i_hat_q_mu(mu);
                auto [top, coef] = highest_term_with_coefficient(f);
                tops.insert(top);
                ++count;
            }
    CHECK(static_cast<int>(tops.size()) == count);
}

TEST_CASE("rendering is canonical") {
    const auto& T = punctured_torus();
    DualityEngine eng(T);
    const QLaurent& f = eng.i_hat_q_mu(std::vector<Int>{0, 2, 2});
    CHECK(render_text(f) ==
          "q^-2 * X2*X3 + (q + q^-1) * X2 + q^2 * X2*X3^-1 + (q + q^-1) * X3^-1 + "
          "q^-2 * X2^-1*X3^-1");
    CHECK(render_text(QLaurent::zero(eng.eps())) == "0");
    CHECK(!render_latex(f).empty());
    CHECK(render_json(f).find("\"terms\"") != std::string::npos);
}
