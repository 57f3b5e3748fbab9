#include <doctest.h>

#include <array>

#include "qdual/classical.hpp"
#include "qdual/duality.hpp"
#include "test_util.hpp"

using namespace qdual;
using qdual::test::punctured_torus;
using qdual::test::Rng;

namespace {

using Mat = std::array<std::array<Int, 2>, 2>;

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

Mat mat_pow(Mat m, Int k) {
    Mat r{{{1, 0}, {0, 1}}};
    for (Int i = 0; i < k; ++i) r = mat_mul(r, m);
    return r;
}

// random product of elementary shears: always det 1, entries stay small
Mat random_sl2(Rng& rng) {
    Mat r{{{1, 0}, {0, 1}}};
    for (int i = 0; i < 3; ++i) {
        Int k = rng.range(-2, 2);
        Mat s = rng.range(0, 1) ? Mat{{{1, k}, {0, 1}}} : Mat{{{1, 0}, {k, 1}}};
        r = mat_mul(r, s);
    }
    return r;
}

} // namespace

TEST_CASE("turn matrices") {
    auto eps0 = commutative_eps(3);
    CommMatrix2 l = turn_matrix(eps0, 0, Turn::Left);
    CHECK(l.a[0] == QLaurent::generator(eps0, 0, 1));
    CHECK(l.a[1] == QLaurent::generator(eps0, 0, 1));
    CHECK(l.a[2].is_zero());
    CHECK(l.a[3] == QLaurent::generator(eps0, 0, -1));
    CHECK(l.det() == QLaurent::one(eps0));

    CommMatrix2 r = turn_matrix(eps0, 1, Turn::Right);
    CHECK(r.a[0] == QLaurent::generator(eps0, 1, 1));
    CHECK(r.a[1].is_zero());
    CHECK(r.a[2] == QLaurent::generator(eps0, 1, -1));
    CHECK(r.a[3] == QLaurent::generator(eps0, 1, -1));
    CHECK(r.det() == QLaurent::one(eps0));
}

TEST_CASE("monodromy of the (1,0) curve") {
    const auto& T = punctured_torus();
    CurveWord c(T, {{1, Turn::Left}, {2, Turn::Right}});
    QLaurent tr = monodromy(T, c).trace();
    QLaurent expect(commutative_eps(3));
    expect.add_term({0, 1, 1}, 1, 0);
    expect.add_term({0, 1, -1}, 1, 0);
    expect.add_term({0, -1, -1}, 1, 0);
    CHECK(tr.terms() == expect.terms());
}

TEST_CASE("peripheral monodromy is triangular with monomial diagonal") {
    const auto& T = punctured_torus();
    // all-Right traversal of the puncture loop
    CurveWord loop = peripheral_word(T, 0);
    std::vector<CurveStep> right_steps = loop.steps();
    // the canonical form may be all-Left; flip to all-Right via reversal
    if (right_steps[0].turn == Turn::Left) {
        const std::size_t s = right_steps.size();
        std::vector<CurveStep> rev;
        for (std::size_t k = 0; k < s; ++k)
            rev.push_back({right_steps[(s - k) % s].edge, flip(right_steps[s - 1 - k].turn)});
        right_steps = rev;
    }
    CommMatrix2 m = monodromy_steps(3, right_steps);
    CHECK(m.a[1].is_zero()); // lower triangular
    QLaurent diag(commutative_eps(3));
    diag.add_term({2, 2, 2}, 1, 0);
    CHECK(m.a[0] == diag);
    QLaurent diag_inv(commutative_eps(3));
    diag_inv.add_term({-2, -2, -2}, 1, 0);
    CHECK(m.a[3] == diag_inv);

    CommMatrix2 e = monodromy_steps(3, {});
    CHECK(e.a[0] == QLaurent::one(commutative_eps(3)));
    CHECK(e.a[1].is_zero());
}

TEST_CASE("Chebyshev polynomials") {
    CHECK(chebyshev(0) == IntPolynomial({2}));
    CHECK(chebyshev(1) == IntPolynomial({0, 1}));
    CHECK(chebyshev(2) == IntPolynomial({-2, 0, 1}));
    CHECK(chebyshev(3) == IntPolynomial({0, -3, 0, 1}));
}

TEST_CASE("trace power identity") {
    Rng rng(31337);
    for (int t = 0; t < 200; ++t) {
        Mat m = random_sl2(rng);
        Int trm = m[0][0] + m[1][1];
        for (Int k = 0; k <= 6; ++k) {
            Mat mk = mat_pow(m, k);
            CHECK(chebyshev(k).evaluate(trm) == mk[0][0] + mk[1][1]);
        }
    }
}

TEST_CASE("Chebyshev semigroup law") {
    for (Int s = 1; s <= 4; ++s)
        for (Int t = 1; t <= 4; ++t) CHECK(chebyshev(s).compose(chebyshev(t)) == chebyshev(s * t));
}

TEST_CASE("inverse Chebyshev polynomials") {
    CHECK(inverse_chebyshev(1) == IntPolynomial({0, 1}));
    CHECK(inverse_chebyshev(2) == IntPolynomial({2, 0, 1}));
    // t^k = F_k + c_{k,k-1} F_{k-1} + ... + c_{k,1} F_1 + c_{k,0}
    for (Int k = 1; k <= 10; ++k) {
        IntPolynomial inv = inverse_chebyshev(k);
        CHECK(inv.degree() == k);
        for (Int i = 0; i <= k; ++i) CHECK(inv.coeff(static_cast<std::size_t>(i)) >= 0);
        CHECK(inv.coeff(static_cast<std::size_t>(k)) == 1);
        IntPolynomial sum = IntPolynomial::constant(inv.coeff(0));
        for (Int i = 1; i <= k; ++i) {
            IntPolynomial term = chebyshev(i);
            std::vector<Int> scaled(term.coeffs());
            for (Int& v : scaled) v *= inv.coeff(static_cast<std::size_t>(i));
            sum = sum + IntPolynomial(scaled);
        }
        std::vector<Int> tk(static_cast<std::size_t>(k) + 1, 0);
        tk.back() = 1;
        CHECK(sum == IntPolynomial(tk));
    }
}

TEST_CASE("classical canonical map") {
    const auto& T = punctured_torus();
    auto eps0 = commutative_eps(3);

    IntegralLamination curve = from_coords_doubled(T, {0, 1, 1});
    QLaurent tr = classical_I(T, curve);
    QLaurent expect(eps0);
    expect.add_term({0, 1, 1}, 1, 0);
    expect.add_term({0, 1, -1}, 1, 0);
    expect.add_term({0, -1, -1}, 1, 0);
    CHECK(same_terms(tr, expect));

    QLaurent per = classical_I(T, peripheral_lamination(T, 0, -1));
    QLaurent mono(eps0);
    mono.add_term({-2, -2, -2}, 1, 0);
    CHECK(same_terms(per, mono));

    IntegralLamination doubled = from_coords_doubled(T, {0, 2, 2});
    QLaurent d = classical_I(T, doubled);
    QLaurent square = tr * tr - QLaurent::scalar(eps0, OmegaScalar::integer(2));
    CHECK(same_terms(d, square));

    CHECK(classical_I(T, empty_lamination(T)) == QLaurent::one(eps0));
}

TEST_CASE("classical positivity and highest term") {
    const auto& T = punctured_torus();
    for (Int m0 = 0; m0 <= 2; ++m0)
        for (Int m1 = 0; m1 <= 2; ++m1)
            for (Int m2 = 0; m2 <= 2; ++m2) {
                std::vector<Int> mu{2 * m0, 2 * m1, 2 * m2};
                IntegralLamination l = from_coords_doubled(T, mu);
                QLaurent f = classical_I(T, l);
                CHECK(f.coefficients_nonnegative());
                auto [top, coef] = highest_term_with_coefficient(f);
                CHECK(top == ExpVec{mu[0], mu[1], mu[2]});
                CHECK(coef == OmegaScalar::one());
            }
}
