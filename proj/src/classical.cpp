#include "qdual/classical.hpp"

namespace qdual {

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) + o.coeff(k);
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) - o.coeff(k);
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (c_.empty() || o.c_.empty()) return IntPolynomial();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& inner) const {
    IntPolynomial acc; // Horner
    for (std::size_t k = c_.size(); k-- > 0;) {
        acc = acc * inner + IntPolynomial::constant(c_[k]);
    }
    return acc;
}

QLaurent IntPolynomial::evaluate(const QLaurent& x) const {
    QLaurent acc = QLaurent::zero(x.eps(), x.q_form());
    for (std::size_t k = c_.size(); k-- > 0;) {
        acc = acc * x + QLaurent::scalar(x.eps(), OmegaScalar::integer(c_[k]), x.q_form());
    }
    return acc;
}

Int IntPolynomial::evaluate(Int x) const {
    Int acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

IntPolynomial chebyshev(Int k) {
    if (k < 0) throw DomainError("chebyshev: k must be nonnegative");
    IntPolynomial prev = IntPolynomial::constant(2);
    if (k == 0) return prev;
    IntPolynomial cur = IntPolynomial::t();
    for (Int i = 1; i < k; ++i) {
        IntPolynomial next = cur * IntPolynomial::t() - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

IntPolynomial inverse_chebyshev(Int k) {
    if (k < 1) throw DomainError("inverse_chebyshev: k must be positive");
    // F~_1 = t; F~_{k+1} = t^{k+1} + c_{k,k-1} t^k
    //                    + sum_{i=1}^{k-1} (c_{k,i-1} + c_{k,i+1}) t^i + 2 c_{k,1}.
    std::vector<Int> c = {0, 1};
    for (Int n = 1; n < k; ++n) {
        std::vector<Int> nx(static_cast<std::size_t>(n) + 2, 0);
        nx[static_cast<std::size_t>(n) + 1] = 1;
        nx[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n) - 1];
        for (Int i = 1; i <= n - 1; ++i)
            nx[static_cast<std::size_t>(i)] =
                c[static_cast<std::size_t>(i) - 1] + c[static_cast<std::size_t>(i) + 1];
        nx[0] = 2 * c[1];
        c = std::move(nx);
    }
    return IntPolynomial(std::move(c));
}

CommMatrix2 CommMatrix2::operator*(const CommMatrix2& o) const {
    CommMatrix2 r;
    r.a[0] = a[0] * o.a[0] + a[1] * o.a[2];
    r.a[1] = a[0] * o.a[1] + a[1] * o.a[3];
    r.a[2] = a[2] * o.a[0] + a[3] * o.a[2];
    r.a[3] = a[2] * o.a[1] + a[3] * o.a[3];
    return r;
}

EpsilonPtr commutative_eps(std::size_t n) { return std::make_shared<EpsilonForm>(n); }

CommMatrix2 turn_matrix(EpsilonPtr eps0, std::size_t edge, Turn dir) {
    QLaurent z = QLaurent::generator(eps0, edge, 1);
    QLaurent zi = QLaurent::generator(eps0, edge, -1);
    QLaurent zero = QLaurent::zero(eps0);
    CommMatrix2 m;
    if (dir == Turn::Left) {
        m.a = {z, z, zero, zi};
    } else {
        m.a = {z, zero, zi, zi};
    }
    return m;
}

CommMatrix2 monodromy_steps(std::size_t num_edges, const std::vector<CurveStep>& steps) {
    EpsilonPtr eps0 = commutative_eps(num_edges);
    CommMatrix2 acc;
    acc.a = {QLaurent::one(eps0), QLaurent::zero(eps0), QLaurent::zero(eps0), QLaurent::one(eps0)};
    for (const auto& st : steps) acc = acc * turn_matrix(eps0, st.edge, st.turn);
    return acc;
}

CommMatrix2 monodromy(const IdealTriangulation& T, const CurveWord& c) {
    return monodromy_steps(T.num_edges(), c.steps());
}

QLaurent classical_I(const IdealTriangulation& T, const IntegralLamination& l) {
    EpsilonPtr eps0 = commutative_eps(T.num_edges());
    QLaurent acc = QLaurent::one(eps0);
    for (const auto& comp : l.components()) {
        if (comp.peripheral) {
            // Positive eigenvalue monomial Z^mu raised to the weight.
            std::vector<Int> mu = comp.curve.mu(T);
            ExpVec p(mu.size());
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = comp.weight * mu[i];
            QLaurent m(eps0);
            m.add_term(p, OmegaScalar::one());
            acc = acc * m;
        } else {
            QLaurent tr = monodromy(T, comp.curve).trace();
            acc = acc * chebyshev(comp.weight).evaluate(tr);
        }
    }
    return acc;
}

} // namespace qdual
