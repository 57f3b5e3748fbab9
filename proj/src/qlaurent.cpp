#include "qdual/qlaurent.hpp"

#include <algorithm>
#include <sstream>

namespace qdual {

QLaurent QLaurent::one(EpsilonPtr eps, bool q_form) {
    QLaurent f(eps, q_form);
    f.add_term(ExpVec(f.vars(), 0), OmegaScalar::one());
    return f;
}

QLaurent QLaurent::scalar(EpsilonPtr eps, const OmegaScalar& c, bool q_form) {
    QLaurent f(eps, q_form);
    f.add_term(ExpVec(f.vars(), 0), c);
    return f;
}

QLaurent QLaurent::generator(EpsilonPtr eps, std::size_t i, Int power) {
    QLaurent f(eps);
    ExpVec p(f.vars(), 0);
    p.at(i) = power;
    f.add_term(p, OmegaScalar::one());
    return f;
}

QLaurent QLaurent::monomial(EpsilonPtr eps, const QMonomial& m, bool q_form) {
    QLaurent f(eps, q_form);
    f.add_term(m.exponents, OmegaScalar::power(m.omega_power));
    return f;
}

void QLaurent::add_term(const ExpVec& p, const OmegaScalar& c) {
    if (c.is_zero()) return;
    if (p.size() != vars()) throw InternalError("add_term: exponent vector has wrong length");
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void QLaurent::add_term(const ExpVec& p, Int coefficient, Int omega_exponent) {
    add_term(p, OmegaScalar(coefficient, omega_exponent));
}

void QLaurent::check_compatible(const QLaurent& o) const {
    if (!eps_ || !o.eps_) throw InternalError("QLaurent without epsilon form");
    if (!(*eps_ == *o.eps_)) throw DomainError("dimension/commutation mismatch between operands");
    if (q_form_ != o.q_form_) throw InternalError("mixing q-form and w-form polynomials");
}

QLaurent QLaurent::operator+(const QLaurent& o) const {
    check_compatible(o);
    QLaurent r = *this;
    for (const auto& [p, c] : o.terms_) r.add_term(p, c);
    return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
    check_compatible(o);
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
}

QLaurent QLaurent::operator-(const QLaurent& o) const {
    check_compatible(o);
    QLaurent r = *this;
    for (const auto& [p, c] : o.terms_) r.add_term(p, -c);
    return r;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) {
    check_compatible(o);
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
}

QLaurent QLaurent::operator-() const {
    QLaurent r(eps_, q_form_);
    for (const auto& [p, c] : terms_) r.terms_.emplace(p, -c);
    return r;
}

QLaurent QLaurent::scaled(const OmegaScalar& c) const {
    QLaurent r(eps_, q_form_);
    if (c.is_zero()) return r;
    for (const auto& [p, k] : terms_) r.add_term(p, k * c);
    return r;
}

QLaurent QLaurent::operator*(const QLaurent& o) const {
    check_compatible(o);
    QLaurent r(eps_, q_form_);
    const EpsilonForm& e = *eps_;
    const std::size_t n = vars();
    ExpVec sum(n);
    for (const auto& [pa, ca] : terms_) {
        for (const auto& [pb, cb] : o.terms_) {
            // standard form of (Z^pa)(Z^pb): reorder cost 2*sum_{i>j} eps(i,j) pa_i pb_j
            Int phase = 2 * e.reorder_phase(pa, pb);
            for (std::size_t i = 0; i < n; ++i) sum[i] = pa[i] + pb[i];
            r.add_term(sum, (ca * cb).shifted(phase));
        }
    }
    return r;
}

bool QLaurent::operator==(const QLaurent& o) const {
    if (!eps_ || !o.eps_) return terms_.empty() && o.terms_.empty();
    return *eps_ == *o.eps_ && q_form_ == o.q_form_ && terms_ == o.terms_;
}

QLaurent QLaurent::classical_limit() const {
    QLaurent r(eps_, q_form_);
    for (const auto& [p, c] : terms_) r.add_term(p, OmegaScalar::integer(c.classical_limit()));
    return r;
}

bool QLaurent::coefficients_nonnegative() const {
    for (const auto& [p, c] : terms_)
        if (!c.all_nonnegative()) return false;
    return true;
}

OmegaScalar QLaurent::coefficient(const ExpVec& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? OmegaScalar::zero() : it->second;
}

// ---- monomial operations ----

QMonomial mono_mul(const QMonomial& a, const QMonomial& b, const EpsilonForm& eps) {
    if (a.exponents.size() != eps.size() || b.exponents.size() != eps.size())
        throw DomainError("mono_mul: dimension mismatch");
    QMonomial r;
    r.omega_power = a.omega_power + b.omega_power + 2 * eps.reorder_phase(a.exponents, b.exponents);
    r.exponents.resize(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i)
        r.exponents[i] = a.exponents[i] + b.exponents[i];
    return r;
}

QMonomial weyl_order(const ExpVec& p, const EpsilonForm& eps) {
    if (p.size() != eps.size()) throw DomainError("weyl_order: dimension mismatch");
    return QMonomial(-eps.weyl_phase(p), p);
}

QMonomial mono_inverse(const QMonomial& m, const EpsilonForm& eps) {
    ExpVec q(m.exponents.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = -m.exponents[i];
    // (w^N Z^p)^-1 = w^{-N} (Z^p)^-1; the inverse of Z^p in standard form is
    // w^{-2 sum_{i>j} eps(i,j) q_i p_j} Z^q with q = -p, i.e. +2*reorder(q, p)... derive:
    // Z^q Z^p = w^{2 reorder(q,p)} Z^0, so (Z^p)^-1 = w^{-2 reorder(q,p)} Z^q.
    Int phase = -2 * eps.reorder_phase(q, m.exponents);
    return QMonomial(-m.omega_power + phase, std::move(q));
}

QLaurent star(const QLaurent& f) {
    QLaurent r(f.eps(), f.q_form());
    const EpsilonForm& e = *f.eps();
    // On a standard-form monomial c Z^p, reversing the factors of Z^p costs
    // w^{-2 sum_{i<j} eps(i,j) p_i p_j}; the q-form case is identical with q
    // in place of w since the X-variables q^2eps-commute.
    for (const auto& [p, c] : f.terms()) {
        Int wp = e.weyl_phase(p);
        r.add_term(p, c.bar().shifted(-2 * wp));
    }
    return r;
}

std::pair<ExpVec, OmegaScalar> highest_term_with_coefficient(const QLaurent& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    // Terms are stored lex-descending, so the first term is the only
    // candidate for componentwise domination.
    const auto& [top, coef] = *f.terms().begin();
    for (const auto& [p, c] : f.terms()) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] > top[i]) {
                std::ostringstream os;
                os << "no componentwise-highest term: candidate exceeded in variable " << (i + 1);
                throw NoHighestTerm(os.str());
            }
        }
    }
    return {top, coef};
}

QMonomial highest_term(const QLaurent& f) {
    auto [p, c] = highest_term_with_coefficient(f);
    if (!c.is_unit_power())
        throw NoHighestTerm("highest term coefficient is not a single unit power");
    return QMonomial(c.sole_exponent(), p);
}

std::pair<ExpVec, OmegaScalar> lex_highest_term(const QLaurent& f, const std::vector<std::size_t>& order) {
    if (f.is_zero()) throw ZeroPolynomial();
    if (order.size() != f.vars()) throw DomainError("lex_highest_term: order has wrong length");
    auto lex_less = [&](const ExpVec& a, const ExpVec& b) {
        for (std::size_t k : order) {
            if (a[k] != b[k]) return a[k] < b[k];
        }
        return false;
    };
    const ExpVec* best = nullptr;
    for (const auto& [p, c] : f.terms()) {
        if (!best || lex_less(*best, p)) best = &p;
    }
    return {*best, f.coefficient(*best)};
}

Parity parity_of_term(const ExpVec& p, Int omega_exponent) {
    Parity r;
    r.q4 = static_cast<int>(((omega_exponent % 4) + 4) % 4);
    r.qvec.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r.qvec[i] = static_cast<int>(((p[i] % 2) + 2) % 2);
    return r;
}

Parity parity_of(const QMonomial& m) { return parity_of_term(m.exponents, m.omega_power); }

std::map<Parity, QLaurent> parity_decompose(const QLaurent& f) {
    std::map<Parity, QLaurent> out;
    for (const auto& [p, c] : f.terms()) {
        for (const auto& [we, wc] : c.terms()) {
            Parity key = parity_of_term(p, we);
            auto it = out.find(key);
            if (it == out.end()) it = out.emplace(key, QLaurent(f.eps(), f.q_form())).first;
            it->second.add_term(p, wc, we);
        }
    }
    return out;
}

QLaurent to_q_form(const QLaurent& f) {
    if (f.q_form()) throw InternalError("to_q_form: input already in q-form");
    QLaurent r(f.eps(), /*q_form=*/true);
    for (const auto& [p, c] : f.terms()) {
        ExpVec a(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] % 2 != 0) {
                std::ostringstream os;
                os << "term with odd exponent " << p[i] << " of Z" << (i + 1)
                   << " lies outside the q-subalgebra";
                throw NotInQSubalgebra(os.str());
            }
            a[i] = p[i] / 2;
        }
        OmegaScalar qc;
        for (const auto& [we, wc] : c.terms()) {
            if (((we % 4) + 4) % 4 != 0) {
                std::ostringstream os;
                os << "term with w-exponent " << we << " (not 0 mod 4) lies outside the q-subalgebra";
                throw NotInQSubalgebra(os.str());
            }
            qc.add_term(wc, we / 4);
        }
        r.add_term(a, qc);
    }
    return r;
}

QLaurent from_q_form(const QLaurent& f) {
    if (!f.q_form()) throw InternalError("from_q_form: input is not in q-form");
    QLaurent r(f.eps(), /*q_form=*/false);
    for (const auto& [a, c] : f.terms()) {
        ExpVec p(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) p[i] = 2 * a[i];
        OmegaScalar wc;
        for (const auto& [qe, qc] : c.terms()) wc.add_term(qc, 4 * qe);
        r.add_term(p, wc);
    }
    return r;
}

std::vector<Int> cyclotomic_polynomial(Int N) {
    if (N < 1) throw DomainError("cyclotomic_polynomial: N must be positive");
    // Phi_N = prod_{d | N} (x^d - 1)^{mu(N/d)}: build numerator, divide exactly.
    // Start from x^N - 1 and divide out Phi_d for proper divisors d.
    std::vector<std::vector<Int>> phi(static_cast<std::size_t>(N) + 1);
    for (Int n = 1; n <= N; ++n) {
        if (N % n != 0) continue;
        std::vector<Int> f(static_cast<std::size_t>(n) + 1, 0);
        f[0] = -1;
        f[static_cast<std::size_t>(n)] = 1; // x^n - 1
        for (Int d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            const std::vector<Int>& g = phi[static_cast<std::size_t>(d)];
            // exact polynomial division f /= g
            std::vector<Int> qout(f.size() - g.size() + 1, 0);
            std::vector<Int> rem = f;
            for (std::size_t k = qout.size(); k-- > 0;) {
                Int lead = rem[k + g.size() - 1];
                if (lead % g.back() != 0) throw InternalError("cyclotomic division not exact");
                Int q = lead / g.back();
                qout[k] = q;
                for (std::size_t j = 0; j < g.size(); ++j) rem[k + j] -= q * g[j];
            }
            for (Int v : rem)
                if (v != 0) throw InternalError("cyclotomic division left a remainder");
            f = std::move(qout);
        }
        phi[static_cast<std::size_t>(n)] = std::move(f);
    }
    return phi[static_cast<std::size_t>(N)];
}

namespace {

// Remainder of c (a Laurent polynomial in q with nonnegative exponents after
// folding) modulo the monic polynomial phi, as coefficients of degree < deg.
OmegaScalar reduce_scalar_mod(const OmegaScalar& folded, const std::vector<Int>& phi) {
    const std::size_t deg = phi.size() - 1; // >= 1: Phi_N is nonconstant for N >= 1
    std::vector<Int> buf;
    for (const auto& [e, c] : folded.terms()) {
        if (e < 0) throw InternalError("reduce_scalar_mod: negative exponent after folding");
        if (buf.size() <= static_cast<std::size_t>(e)) buf.resize(static_cast<std::size_t>(e) + 1, 0);
        buf[static_cast<std::size_t>(e)] += c;
    }
    for (std::size_t k = buf.size(); k-- > deg;) {
        Int q = buf[k]; // phi is monic
        if (q == 0) continue;
        for (std::size_t j = 0; j < phi.size(); ++j) buf[k - deg + j] -= q * phi[j];
    }
    OmegaScalar out;
    for (std::size_t k = 0; k < buf.size() && k < deg; ++k) out.add_term(buf[k], static_cast<Int>(k));
    return out;
}

} // namespace

QLaurent reduce_mod_cyclotomic(const QLaurent& f, Int N) {
    if (N < 1 || N % 2 == 0) throw DomainError("reduce_mod_cyclotomic: N must be odd and positive");
    if (!f.q_form()) throw DomainError("reduce_mod_cyclotomic: input must be in q-form");
    std::vector<Int> phi = cyclotomic_polynomial(N);
    QLaurent r(f.eps(), /*q_form=*/true);
    for (const auto& [p, c] : f.terms()) {
        OmegaScalar folded = c.exponents_mod(N); // q^N = 1 in Z[q]/(Phi_N)
        r.add_term(p, reduce_scalar_mod(folded, phi));
    }
    return r;
}

} // namespace qdual
