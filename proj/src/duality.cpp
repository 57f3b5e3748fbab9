#include "qdual/duality.hpp"

#include <sstream>

#include "qdual/render.hpp"

namespace qdual {

DualityEngine::DualityEngine(const IdealTriangulation& T, int threads)
    : T_(T), eps_(epsilon_matrix(T)), threads_(threads) {}

const QLaurent& DualityEngine::trace_of(const CurveWord& c) {
    auto it = trace_cache_.find(c);
    if (it != trace_cache_.end()) return it->second;
    QLaurent tr = quantum_trace(T_, c, eps_, threads_);
    return trace_cache_.emplace(c, std::move(tr)).first->second;
}

QLaurent DualityEngine::i_omega(const IntegralLamination& l) {
    QLaurent acc = QLaurent::one(eps_);
    for (const auto& comp : l.components()) {
        if (comp.peripheral) {
            std::vector<Int> mu = comp.curve.mu(T_);
            ExpVec p(mu.size());
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = comp.weight * mu[i];
            acc = acc * QLaurent::monomial(eps_, weyl_order(p, *eps_));
        } else {
            acc = acc * chebyshev(comp.weight).evaluate(trace_of(comp.curve));
        }
    }
    return acc;
}

const QLaurent& DualityEngine::i_hat_q(const IntegralLamination& l) {
    return i_hat_q_mu(l.mu());
}

const QLaurent& DualityEngine::i_hat_q_mu(const std::vector<Int>& mu) {
    auto it = dual_cache_.find(mu);
    if (it != dual_cache_.end()) return it->second;
    for (Int v : mu)
        if (v % 2 != 0)
            throw NotInALattice("lamination has half-integer coordinates; the duality map needs "
                                "integral a-coordinates");
    IntegralLamination l = from_coords_doubled(T_, mu);
    QLaurent w = i_omega(l);
    QLaurent q;
    try {
        q = to_q_form(w);
    } catch (const NotInQSubalgebra& e) {
        throw InternalParityViolation(std::string("parity theorem violated: ") + e.what());
    }
    return dual_cache_.emplace(mu, std::move(q)).first->second;
}

QLaurent DualityEngine::i_one(const IntegralLamination& l) {
    return i_hat_q(l).classical_limit();
}

StructureConstantTable DualityEngine::product_expand(const IntegralLamination& l,
                                                     const IntegralLamination& lp) {
    QLaurent product = i_hat_q(l) * i_hat_q(lp);
    std::vector<std::size_t> order(T_.num_edges());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    StructureConstantTable table;
    QLaurent remainder = product;
    bool have_prev = false;
    ExpVec prev;
    while (!remainder.is_zero()) {
        auto [a, coef] = lex_highest_term(remainder, order);
        if (have_prev && !(a < prev))
            throw PeelFailure("lex-highest term failed to decrease during peeling");
        prev = a;
        have_prev = true;
        std::vector<Int> mu(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) mu[i] = 2 * a[i];
        IntegralLamination l2;
        try {
            l2 = from_coords_doubled(T_, mu);
        } catch (const NonRealizable& e) {
            throw PeelFailure(std::string("peeled exponent vector is not a lamination: ") + e.what());
        }
        // c^q = coefficient divided by the Weyl phase q^{-sum_{i<j} eps a_i a_j}
        // of the highest term of the peeled image.
        OmegaScalar cq = coef.shifted(eps_->weyl_phase(a));
        remainder -= i_hat_q(l2).scaled(cq);
        if (!remainder.coefficient(a).is_zero())
            throw PeelFailure("peeling did not clear the lex-highest term");
        table.rows.push_back({std::move(l2), std::move(cq)});
    }

    // Reconstruction identity, exactly.
    QLaurent check = QLaurent::zero(eps_, true);
    for (const auto& [l2, cq] : table.rows) check += i_hat_q(l2).scaled(cq);
    if (!(check == product)) throw PeelFailure("reconstruction identity failed after peeling");
    return table;
}

bool DualityEngine::frobenius_check(const IntegralLamination& l, Int N) {
    if (N < 1 || N % 2 == 0) throw DomainError("frobenius_check: N must be odd and positive");
    std::vector<Int> muN(l.mu().size());
    for (std::size_t i = 0; i < muN.size(); ++i) muN[i] = N * l.mu()[i];
    QLaurent lhs = reduce_mod_cyclotomic(i_hat_q_mu(muN), N);

    QLaurent classical = i_one(l);
    QLaurent rhs(eps_, /*q_form=*/true);
    for (const auto& [p, c] : classical.terms()) {
        ExpVec pN(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) pN[i] = N * p[i];
        rhs.add_term(pN, c);
    }
    rhs = reduce_mod_cyclotomic(rhs, N);
    return lhs == rhs;
}

bool DualityEngine::peripheral_shift_check(const IntegralLamination& l, const std::vector<Int>& a) {
    if (a.size() != T_.num_edges()) throw DomainError("shift vector has wrong length");
    std::vector<Int> ea = eps_->apply(a);
    for (Int v : ea)
        if (v != 0) throw KernelViolation("shift vector is not in the kernel of epsilon");

    std::vector<Int> mu2(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mu2[i] = 2 * a[i];
    IntegralLamination shift_lam = from_coords_doubled(T_, mu2);
    for (const auto& comp : shift_lam.components())
        if (!comp.peripheral) return false; // kernel vectors decompose into peripherals

    std::vector<Int> mu_shifted(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mu_shifted[i] = l.mu()[i] + mu2[i];
    const QLaurent& lhs = i_hat_q_mu(mu_shifted);

    QLaurent xmono(eps_, /*q_form=*/true);
    xmono.add_term(a, OmegaScalar::power(-eps_->weyl_phase(a)));
    QLaurent rhs = xmono * i_hat_q(l);
    return lhs == rhs;
}

VerifyReport DualityEngine::verify_bundle(const IntegralLamination& l) {
    VerifyReport rep;
    const QLaurent& dual = i_hat_q(l);
    rep.qform_ok = true; // i_hat_q would have thrown otherwise

    QLaurent w_limit = i_omega(l).classical_limit();
    QLaurent cl = classical_I(T_, l);
    rep.classical_ok = same_terms(w_limit, cl);

    ExpVec a(l.mu().size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = l.mu()[i] / 2;
    try {
        if (l.empty()) {
            rep.highest_ok = dual == QLaurent::one(eps_, true);
            rep.highest_term = "1";
        } else {
            auto [top, coef] = highest_term_with_coefficient(dual);
            rep.highest_ok =
                top == a && coef == OmegaScalar::power(-eps_->weyl_phase(a));
            rep.highest_term = render_term_text(dual, top);
        }
    } catch (const DomainError&) {
        rep.highest_ok = false;
    }

    rep.star_ok = star(dual) == dual;
    rep.positive_observed = dual.coefficients_nonnegative();
    return rep;
}

bool same_terms(const QLaurent& a, const QLaurent& b) {
    if (a.term_count() != b.term_count()) return false;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

} // namespace qdual
