#include "qdual/omega_scalar.hpp"

#include "qdual/errors.hpp"

namespace qdual {

Int OmegaScalar::sole_exponent() const {
    if (coeffs_.size() != 1)
        throw InternalError("sole_exponent: scalar is not a single term");
    return coeffs_.begin()->first;
}

void OmegaScalar::add_term(Int coefficient, Int exponent) {
    if (coefficient == 0) return;
    auto it = coeffs_.find(exponent);
    if (it == coeffs_.end()) {
        coeffs_[exponent] = coefficient;
    } else {
        it->second += coefficient;
        if (it->second == 0) coeffs_.erase(it);
    }
}

OmegaScalar& OmegaScalar::operator+=(const OmegaScalar& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(c, e);
    return *this;
}

OmegaScalar& OmegaScalar::operator-=(const OmegaScalar& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(-c, e);
    return *this;
}

OmegaScalar OmegaScalar::operator+(const OmegaScalar& o) const {
    OmegaScalar r = *this;
    r += o;
    return r;
}

OmegaScalar OmegaScalar::operator-(const OmegaScalar& o) const {
    OmegaScalar r = *this;
    r -= o;
    return r;
}

OmegaScalar OmegaScalar::operator-() const {
    OmegaScalar r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

OmegaScalar OmegaScalar::operator*(const OmegaScalar& o) const {
    OmegaScalar r;
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) r.add_term(c1 * c2, e1 + e2);
    return r;
}

OmegaScalar& OmegaScalar::operator*=(const OmegaScalar& o) {
    *this = *this * o;
    return *this;
}

OmegaScalar OmegaScalar::shifted(Int shift) const {
    OmegaScalar r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e + shift] = c;
    return r;
}

OmegaScalar OmegaScalar::bar() const {
    OmegaScalar r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
    return r;
}

Int OmegaScalar::classical_limit() const {
    Int s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
}

bool OmegaScalar::all_nonnegative() const {
    for (const auto& [e, c] : coeffs_)
        if (c < 0) return false;
    return true;
}

OmegaScalar OmegaScalar::exponents_mod(Int modulus) const {
    OmegaScalar r;
    for (const auto& [e, c] : coeffs_) {
        Int m = e % modulus;
        if (m < 0) m += modulus;
        r.add_term(c, m);
    }
    return r;
}

Int OmegaScalar::min_exponent() const {
    if (coeffs_.empty()) throw InternalError("min_exponent of zero scalar");
    return coeffs_.begin()->first;
}

Int OmegaScalar::max_exponent() const {
    if (coeffs_.empty()) throw InternalError("max_exponent of zero scalar");
    return coeffs_.rbegin()->first;
}

} // namespace qdual
