#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qdual/errors.hpp"
#include "qdual/omega_scalar.hpp"

namespace qdual {

/// Skew-symmetric integer form driving the commutation relations
/// Z_i Z_j = w^{2 eps(i,j)} Z_j Z_i.
class EpsilonForm {
  public:
    explicit EpsilonForm(std::size_t n) : n_(n), eps_(n * n, 0) {}

    std::size_t size() const { return n_; }

    Int operator()(std::size_t i, std::size_t j) const { return eps_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, Int v) {
        eps_[i * n_ + j] = v;
        eps_[j * n_ + i] = -v;
    }

    void add(std::size_t i, std::size_t j, Int v) {
        if (i == j) {
            if (v != 0) throw InternalError("epsilon diagonal must stay zero");
            return;
        }
        eps_[i * n_ + j] += v;
        eps_[j * n_ + i] -= v;
    }

    bool is_skew() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (eps_[i * n_ + j] != -eps_[j * n_ + i]) return false;
        return true;
    }

    /// sum_{i<j} eps(i,j) p_i p_j, the Weyl phase exponent of Z^p.
    Int weyl_phase(const std::vector<Int>& p) const {
        Int s = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (p[i] == 0) continue;
            for (std::size_t j = i + 1; j < n_; ++j) s += (*this)(i, j) * p[i] * p[j];
        }
        return s;
    }

    /// sum_{i>j} eps(i,j) a_i b_j: the reordering cost of moving a full block
    /// Z^a past a block Z^b into sorted position.
    Int reorder_phase(const std::vector<Int>& a, const std::vector<Int>& b) const {
        Int s = 0;
        for (std::size_t i = 1; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < i; ++j)
                if (b[j] != 0) s += (*this)(i, j) * a[i] * b[j];
        }
        return s;
    }

    /// eps * a (matrix-vector product).
    std::vector<Int> apply(const std::vector<Int>& a) const {
        std::vector<Int> r(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * a[j];
        return r;
    }

    bool operator==(const EpsilonForm& o) const { return n_ == o.n_ && eps_ == o.eps_; }

  private:
    std::size_t n_;
    std::vector<Int> eps_;
};

using EpsilonPtr = std::shared_ptr<const EpsilonForm>;

} // namespace qdual
