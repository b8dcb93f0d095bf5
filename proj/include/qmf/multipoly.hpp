#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmf/rational.hpp"

namespace qmf {

/// Truncated multivariate polynomial over Q(i) in named variables
/// (lambda, d1, ..., dr). Each variable has its own exclusive-free exponent
/// bound: monomials with exponent(v) > order(v) are dropped. Since every
/// generator used here has nonnegative exponents, box-truncated arithmetic is
/// exact within the box.
///
/// Exponent vectors are packed 4 bits per variable (max 16 variables,
/// exponents <= 15), which keeps term maps small and ordering deterministic.
class MultiPoly {
  public:
    MultiPoly() = default;
    /// orders[v] = maximum allowed exponent of variable v.
    explicit MultiPoly(std::vector<int> orders);

    static MultiPoly constant(const Gaussian& c, std::vector<int> orders);

    std::size_t nvars() const { return orders_.size(); }
    const std::vector<int>& orders() const { return orders_; }

    bool is_zero() const { return terms_.empty(); }

    static std::uint64_t pack(const std::vector<int>& exps);
    static std::vector<int> unpack(std::uint64_t key, std::size_t nvars);

    const Gaussian& coeff(const std::vector<int>& exps) const;
    void add_term(const std::vector<int>& exps, const Gaussian& c);
    void add_term_packed(std::uint64_t key, const Gaussian& c);

    const std::map<std::uint64_t, Gaussian>& terms() const { return terms_; }

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly operator*(const Gaussian& c) const;

    /// In-place product with exp(c * x^key) where x^key is a single monomial.
    void mul_exp_monomial(std::uint64_t key, const Gaussian& c);

    /// Partial derivative with respect to variable v. The result is exact
    /// only below the box top in v; callers compute at inflated orders.
    MultiPoly derivative(std::size_t v) const;

    /// Copy truncated to tighter per-variable orders.
    MultiPoly truncated(const std::vector<int>& orders) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        return a.orders_ == b.orders_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// First differing monomial between a and b (exponent vector), if any.
    /// Compares term maps only; boxes must agree for a meaningful answer.
    static std::optional<std::vector<int>> first_mismatch(const MultiPoly& a,
                                                          const MultiPoly& b);

    std::string str(const std::vector<std::string>& names) const;

  private:
    bool in_box(std::uint64_t key) const;
    std::vector<int> orders_;
    std::map<std::uint64_t, Gaussian> terms_;
};

} // namespace qmf
