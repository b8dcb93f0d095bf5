#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmf/rational.hpp"

namespace qmf {

/// Dense truncated power series in one abstract variable: index k holds the
/// coefficient of (variable)^k. trunc() is the exclusive order bound.
class UniSeries {
  public:
    UniSeries() : trunc_(0) {}
    explicit UniSeries(std::int64_t trunc) : coeffs_(), trunc_(trunc) {}
    UniSeries(std::vector<Gaussian> coeffs, std::int64_t trunc);

    static UniSeries constant(const Gaussian& c, std::int64_t trunc);
    /// The identity series u (coefficient 1 at degree 1).
    static UniSeries identity(std::int64_t trunc);

    /// Copy with truncation tightened to new_trunc.
    UniSeries truncated(std::int64_t new_trunc) const;

    std::int64_t trunc() const { return trunc_; }
    /// Coefficient of degree k (zero beyond stored data, throws past trunc).
    const Gaussian& coeff(std::int64_t k) const;
    std::int64_t degree_bound() const { return static_cast<std::int64_t>(coeffs_.size()); }

    UniSeries operator-() const;
    friend UniSeries operator+(const UniSeries& a, const UniSeries& b);
    friend UniSeries operator-(const UniSeries& a, const UniSeries& b);
    friend UniSeries operator*(const UniSeries& a, const UniSeries& b);
    UniSeries operator*(const Gaussian& c) const;

    /// Substitute u -> c*u (coefficient k scales by c^k).
    UniSeries scale_var(const Gaussian& c) const;

    friend bool operator==(const UniSeries& a, const UniSeries& b);

    bool is_real() const;

    static std::optional<std::int64_t> first_mismatch(const UniSeries& a,
                                                      const UniSeries& b,
                                                      std::int64_t bound);

    std::string str(const std::string& var = "u") const;

    void set(std::int64_t k, const Gaussian& c);

  private:
    void normalize();
    std::vector<Gaussian> coeffs_;
    std::int64_t trunc_;
};

/// Multiplicative inverse of a series with nonzero constant term.
UniSeries inverse(const UniSeries& a);

UniSeries div(const UniSeries& a, const UniSeries& b);

/// Substitute inner (zero constant term) into outer.
UniSeries compose(const UniSeries& outer, const UniSeries& inner);

} // namespace qmf
