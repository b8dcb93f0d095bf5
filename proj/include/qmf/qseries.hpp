#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "qmf/rational.hpp"

namespace qmf {

class UniSeries;

/// Truncated Laurent series in q with exponents in (1/24)*Z and Gaussian
/// rational coefficients. An exponent index j stands for q^(j/24).
///
/// A series knows its coefficients for all j < trunc() and nothing beyond;
/// trunc() == kExact marks exactly-known data (constants, monomials,
/// polynomials). Stored coefficients are never zero, so val() is always the
/// true valuation of the known part. Values are immutable in spirit: every
/// operation returns a fresh series.
class QSeries {
  public:
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();
    /// Exponent denominator: j counts 24ths of a q-power.
    static constexpr std::int64_t kGrading = 24;

    QSeries() : trunc_(kExact) {}

    /// 0 + O(q^(trunc/24)).
    static QSeries zero(std::int64_t trunc = kExact);
    /// c, exactly known unless a truncation is supplied.
    static QSeries constant(const Gaussian& c, std::int64_t trunc = kExact);
    /// c * q^(units/24).
    static QSeries monomial(const Gaussian& c, std::int64_t units,
                            std::int64_t trunc = kExact);

    std::int64_t trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ == kExact; }
    /// True if no coefficient below trunc() is nonzero.
    bool is_zero() const { return coeffs_.empty(); }
    /// Valuation of the known part; equals trunc() for a zero series.
    std::int64_t val() const { return coeffs_.empty() ? trunc_ : coeffs_.begin()->first; }

    /// Coefficient of q^(j/24); throws order_error for j >= trunc().
    const Gaussian& coefficient(std::int64_t j) const;

    /// Coefficient of q^n (integer powers); j = 24n.
    const Gaussian& coefficient_q(std::int64_t n) const { return coefficient(n * kGrading); }

    bool is_real() const;
    /// True iff every stored exponent is a multiple of 24.
    bool integer_graded() const;

    const std::map<std::int64_t, Gaussian>& terms() const { return coeffs_; }

    /// Copy with truncation tightened to new_trunc (no-op if already tighter).
    QSeries truncated(std::int64_t new_trunc) const;

    QSeries operator-() const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator*(const Gaussian& c) const;

    /// Multiply by q^(units/24).
    QSeries shifted(std::int64_t units) const;

    QSeries pow(long e) const;

    /// Structural equality: same truncation and same stored terms.
    friend bool operator==(const QSeries& a, const QSeries& b)
    {
        return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

    /// First exponent j < bound at which a and b differ, if any.
    /// Requires both series to be known up to bound.
    static std::optional<std::int64_t> first_mismatch(const QSeries& a, const QSeries& b,
                                                      std::int64_t bound);

    /// Equality of all coefficients with exponent below bound (1/24 units).
    static bool agree_to(const QSeries& a, const QSeries& b, std::int64_t bound)
    {
        return !first_mismatch(a, b, bound).has_value();
    }

    /// Display form like "1/2 - 2*q + 2*q^2 + O(q^3)" (diagnostics only).
    std::string str() const;

    // Internal: set a coefficient during construction. Zero values erase.
    void set(std::int64_t j, const Gaussian& c);
    void set_trunc(std::int64_t t) { trunc_ = t; }

  private:
    std::map<std::int64_t, Gaussian> coeffs_;
    std::int64_t trunc_;
};

/// Multiplicative inverse. Requires a nonzero leading coefficient
/// (throws math_error "zero leading coefficient" if a is zero to its
/// truncation). The result has valuation -val(a).
QSeries inverse(const QSeries& a);

/// a / b, shorthand for a * inverse(b).
QSeries div(const QSeries& a, const QSeries& b);

/// Square root of a series with even valuation whose leading coefficient is
/// a positive rational perfect square. Throws math_error ("odd valuation" /
/// "non-square leading coefficient") otherwise. The leading coefficient of
/// the result is the positive root.
QSeries sqrt_unit(const QSeries& a);

/// exp(a) for val(a) > 0 (throws math_error "nonpositive valuation").
QSeries exp_positive(const QSeries& a);

/// Exponent map j -> c*j (realizes tau -> c*tau on q-expansions).
QSeries dilate(const QSeries& a, std::int64_t c);

/// Substitute inner (valuation > 0) into a one-variable series.
QSeries compose(const UniSeries& outer, const QSeries& inner);

/// Compositional inverse of an integer-graded series with zero constant
/// term and invertible linear coefficient: compose(revert(a), a) = q.
UniSeries revert(const QSeries& a);

/// Reinterpret an integer-graded series with val >= 0 as a series in one
/// abstract variable (the q-powers become plain degrees).
UniSeries to_uniseries(const QSeries& a);

} // namespace qmf
