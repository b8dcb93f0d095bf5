#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmf/biseries.hpp"
#include "qmf/qseries.hpp"

namespace qmf {

/// Dense polynomial in the formal variable x with exact rational
/// coefficients (no trailing zeros).
class XPoly {
  public:
    XPoly() = default;
    XPoly(long n) : c_{Rational(n)} { normalize(); }
    XPoly(const Rational& r) : c_{r} { normalize(); }
    explicit XPoly(std::vector<Rational> c) : c_(std::move(c)) { normalize(); }

    /// The variable x itself.
    static XPoly x();

    bool is_zero() const { return c_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    Rational coeff(std::int64_t k) const
    {
        return (k >= 0 && k < static_cast<std::int64_t>(c_.size()))
                   ? c_[static_cast<std::size_t>(k)]
                   : Rational(0);
    }

    XPoly operator-() const;
    friend XPoly operator+(const XPoly& a, const XPoly& b);
    friend XPoly operator-(const XPoly& a, const XPoly& b);
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    XPoly operator*(const Rational& r) const;
    friend bool operator==(const XPoly& a, const XPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const XPoly& a, const XPoly& b) { return !(a == b); }

    /// Horner evaluation at a q-series value of x.
    QSeries eval(const QSeries& xval) const;

    std::string str() const;

  private:
    void normalize();
    std::vector<Rational> c_;
};

/// Truncated series in t with XPoly coefficients; row k holds the
/// coefficient of t^k. The Weierstrass p-function is carried as its unit
/// companion t^2*wp so that no principal part ever enters ring operations.
class XSeries {
  public:
    XSeries() : ttrunc_(0) {}
    explicit XSeries(std::int64_t ttrunc)
        : rows_(static_cast<std::size_t>(ttrunc)), ttrunc_(ttrunc)
    {
    }

    std::int64_t ttrunc() const { return ttrunc_; }
    std::int64_t tval() const;
    const XPoly& row(std::int64_t k) const;
    void set_row(std::int64_t k, XPoly p);

    XSeries operator-() const;
    friend XSeries operator+(const XSeries& a, const XSeries& b);
    friend XSeries operator-(const XSeries& a, const XSeries& b);
    friend XSeries operator*(const XSeries& a, const XSeries& b);
    XSeries operator*(const XPoly& p) const;

    /// d/dt (drops the truncation by one).
    XSeries derivative() const;
    /// Multiply by t^k (k may be negative if the low rows vanish).
    XSeries shifted(std::int64_t k) const;
    XSeries truncated(std::int64_t ttrunc) const;

    friend bool operator==(const XSeries& a, const XSeries& b)
    {
        return a.ttrunc_ == b.ttrunc_ && a.rows_ == b.rows_;
    }

  private:
    std::vector<XPoly> rows_;
    std::int64_t ttrunc_;
};

/// Multiplicative inverse of a series with unit constant row.
XSeries inverse(const XSeries& a);
/// Square root of an even series with unit constant row.
XSeries sqrt_unit(const XSeries& a);
/// exp of a series with positive t-valuation.
XSeries exp_positive_t(const XSeries& a);

/// Invariants of the blow-up curve: g2 = 4(x^2/3 - 1), g3 = (8x^3 - 36x)/27.
XPoly blowup_g2();
XPoly blowup_g3();

/// Weierstrass sigma for the curve (g2, g3): odd, sigma(t) = t + O(t^5).
/// Generated from the p-function Laurent recursion and double integration;
/// correctness is certified post hoc by the (wp')^2 = 4wp^3 - g2 wp - g3
/// identity, never assumed from the generation route.
XSeries sigma_series(const XPoly& g2, const XPoly& g3, std::int64_t nt);

/// t^2 * wp recovered from sigma via wp = -(log sigma)'': a unit even
/// series 1 + (g2/20) t^4 + (g3/28) t^6 + ... Throws math_error if sigma is
/// not odd with unit linear row.
XSeries wp_from_sigma(const XSeries& sigma);

/// sigma_3(t) = (sigma/t) * sqrt(t^2 wp + (x/3) t^2) for the blow-up curve.
/// The branch value -x/3 must be an exact root of 4s^3 - g2 s - g3; this is
/// checked symbolically and a failure throws math_error.
XSeries sigma3_series(const XSeries& sigma, const XSeries& wp_t2);

/// Blow-up functions B(x,t) = e^{-t^2 x/6} sigma_3(t) and
/// S(x,t) = e^{-t^2 x/6} sigma(t).
XSeries blowup_B(std::int64_t nt);
XSeries blowup_S(std::int64_t nt);

/// The branch root -x/3 used for sigma_3.
XPoly sigma3_branch_root();
/// Read-only diagnostics: coefficients (b, c) of the monic quadratic
/// s^2 + b s + c carrying the other two roots x/6 +- sqrt(x^2-4)/2.
std::pair<XPoly, XPoly> sigma3_other_branch_quadratic();

/// Substitute x -> xval in every coefficient.
BiSeries eval_at(const XSeries& series, const QSeries& xval);

} // namespace qmf
