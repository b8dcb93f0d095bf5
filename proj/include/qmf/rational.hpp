#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "qmf/errors.hpp"

namespace qmf {

/// Exact arbitrary-precision rational, always in lowest terms.
using Rational = mpq_class;

/// num/den in lowest terms. mpq_class's two-argument constructor does not
/// canonicalize; use this whenever the pair may share a factor.
inline Rational frac(long num, long den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parse "p", "-p" or "p/q". Throws io_error on malformed input or q=0.
Rational parse_rational(const std::string& s);

/// Canonical text form: "p" or "p/q" with q>0.
std::string rational_str(const Rational& x);

/// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& x);

/// Element of Q(i): re + im*i with exact rational parts.
class Gaussian {
  public:
    Gaussian() : re_(0), im_(0) {}
    Gaussian(long n) : re_(n), im_(0) {}
    Gaussian(const Rational& re) : re_(re), im_(0) {}
    Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Gaussian conj() const { return Gaussian(re_, -im_); }

    /// Squared modulus re^2 + im^2 (a rational).
    Rational norm() const { return re_ * re_ + im_ * im_; }

    Gaussian operator-() const { return Gaussian(-re_, -im_); }

    Gaussian& operator+=(const Gaussian& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Gaussian& operator*=(const Gaussian& o)
    {
        // Real-by-real is the dominant case in the electric-frame suites.
        if (im_ == 0 && o.im_ == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Gaussian& operator/=(const Gaussian& o)
    {
        if (o.is_zero()) {
            throw math_error("Gaussian division by zero");
        }
        if (im_ == 0 && o.im_ == 0) {
            re_ /= o.re_;
            return *this;
        }
        const Rational n = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend bool operator==(const Gaussian& a, const Gaussian& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    /// The imaginary unit.
    static Gaussian i() { return Gaussian(Rational(0), Rational(1)); }

    /// i^e for any integer e (negative allowed).
    static Gaussian i_pow(long e)
    {
        switch (((e % 4) + 4) % 4) {
            case 0: return Gaussian(1);
            case 1: return i();
            case 2: return Gaussian(-1);
            default: return Gaussian(Rational(0), Rational(-1));
        }
    }

    Gaussian pow(long e) const;

    /// "a", "a+b*i" style display form (tests and diagnostics only).
    std::string str() const;

  private:
    Rational re_;
    Rational im_;
};

std::ostream& operator<<(std::ostream& os, const Gaussian& g);

/// n! as an exact rational.
Rational factorial(unsigned long n);

} // namespace qmf
