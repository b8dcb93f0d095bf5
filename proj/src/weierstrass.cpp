#include "qmf/weierstrass.hpp"

#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

// ---------------------------------------------------------------- XPoly

void XPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

XPoly XPoly::x()
{
    return XPoly(std::vector<Rational>{Rational(0), Rational(1)});
}

XPoly XPoly::operator-() const
{
    XPoly p = *this;
    for (auto& r : p.c_) {
        r = -r;
    }
    return p;
}

XPoly operator+(const XPoly& a, const XPoly& b)
{
    XPoly p;
    p.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < p.c_.size(); ++k) {
        if (k < a.c_.size()) {
            p.c_[k] += a.c_[k];
        }
        if (k < b.c_.size()) {
            p.c_[k] += b.c_[k];
        }
    }
    p.normalize();
    return p;
}

XPoly operator-(const XPoly& a, const XPoly& b)
{
    return a + (-b);
}

XPoly operator*(const XPoly& a, const XPoly& b)
{
    XPoly p;
    if (a.is_zero() || b.is_zero()) {
        return p;
    }
    p.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] != 0) {
                p.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
    }
    p.normalize();
    return p;
}

XPoly XPoly::operator*(const Rational& r) const
{
    if (r == 0) {
        return XPoly();
    }
    XPoly p = *this;
    for (auto& c : p.c_) {
        c *= r;
    }
    return p;
}

QSeries XPoly::eval(const QSeries& xval) const
{
    QSeries result = QSeries::zero(QSeries::kExact);
    for (std::size_t k = c_.size(); k-- > 0;) {
        result = result * xval + QSeries::constant(Gaussian(c_[k]));
    }
    return result;
}

std::string XPoly::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << rational_str(c_[k]) << ")";
        if (k == 1) {
            os << "*x";
        } else if (k > 1) {
            os << "*x^" << k;
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

// ---------------------------------------------------------------- XSeries

namespace {
const XPoly kZeroPoly{};
}

std::int64_t XSeries::tval() const
{
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (!rows_[k].is_zero()) {
            return static_cast<std::int64_t>(k);
        }
    }
    return ttrunc_;
}

const XPoly& XSeries::row(std::int64_t k) const
{
    if (k < 0 || k >= ttrunc_) {
        throw order_error("XSeries row beyond t-truncation");
    }
    return rows_[static_cast<std::size_t>(k)];
}

void XSeries::set_row(std::int64_t k, XPoly p)
{
    if (k < 0 || k >= ttrunc_) {
        return;
    }
    rows_[static_cast<std::size_t>(k)] = std::move(p);
}

XSeries XSeries::operator-() const
{
    XSeries s(ttrunc_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        s.rows_[k] = -rows_[k];
    }
    return s;
}

XSeries operator+(const XSeries& a, const XSeries& b)
{
    XSeries s(std::min(a.ttrunc_, b.ttrunc_));
    for (std::int64_t k = 0; k < s.ttrunc_; ++k) {
        s.rows_[static_cast<std::size_t>(k)] =
            a.rows_[static_cast<std::size_t>(k)] + b.rows_[static_cast<std::size_t>(k)];
    }
    return s;
}

XSeries operator-(const XSeries& a, const XSeries& b)
{
    return a + (-b);
}

XSeries operator*(const XSeries& a, const XSeries& b)
{
    const std::int64_t tt = std::min(a.ttrunc_ + b.tval(), b.ttrunc_ + a.tval());
    XSeries s(tt);
    for (std::int64_t i = 0; i < a.ttrunc_; ++i) {
        if (a.rows_[static_cast<std::size_t>(i)].is_zero()) {
            continue;
        }
        for (std::int64_t j = 0; j < b.ttrunc_ && i + j < tt; ++j) {
            if (!b.rows_[static_cast<std::size_t>(j)].is_zero()) {
                s.rows_[static_cast<std::size_t>(i + j)] =
                    s.rows_[static_cast<std::size_t>(i + j)]
                    + a.rows_[static_cast<std::size_t>(i)] * b.rows_[static_cast<std::size_t>(j)];
            }
        }
    }
    return s;
}

XSeries XSeries::operator*(const XPoly& p) const
{
    XSeries s(ttrunc_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        s.rows_[k] = rows_[k] * p;
    }
    return s;
}

XSeries XSeries::derivative() const
{
    if (ttrunc_ <= 0) {
        return XSeries(0);
    }
    XSeries s(ttrunc_ - 1);
    for (std::int64_t k = 0; k + 1 < ttrunc_; ++k) {
        s.rows_[static_cast<std::size_t>(k)] =
            rows_[static_cast<std::size_t>(k + 1)] * Rational(k + 1);
    }
    return s;
}

XSeries XSeries::shifted(std::int64_t k) const
{
    XSeries s(ttrunc_ + k);
    for (std::int64_t j = 0; j < ttrunc_; ++j) {
        if (j + k >= 0 && j + k < s.ttrunc_) {
            s.rows_[static_cast<std::size_t>(j + k)] = rows_[static_cast<std::size_t>(j)];
        } else if (j + k < 0 && !rows_[static_cast<std::size_t>(j)].is_zero()) {
            throw math_error("XSeries shift below t^0");
        }
    }
    return s;
}

XSeries XSeries::truncated(std::int64_t ttrunc) const
{
    if (ttrunc >= ttrunc_) {
        return *this;
    }
    XSeries s(ttrunc);
    for (std::int64_t k = 0; k < ttrunc; ++k) {
        s.rows_[static_cast<std::size_t>(k)] = rows_[static_cast<std::size_t>(k)];
    }
    return s;
}

XSeries inverse(const XSeries& a)
{
    if (a.ttrunc() < 1 || a.row(0) != XPoly(1)) {
        throw math_error("XSeries inverse requires a unit constant row");
    }
    XSeries b(a.ttrunc());
    b.set_row(0, XPoly(1));
    for (std::int64_t n = 1; n < a.ttrunc(); ++n) {
        XPoly acc;
        for (std::int64_t k = 1; k <= n; ++k) {
            if (!a.row(k).is_zero() && !b.row(n - k).is_zero()) {
                acc = acc + a.row(k) * b.row(n - k);
            }
        }
        b.set_row(n, -acc);
    }
    return b;
}

XSeries sqrt_unit(const XSeries& a)
{
    if (a.ttrunc() < 1 || a.row(0) != XPoly(1)) {
        throw math_error("XSeries sqrt requires a unit constant row");
    }
    XSeries b(a.ttrunc());
    b.set_row(0, XPoly(1));
    const Rational half(1, 2);
    for (std::int64_t n = 1; n < a.ttrunc(); ++n) {
        XPoly acc = a.row(n);
        for (std::int64_t k = 1; k < n; ++k) {
            if (!b.row(k).is_zero() && !b.row(n - k).is_zero()) {
                acc = acc - b.row(k) * b.row(n - k);
            }
        }
        b.set_row(n, acc * half);
    }
    return b;
}

XSeries exp_positive_t(const XSeries& a)
{
    const std::int64_t v = a.tval();
    XSeries result(a.ttrunc());
    result.set_row(0, XPoly(1));
    if (v >= a.ttrunc()) {
        return result;
    }
    if (v <= 0) {
        throw math_error("XSeries exp requires positive t-valuation");
    }
    XSeries power = result;
    Rational kfact(1);
    for (std::int64_t k = 1; k * v < a.ttrunc(); ++k) {
        power = (power * a).truncated(a.ttrunc());
        kfact *= k;
        const Rational inv = Rational(1) / kfact;
        XSeries term(a.ttrunc());
        for (std::int64_t j = 0; j < power.ttrunc() && j < a.ttrunc(); ++j) {
            term.set_row(j, power.row(j) * inv);
        }
        result = result + term;
    }
    return result;
}

// ----------------------------------------------------------- sigma etc.

XPoly blowup_g2()
{
    // 4(x^2/3 - 1)
    return XPoly(std::vector<Rational>{Rational(-4), Rational(0), Rational(4, 3)});
}

XPoly blowup_g3()
{
    // (8x^3 - 36x)/27
    return XPoly(std::vector<Rational>{Rational(0), Rational(-4, 3), Rational(0),
                                       Rational(8, 27)});
}

XSeries sigma_series(const XPoly& g2, const XPoly& g3, std::int64_t nt)
{
    if (nt < 5) {
        throw order_error("sigma_series: t-order must be >= 5");
    }
    // Laurent coefficients of wp = 1/t^2 + sum_{k>=2} c_k t^{2k-2}
    const std::int64_t kmax = nt / 2 + 1;
    std::vector<XPoly> c(static_cast<std::size_t>(kmax) + 1);
    if (kmax >= 2) {
        c[2] = g2 * Rational(1, 20);
    }
    if (kmax >= 3) {
        c[3] = g3 * Rational(1, 28);
    }
    for (std::int64_t k = 4; k <= kmax; ++k) {
        XPoly acc;
        for (std::int64_t m = 2; m <= k - 2; ++m) {
            acc = acc + c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k - m)];
        }
        c[static_cast<std::size_t>(k)] = acc * frac(3, (2 * k + 1) * (k - 3));
    }
    // log(sigma/t) = -sum c_k t^(2k) / (2k(2k-1))
    XSeries logu(nt - 1);
    for (std::int64_t k = 2; k <= kmax; ++k) {
        if (2 * k < nt - 1) {
            logu.set_row(2 * k,
                         c[static_cast<std::size_t>(k)] * Rational(-1, 2 * k * (2 * k - 1)));
        }
    }
    return exp_positive_t(logu).shifted(1);
}

XSeries wp_from_sigma(const XSeries& sigma)
{
    if (sigma.ttrunc() < 2 || !sigma.row(0).is_zero() || sigma.row(1) != XPoly(1)) {
        throw math_error("wp_from_sigma: sigma must be odd with unit linear row");
    }
    for (std::int64_t k = 0; k < sigma.ttrunc(); k += 2) {
        if (!sigma.row(k).is_zero()) {
            throw math_error("wp_from_sigma: sigma must be odd in t");
        }
    }
    // With u = sigma/t:  t^2 wp = 1 - t^2 (u'' u - (u')^2) / u^2.
    const XSeries u = sigma.shifted(-1);
    const XSeries du = u.derivative();
    const XSeries ddu = du.derivative();
    const XSeries num = (ddu * u - du * du).shifted(2);
    const XSeries one_t2 = [&] {
        XSeries s(num.ttrunc());
        s.set_row(0, XPoly(1));
        return s;
    }();
    return one_t2 - num * inverse((u * u).truncated(num.ttrunc()));
}

XPoly sigma3_branch_root()
{
    return XPoly(std::vector<Rational>{Rational(0), Rational(-1, 3)});
}

std::pair<XPoly, XPoly> sigma3_other_branch_quadratic()
{
    // 4s^3 - g2 s - g3 = 4 (s + x/3)(s^2 + b s + c)
    const XPoly b = XPoly(std::vector<Rational>{Rational(0), Rational(-1, 3)});
    const XPoly cc = XPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(-2, 9)});
    return {b, cc};
}

XSeries sigma3_series(const XSeries& sigma, const XSeries& wp_t2)
{
    // branch certificate: 4 s^3 - g2 s - g3 must vanish identically at s=-x/3
    const XPoly s = sigma3_branch_root();
    const XPoly res = s * s * s * Rational(4) - blowup_g2() * s - blowup_g3();
    if (!res.is_zero()) {
        throw math_error("sigma3_series: branch value is not a root of the cubic");
    }
    XSeries arg = wp_t2;
    if (arg.ttrunc() > 2) {
        arg.set_row(2, arg.row(2) + XPoly(std::vector<Rational>{Rational(0), Rational(1, 3)}));
    }
    return (sigma.shifted(-1) * sqrt_unit(arg)).truncated(
        std::min(sigma.ttrunc() - 1, arg.ttrunc()));
}

namespace {

XSeries exp_gauge(std::int64_t nt)
{
    // e^{-t^2 x/6}
    XSeries arg(nt);
    arg.set_row(2, XPoly(std::vector<Rational>{Rational(0), Rational(-1, 6)}));
    return exp_positive_t(arg);
}

} // namespace

XSeries blowup_B(std::int64_t nt)
{
    const XSeries sigma = sigma_series(blowup_g2(), blowup_g3(), nt + 4);
    const XSeries wp = wp_from_sigma(sigma);
    const XSeries s3 = sigma3_series(sigma, wp);
    return (exp_gauge(nt) * s3).truncated(nt);
}

XSeries blowup_S(std::int64_t nt)
{
    const XSeries sigma = sigma_series(blowup_g2(), blowup_g3(), nt);
    return (exp_gauge(nt) * sigma).truncated(nt);
}

BiSeries eval_at(const XSeries& series, const QSeries& xval)
{
    BiSeries out(series.ttrunc());
    for (std::int64_t k = 0; k < series.ttrunc(); ++k) {
        out.set_row(k, series.row(k).eval(xval));
    }
    return out;
}

} // namespace qmf
