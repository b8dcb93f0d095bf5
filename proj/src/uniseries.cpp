#include "qmf/uniseries.hpp"

#include <algorithm>
#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

namespace {
const Gaussian kZero{};
}

UniSeries::UniSeries(std::vector<Gaussian> coeffs, std::int64_t trunc)
    : coeffs_(std::move(coeffs)), trunc_(trunc)
{
    if (static_cast<std::int64_t>(coeffs_.size()) > trunc_) {
        coeffs_.resize(static_cast<std::size_t>(trunc_));
    }
    normalize();
}

UniSeries UniSeries::constant(const Gaussian& c, std::int64_t trunc)
{
    UniSeries s(trunc);
    s.set(0, c);
    return s;
}

UniSeries UniSeries::identity(std::int64_t trunc)
{
    UniSeries s(trunc);
    s.set(1, Gaussian(1));
    return s;
}

void UniSeries::normalize()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

const Gaussian& UniSeries::coeff(std::int64_t k) const
{
    if (k >= trunc_) {
        throw order_error("UniSeries coefficient beyond truncation");
    }
    if (k < 0 || k >= static_cast<std::int64_t>(coeffs_.size())) {
        return kZero;
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

void UniSeries::set(std::int64_t k, const Gaussian& c)
{
    if (k >= trunc_ || k < 0) {
        return;
    }
    if (static_cast<std::int64_t>(coeffs_.size()) <= k) {
        if (c.is_zero()) {
            return;
        }
        coeffs_.resize(static_cast<std::size_t>(k) + 1);
    }
    coeffs_[static_cast<std::size_t>(k)] = c;
    normalize();
}

UniSeries UniSeries::operator-() const
{
    UniSeries s = *this;
    for (auto& c : s.coeffs_) {
        c = -c;
    }
    return s;
}

UniSeries operator+(const UniSeries& a, const UniSeries& b)
{
    UniSeries s(std::min(a.trunc_, b.trunc_));
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    s.coeffs_.resize(std::min<std::size_t>(n, static_cast<std::size_t>(s.trunc_)));
    for (std::size_t k = 0; k < s.coeffs_.size(); ++k) {
        Gaussian c = k < a.coeffs_.size() ? a.coeffs_[k] : Gaussian();
        if (k < b.coeffs_.size()) {
            c += b.coeffs_[k];
        }
        s.coeffs_[k] = c;
    }
    s.normalize();
    return s;
}

UniSeries operator-(const UniSeries& a, const UniSeries& b)
{
    return a + (-b);
}

UniSeries operator*(const UniSeries& a, const UniSeries& b)
{
    // val-adjusted truncation, as for QSeries
    auto val = [](const UniSeries& s) {
        for (std::size_t k = 0; k < s.coeffs_.size(); ++k) {
            if (!s.coeffs_[k].is_zero()) {
                return static_cast<std::int64_t>(k);
            }
        }
        return s.trunc_;
    };
    UniSeries s(std::min(a.trunc_ + val(b), b.trunc_ + val(a)));
    s.coeffs_.assign(static_cast<std::size_t>(
                         std::max<std::int64_t>(0, std::min<std::int64_t>(
                                                       s.trunc_, static_cast<std::int64_t>(
                                                                     a.coeffs_.size()
                                                                     + b.coeffs_.size())))),
                     Gaussian());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size() && i + j < s.coeffs_.size(); ++j) {
            if (!b.coeffs_[j].is_zero()) {
                s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
    }
    s.normalize();
    return s;
}

UniSeries UniSeries::operator*(const Gaussian& c) const
{
    UniSeries s(trunc_);
    if (c.is_zero()) {
        return s;
    }
    s.coeffs_ = coeffs_;
    for (auto& x : s.coeffs_) {
        x *= c;
    }
    s.normalize();
    return s;
}

UniSeries UniSeries::scale_var(const Gaussian& c) const
{
    UniSeries s(trunc_);
    s.coeffs_.resize(coeffs_.size());
    Gaussian p(1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        s.coeffs_[k] = coeffs_[k] * p;
        p *= c;
    }
    s.normalize();
    return s;
}

bool operator==(const UniSeries& a, const UniSeries& b)
{
    return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
}

bool UniSeries::is_real() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Gaussian& c) { return c.is_real(); });
}

std::optional<std::int64_t> UniSeries::first_mismatch(const UniSeries& a, const UniSeries& b,
                                                      std::int64_t bound)
{
    if (a.trunc_ < bound || b.trunc_ < bound) {
        throw order_error("series not known to the requested comparison order");
    }
    for (std::int64_t k = 0; k < bound; ++k) {
        if (a.coeff(k) != b.coeff(k)) {
            return k;
        }
    }
    return std::nullopt;
}

std::string UniSeries::str(const std::string& var) const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << coeffs_[k].str() << ")";
        if (k > 0) {
            os << "*" << var << "^" << k;
        }
    }
    if (first) {
        os << "0";
    }
    os << " + O(" << var << "^" << trunc_ << ")";
    return os.str();
}

UniSeries inverse(const UniSeries& a)
{
    if (a.coeff(0).is_zero()) {
        throw math_error("UniSeries inverse: zero constant term");
    }
    UniSeries b(a.trunc());
    const Gaussian inv0 = Gaussian(1) / a.coeff(0);
    b.set(0, inv0);
    for (std::int64_t n = 1; n < a.trunc(); ++n) {
        Gaussian acc;
        for (std::int64_t k = 1; k <= std::min<std::int64_t>(n, a.degree_bound() - 1); ++k) {
            if (!a.coeff(k).is_zero() && !b.coeff(n - k).is_zero()) {
                acc += a.coeff(k) * b.coeff(n - k);
            }
        }
        b.set(n, -(acc * inv0));
    }
    return b;
}

UniSeries div(const UniSeries& a, const UniSeries& b)
{
    return a * inverse(b);
}

UniSeries UniSeries::truncated(std::int64_t new_trunc) const
{
    if (new_trunc >= trunc_) {
        return *this;
    }
    UniSeries s(new_trunc);
    for (std::int64_t k = 0; k < new_trunc && k < degree_bound(); ++k) {
        s.set(k, coeffs_[static_cast<std::size_t>(k)]);
    }
    return s;
}

UniSeries compose(const UniSeries& outer, const UniSeries& inner)
{
    if (!inner.coeff(0).is_zero()) {
        throw math_error("UniSeries compose: inner must have zero constant term");
    }
    std::int64_t v = inner.trunc();
    for (std::int64_t k = 1; k < inner.trunc(); ++k) {
        if (!inner.coeff(k).is_zero()) {
            v = k;
            break;
        }
    }
    const std::int64_t trunc =
        std::min(inner.trunc(), v >= inner.trunc() ? inner.trunc() : outer.trunc() * v);
    UniSeries result(trunc);
    for (std::int64_t k = std::min(outer.trunc(), trunc) - 1; k >= 0; --k) {
        result = (result * inner).truncated(trunc) + UniSeries::constant(outer.coeff(k), trunc);
    }
    return result;
}

} // namespace qmf
