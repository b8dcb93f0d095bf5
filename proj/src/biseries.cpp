#include "qmf/biseries.hpp"

#include <algorithm>

#include "qmf/errors.hpp"

namespace qmf {

BiSeries::BiSeries(std::vector<QSeries> rows, std::int64_t ttrunc)
    : rows_(std::move(rows)), ttrunc_(ttrunc)
{
    rows_.resize(static_cast<std::size_t>(ttrunc_));
}

BiSeries BiSeries::constant(const QSeries& s, std::int64_t ttrunc)
{
    BiSeries b(ttrunc);
    if (ttrunc > 0) {
        b.rows_[0] = s;
    }
    return b;
}

std::int64_t BiSeries::tval() const
{
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (!rows_[k].is_zero()) {
            return static_cast<std::int64_t>(k);
        }
    }
    return ttrunc_;
}

const QSeries& BiSeries::row(std::int64_t k) const
{
    if (k < 0 || k >= ttrunc_) {
        throw order_error("BiSeries row beyond t-truncation");
    }
    return rows_[static_cast<std::size_t>(k)];
}

void BiSeries::set_row(std::int64_t k, QSeries s)
{
    if (k < 0 || k >= ttrunc_) {
        return;
    }
    rows_[static_cast<std::size_t>(k)] = std::move(s);
}

std::int64_t BiSeries::q_trunc() const
{
    std::int64_t t = QSeries::kExact;
    for (const auto& r : rows_) {
        t = std::min(t, r.trunc());
    }
    return t;
}

BiSeries BiSeries::operator-() const
{
    BiSeries b(ttrunc_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        b.rows_[k] = -rows_[k];
    }
    return b;
}

BiSeries operator+(const BiSeries& a, const BiSeries& b)
{
    BiSeries s(std::min(a.ttrunc_, b.ttrunc_));
    for (std::size_t k = 0; k < s.rows_.size(); ++k) {
        s.rows_[k] = a.rows_[k] + b.rows_[k];
    }
    return s;
}

BiSeries operator-(const BiSeries& a, const BiSeries& b)
{
    return a + (-b);
}

BiSeries operator*(const BiSeries& a, const BiSeries& b)
{
    const std::int64_t tt =
        std::min(a.ttrunc_ + b.tval(), b.ttrunc_ + a.tval());
    BiSeries s(tt);
    for (std::int64_t i = 0; i < a.ttrunc_; ++i) {
        if (a.rows_[static_cast<std::size_t>(i)].is_zero()
            && a.rows_[static_cast<std::size_t>(i)].is_exact()) {
            continue;
        }
        for (std::int64_t j = 0; j < b.ttrunc_ && i + j < tt; ++j) {
            const auto& rb = b.rows_[static_cast<std::size_t>(j)];
            if (rb.is_zero() && rb.is_exact()) {
                continue;
            }
            s.rows_[static_cast<std::size_t>(i + j)] =
                s.rows_[static_cast<std::size_t>(i + j)]
                + a.rows_[static_cast<std::size_t>(i)] * rb;
        }
    }
    return s;
}

BiSeries BiSeries::operator*(const QSeries& s) const
{
    BiSeries b(ttrunc_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        b.rows_[k] = rows_[k] * s;
    }
    return b;
}

BiSeries BiSeries::operator*(const Gaussian& c) const
{
    BiSeries b(ttrunc_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        b.rows_[k] = rows_[k] * c;
    }
    return b;
}

BiSeries BiSeries::scale_rows_pow(const Gaussian& c,
                                  std::int64_t (*exp_of_row)(std::int64_t)) const
{
    BiSeries b(ttrunc_);
    for (std::int64_t k = 0; k < ttrunc_; ++k) {
        b.rows_[static_cast<std::size_t>(k)] =
            rows_[static_cast<std::size_t>(k)] * c.pow(exp_of_row(k));
    }
    return b;
}

BiSeries exp_positive_t(const BiSeries& a)
{
    const std::int64_t v = a.tval();
    if (v <= 0 && !(a.tval() == a.ttrunc())) {
        throw math_error("exp_positive_t: argument must have positive t-valuation");
    }
    BiSeries result = BiSeries::constant(QSeries::constant(Gaussian(1)), a.ttrunc());
    if (a.tval() == a.ttrunc()) { // zero argument
        return result;
    }
    BiSeries power = result;
    Rational kfact(1);
    for (std::int64_t k = 1; k * v < a.ttrunc(); ++k) {
        power = power * a;
        kfact *= k;
        result = result + power * Gaussian(Rational(1) / kfact);
    }
    // restore full t-truncation (powers shrink their own bound past need)
    BiSeries out(a.ttrunc());
    for (std::int64_t k = 0; k < a.ttrunc(); ++k) {
        if (k < result.ttrunc()) {
            out.set_row(k, result.row(k));
        }
    }
    return out;
}

} // namespace qmf
