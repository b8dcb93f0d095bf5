#pragma once

#include <cstdint>
#include <vector>

#include "qmf/qseries.hpp"

namespace qmf {

/// Truncated series in a second formal variable t whose coefficients are
/// QSeries. Row k is the coefficient of t^k; each row carries its own
/// q-truncation, and q_trunc() reports the minimum over rows.
class BiSeries {
  public:
    BiSeries() : ttrunc_(0) {}
    explicit BiSeries(std::int64_t ttrunc)
        : rows_(static_cast<std::size_t>(ttrunc)), ttrunc_(ttrunc)
    {
    }
    BiSeries(std::vector<QSeries> rows, std::int64_t ttrunc);

    static BiSeries constant(const QSeries& s, std::int64_t ttrunc);

    std::int64_t ttrunc() const { return ttrunc_; }
    /// t-valuation of the known part (ttrunc if zero).
    std::int64_t tval() const;

    const QSeries& row(std::int64_t k) const;
    void set_row(std::int64_t k, QSeries s);

    /// Minimum q-truncation over all rows.
    std::int64_t q_trunc() const;

    BiSeries operator-() const;
    friend BiSeries operator+(const BiSeries& a, const BiSeries& b);
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b);
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
    BiSeries operator*(const QSeries& s) const;
    BiSeries operator*(const Gaussian& c) const;

    /// Row k scales by c^f(k); used for formal substitutions t -> phase*t.
    BiSeries scale_rows_pow(const Gaussian& c, std::int64_t (*exp_of_row)(std::int64_t)) const;

  private:
    std::vector<QSeries> rows_;
    std::int64_t ttrunc_;
};

/// exp of a BiSeries with t-valuation >= 1.
BiSeries exp_positive_t(const BiSeries& a);

} // namespace qmf
