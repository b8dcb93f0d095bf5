#include "qmf/elliptic.hpp"

#include "qmf/errors.hpp"
#include "qmf/modular.hpp"
#include "qmf/qseries.hpp"

namespace qmf {

namespace {

// c_m = (2m-1)!!/(2m)!! as a rational, iteratively.
Rational half_binomial(std::int64_t m, Rational& state)
{
    // caller iterates m = 1, 2, ...: state carries c_m
    state *= Rational(2 * m - 1, 2 * m);
    return state;
}

} // namespace

UniSeries elliptic_K_series(std::int64_t n)
{
    UniSeries s(n);
    const Gaussian half(Rational(1, 2));
    s.set(0, half);
    Rational c(1);
    for (std::int64_t m = 1; m < n; ++m) {
        const Rational cm = half_binomial(m, c);
        s.set(m, Gaussian(cm * cm) * half);
    }
    return s;
}

UniSeries elliptic_E_series(std::int64_t n)
{
    UniSeries s(n);
    const Gaussian half(Rational(1, 2));
    s.set(0, half);
    Rational c(1);
    for (std::int64_t m = 1; m < n; ++m) {
        const Rational cm = half_binomial(m, c);
        s.set(m, Gaussian(cm * cm * Rational(-1, 2 * m - 1)) * half);
    }
    return s;
}

ABPair ab_from_elliptic(std::int64_t n)
{
    const Gaussian quarter(Rational(-1, 4));
    const UniSeries k_sub = elliptic_K_series(n).scale_var(quarter);
    const UniSeries e_sub = elliptic_E_series(n).scale_var(quarter);
    const UniSeries a = inverse(k_sub * Gaussian(2));
    const UniSeries b = (e_sub * Gaussian(2)) * inverse(k_sub) - UniSeries::constant(Gaussian(1), n);
    return {a.truncated(n), b.truncated(n), ABRoute::Elliptic};
}

ABPair ab_from_qseries(std::int64_t n)
{
    const int nq = static_cast<int>(n) + 1;
    const ElectricTriple et = electric_triple(nq);
    const QSeries u_of_q = et.v - QSeries::constant(Gaussian(2));
    const UniSeries q_of_u = revert(u_of_q);
    const UniSeries n_series = to_uniseries(inverse(et.h * Gaussian(2)));
    const UniSeries m_series = to_uniseries(et.t * Gaussian(2));
    const UniSeries a = compose(n_series, q_of_u);
    const UniSeries b = compose(m_series, q_of_u);
    return {a.truncated(n), b.truncated(n), ABRoute::Reversion};
}

} // namespace qmf
