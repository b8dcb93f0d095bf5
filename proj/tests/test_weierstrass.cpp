#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmf/errors.hpp"
#include "qmf/modular.hpp"
#include "qmf/weierstrass.hpp"

#include "oracles.hpp"

using namespace qmf;

namespace {

bool xseries_agree(const XSeries& a, const XSeries& b, std::int64_t rows)
{
    for (std::int64_t k = 0; k < rows; ++k) {
        if (!(a.row(k) == b.row(k))) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("curve invariants")
{
    const XPoly g2 = blowup_g2();
    const XPoly g3 = blowup_g3();
    CHECK(g2.coeff(0) == Rational(-4));
    CHECK(g2.coeff(2) == Rational(4, 3));
    CHECK(g3.coeff(1) == Rational(-4, 3));
    CHECK(g3.coeff(3) == Rational(8, 27));
}

TEST_CASE("sigma against the first-order ODE oracle")
{
    const XPoly g2 = blowup_g2();
    const XPoly g3 = blowup_g3();
    const XSeries sigma = sigma_series(g2, g3, 24);
    CHECK(sigma.row(1) == XPoly(1));
    CHECK(sigma.row(3).is_zero());
    CHECK(sigma.row(5) == g2 * Rational(-1, 240));

    // wp recovered from sigma must match the oracle solved straight from
    // (wp')^2 = 4 wp^3 - g2 wp - g3
    const XSeries wp = wp_from_sigma(sigma);
    const XSeries oracle = oracles::wp_t2_from_first_order_ode(g2, g3, 20);
    CHECK(xseries_agree(wp, oracle, std::min(wp.ttrunc(), oracle.ttrunc())));
    CHECK(wp.row(0) == XPoly(1));
    CHECK(wp.row(4) == g2 * Rational(1, 20));
    CHECK(wp.row(6) == g3 * Rational(1, 28));

    // sigma re-derived from the oracle wp by double integration
    XSeries logu(19);
    for (std::int64_t k = 2; 2 * k < 19; ++k) {
        logu.set_row(2 * k, oracle.row(2 * k) * Rational(-1, 2 * k * (2 * k - 1)));
    }
    const XSeries sigma_oracle = exp_positive_t(logu).shifted(1);
    CHECK(xseries_agree(sigma, sigma_oracle,
                        std::min(sigma.ttrunc(), sigma_oracle.ttrunc())));

    CHECK_THROWS_AS(sigma_series(g2, g3, 4), order_error);
}

TEST_CASE("sigma works for generic curve coefficients")
{
    // rational (x-free) invariants exercise the same code path
    const XPoly g2(Rational(7, 2));
    const XPoly g3(Rational(-5, 3));
    const XSeries sigma = sigma_series(g2, g3, 16);
    const XSeries wp = wp_from_sigma(sigma);
    const XSeries oracle = oracles::wp_t2_from_first_order_ode(g2, g3, 12);
    CHECK(xseries_agree(wp, oracle, std::min(wp.ttrunc(), oracle.ttrunc())));
}

TEST_CASE("wp_from_sigma validates its input")
{
    XSeries even(6);
    even.set_row(0, XPoly(1));
    CHECK_THROWS_AS(wp_from_sigma(even), math_error);
    XSeries wrong_unit(6);
    wrong_unit.set_row(1, XPoly(2));
    CHECK_THROWS_AS(wp_from_sigma(wrong_unit), math_error);
}

TEST_CASE("sigma3 branch and defining square")
{
    const XSeries sigma = sigma_series(blowup_g2(), blowup_g3(), 18);
    const XSeries wp = wp_from_sigma(sigma);
    const XSeries s3 = sigma3_series(sigma, wp);
    CHECK(s3.row(0) == XPoly(1));
    CHECK(s3.row(2) == XPoly::x() * Rational(1, 6));

    // defining identity sigma3^2 = (sigma/t)^2 (t^2 wp + (x/3) t^2)
    XSeries arg = wp;
    arg.set_row(2, arg.row(2) + XPoly::x() * Rational(1, 3));
    const XSeries lhs = s3 * s3;
    const XSeries u = sigma.shifted(-1);
    const XSeries rhs = u * u * arg;
    CHECK(xseries_agree(lhs, rhs, std::min(lhs.ttrunc(), rhs.ttrunc())));

    // branch root and diagnostics
    const XPoly root = sigma3_branch_root();
    const XPoly res = root * root * root * Rational(4) - blowup_g2() * root - blowup_g3();
    CHECK(res.is_zero());
    const auto [b, c] = sigma3_other_branch_quadratic();
    CHECK(b == XPoly::x() * Rational(-1, 3));
    CHECK(c.coeff(0) == Rational(1));
    CHECK(c.coeff(2) == Rational(-2, 9));
}

TEST_CASE("blow-up functions")
{
    const XSeries b = blowup_B(10);
    CHECK(b.row(0) == XPoly(1));
    CHECK(b.row(2).is_zero());
    CHECK(b.row(4) == XPoly(Rational(-1, 12)));
    const XSeries s = blowup_S(10);
    CHECK(s.row(0).is_zero());
    CHECK(s.row(1) == XPoly(1));
    CHECK(s.row(3) == XPoly::x() * Rational(-1, 6));
    // odd/even structure
    for (int k = 0; k < 10; k += 2) {
        CHECK(s.row(k).is_zero());
    }
    for (int k = 1; k < 10; k += 2) {
        CHECK(b.row(k).is_zero());
    }
}

TEST_CASE("evaluation at q-series arguments")
{
    const int nq = 6, nt = 9;
    const ElectricTriple et = electric_triple(nq);
    const BiSeries s_at_v = eval_at(blowup_S(nt), et.v);
    CHECK(QSeries::agree_to(s_at_v.row(1), QSeries::constant(Gaussian(1)),
                            std::min<std::int64_t>(s_at_v.row(1).trunc(), 24 * nq)));
    const BiSeries b_at_v = eval_at(blowup_B(nt), et.v);
    CHECK(b_at_v.row(2).is_zero());

    // the full electric identity at modest orders (the suite runs it large)
    BiSeries arg(nt);
    arg.set_row(2, -et.t);
    const BiSeries gauge = exp_positive_t(arg);
    const QSeries inv_t1 = inverse(theta_null(ThetaKind::Theta1, nq));
    const BiSeries rhs = gauge * theta_t_expansion(ThetaKind::Theta1, et.h, nt, nq) * inv_t1;
    for (int k = 0; k < nt; ++k) {
        const std::int64_t bound = 24 * (nq - 2);
        CHECK(QSeries::agree_to(b_at_v.row(k), rhs.row(k), bound));
    }
}
