#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmf/errors.hpp"
#include "qmf/modular.hpp"

#include "oracles.hpp"

using namespace qmf;

TEST_CASE("eisenstein series")
{
    const QSeries g2 = eisenstein_g2(6);
    CHECK(g2.coefficient(0) == Gaussian(Rational(-1, 24)));
    CHECK(g2.coefficient_q(3) == Gaussian(4)); // 1 + 3
    CHECK(g2.coefficient_q(4) == Gaussian(7)); // 1 + 2 + 4
    CHECK_THROWS_AS(eisenstein_g2(0), order_error);
}

TEST_CASE("eta function")
{
    const QSeries e = eta(8);
    CHECK(e.val() == 1);
    CHECK(e.coefficient(1) == Gaussian(1));
    CHECK(e.coefficient(25) == Gaussian(-1)); // first product factor

    // theta'(tau,0), pi-normalized: 2 eta^3 = theta1 theta2 theta3
    const QSeries lhs = e.pow(3) * Gaussian(2);
    const QSeries rhs = theta_null(ThetaKind::Theta1, 8) * theta_null(ThetaKind::Theta2, 8)
                        * theta_null(ThetaKind::Theta3, 8);
    CHECK(QSeries::agree_to(lhs, rhs, std::min(lhs.trunc(), rhs.trunc())));
}

TEST_CASE("theta null values against the brute-force lattice sums")
{
    for (const ThetaKind kind :
         {ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3}) {
        const QSeries fast = theta_null(kind, 12);
        const QSeries brute = oracles::theta_null_brute(kind, 12);
        CHECK(QSeries::agree_to(fast, brute, std::min(fast.trunc(), brute.trunc())));
    }
    // theta1~ = 2 + 2q + 2q^3 + ...
    const QSeries t1t = theta1_tilde(5);
    CHECK(t1t.coefficient_q(0) == Gaussian(2));
    CHECK(t1t.coefficient_q(1) == Gaussian(2));
    CHECK(t1t.coefficient_q(2) == Gaussian(0));
    CHECK(t1t.coefficient_q(3) == Gaussian(2));

    // theta3 by hand from n = 0, +-1, +-2, +-3
    const QSeries t3 = theta_null(ThetaKind::Theta3, 5);
    CHECK(t3.coefficient(0) == Gaussian(1));
    CHECK(t3.coefficient(12) == Gaussian(2));
    CHECK(t3.coefficient(48) == Gaussian(2));
    CHECK(t3.coefficient(108) == Gaussian(2));
    const QSeries t2 = theta_null(ThetaKind::Theta2, 5);
    CHECK(t2.coefficient(12) == Gaussian(-2));
    CHECK(t2.coefficient(108) == Gaussian(-2));

    CHECK_THROWS_AS(theta_null(ThetaKind::Theta, 5), math_error);
}

TEST_CASE("theta z-derivatives")
{
    CHECK_THROWS_AS(theta_z_derivative(ThetaKind::Theta, 2, 5), math_error);
    CHECK_THROWS_AS(theta_z_derivative(ThetaKind::Theta1, 1, 5), math_error);

    const int nq = 10;
    const QSeries d1 = theta_z_derivative(ThetaKind::Theta, 1, nq);
    const QSeries triple = theta_null(ThetaKind::Theta1, nq)
                           * theta_null(ThetaKind::Theta2, nq)
                           * theta_null(ThetaKind::Theta3, nq);
    CHECK(QSeries::agree_to(d1, triple, std::min(d1.trunc(), triple.trunc())));

    const QSeries d3 = theta_z_derivative(ThetaKind::Theta, 3, nq);
    const QSeries rhs = eisenstein_g2(nq) * Gaussian(24) * d1;
    CHECK(QSeries::agree_to(d3, rhs, std::min(d3.trunc(), rhs.trunc())));

    const auto [e1, e2, e3] = half_period_values(nq);
    const QSeries e[3] = {e1, e2, e3};
    const ThetaKind kinds[3] = {ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3};
    for (int i = 0; i < 3; ++i) {
        const QSeries lhs = theta_z_derivative(kinds[i], 2, nq);
        const QSeries want =
            (eisenstein_g2(nq) * Gaussian(8) + e[i] * Gaussian(4)) * theta_null(kinds[i], nq);
        CHECK(QSeries::agree_to(lhs, want, std::min(lhs.trunc(), want.trunc())));
    }
}

TEST_CASE("half-period values")
{
    const auto [e1, e2, e3] = half_period_values(6);
    CHECK(e1.coefficient(0) == Gaussian(Rational(-1, 6)));
    CHECK(e1.coefficient_q(1) == Gaussian(-4));
    CHECK(e1.coefficient_q(2) == Gaussian(-4));
    CHECK(e1.coefficient_q(3) == Gaussian(-16));
    const QSeries sum = e1 + e2 + e3;
    CHECK(sum.is_zero());
    const QSeries t3 = theta_null(ThetaKind::Theta3, 6);
    CHECK(QSeries::agree_to(e2 - e1, t3.pow(4) * Gaussian(Rational(1, 4)), e1.trunc()));
}

TEST_CASE("electric frame")
{
    const ElectricTriple et = electric_triple(5);
    CHECK(et.h.coefficient(0) == Gaussian(Rational(1, 2)));
    CHECK(et.h.coefficient_q(1) == Gaussian(-2));
    CHECK(et.h.coefficient_q(2) == Gaussian(2));
    CHECK(et.v.coefficient(0) == Gaussian(2));
    CHECK(et.v.coefficient_q(1) == Gaussian(64));
    CHECK(et.v.coefficient_q(2) == Gaussian(512));
    CHECK(et.v.coefficient_q(3) == Gaussian(2816));
    CHECK(et.t.coefficient(0) == Gaussian(Rational(1, 2)));
    CHECK(et.t.coefficient_q(1) == Gaussian(8));
    // pinned by the two-route agreement; see the registry note
    CHECK(et.t.coefficient_q(2) == Gaussian(48));
}

TEST_CASE("magnetic frame")
{
    const MagneticTriple mt = magnetic_triple(5);
    CHECK(mt.f2.val() == 6);
    CHECK(mt.f2.coefficient(6) == -Gaussian::i());
    CHECK(mt.u.val() == -6);
    CHECK(mt.u.coefficient(-6) == Gaussian(Rational(0), Rational(-1, 4)));
    const auto [e1, e2, e3] = half_period_values(5);
    const QSeries back = mt.g * mt.f2;
    const QSeries want = eisenstein_g2(5) + e3 * Gaussian(Rational(1, 2));
    CHECK(QSeries::agree_to(back, want, std::min(back.trunc(), want.trunc())));
}

TEST_CASE("two-variable theta expansions against the brute-force oracle")
{
    const int nq = 6, nt = 7;
    const ElectricTriple et = electric_triple(nq);
    for (const ThetaKind kind : {ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2,
                                 ThetaKind::Theta3}) {
        const BiSeries fast = theta_t_expansion(kind, et.h, nt, nq);
        const BiSeries brute = oracles::theta_t_brute(kind, et.h, nt, nq);
        for (int k = 0; k < nt; ++k) {
            const std::int64_t bound =
                std::min(fast.row(k).trunc(), brute.row(k).trunc());
            CHECK(QSeries::agree_to(fast.row(k), brute.row(k), bound));
        }
    }
    // Laurent-valued g (the magnetic phi has valuation q^(1/8))
    const MagneticTriple mt = magnetic_triple(nq);
    for (const ThetaKind kind : {ThetaKind::Theta, ThetaKind::Theta3}) {
        const BiSeries fast = theta_t_expansion(kind, mt.phi, 5, nq);
        const BiSeries brute = oracles::theta_t_brute(kind, mt.phi, 5, nq);
        for (int k = 0; k < 5; ++k) {
            const std::int64_t bound =
                std::min(fast.row(k).trunc(), brute.row(k).trunc());
            CHECK(QSeries::agree_to(fast.row(k), brute.row(k), bound));
        }
    }

    // t^0 row of the Theta1 expansion is theta1 itself
    const BiSeries b = theta_t_expansion(ThetaKind::Theta1, et.h, 3, nq);
    CHECK(QSeries::agree_to(b.row(0), theta_null(ThetaKind::Theta1, nq),
                            std::min(b.row(0).trunc(), 24L * nq)));
    // the odd kind is odd in t
    const BiSeries s = theta_t_expansion(ThetaKind::Theta, et.h, 5, nq);
    CHECK(s.row(0).is_zero());
    CHECK(s.row(2).is_zero());
    CHECK_FALSE(s.row(1).is_zero());

    CHECK_THROWS_AS(theta_t_expansion(ThetaKind::Theta1, QSeries::zero(48), 3, 4),
                    math_error);
}

TEST_CASE("modulus series")
{
    const ModulusPair mp = modulus_series(6);
    CHECK(mp.m.coefficient_q(1) == Gaussian(-16));
    CHECK(mp.m.coefficient_q(2) == Gaussian(-128));
    CHECK(mp.m.coefficient_q(3) == Gaussian(-704));
    const ElectricTriple et = electric_triple(6);
    const QSeries v_back = mp.m * Gaussian(-4) + QSeries::constant(Gaussian(2), mp.m.trunc());
    CHECK(QSeries::agree_to(v_back, et.v, std::min(v_back.trunc(), et.v.trunc())));
    CHECK(mp.k2.val() == 12);
    CHECK(mp.k2.coefficient(12) == Gaussian(16));
}

TEST_CASE("a-series and the conjectural basic-class series")
{
    const QSeries a = a_series(5);
    CHECK(a.val() == 24);
    CHECK(a.coefficient_q(1) == Gaussian(16));

    // leading coefficient 2^{1+(7chi+11sigma)/4} * sw
    const QSeries k3 = conjectural_fK(24, -16, Rational(1), 4);
    CHECK(k3.val() == 0);
    CHECK(k3.coefficient(0) == Gaussian(Rational(1, 2)));

    const QSeries f = conjectural_fK(4, 0, Rational(3, 7), 4);
    CHECK(f.coefficient(0) == Gaussian(Rational(3 * 256, 7)));

    CHECK(conjectural_fK(4, 0, Rational(0), 4).is_zero());
    CHECK_THROWS_AS(conjectural_fK(5, 0, Rational(1), 4), math_error);

    // the requested order is actually delivered across the exponent grid
    const long grid[][2] = {{4, 0}, {12, -8}, {24, -16}, {8, -4}, {0, 0}, {-4, 0}, {-8, 4}};
    for (const auto& cs : grid) {
        const QSeries g = conjectural_fK(cs[0], cs[1], Rational(1), 6);
        CHECK(g.trunc() >= 24 * 6);
    }
}

TEST_CASE("named form lookup")
{
    for (const auto& name : named_form_list()) {
        const QSeries s = named_form(name, 3);
        CHECK(s.trunc() > 0);
    }
    CHECK_THROWS_AS(named_form("nosuch", 3), math_error);
}
