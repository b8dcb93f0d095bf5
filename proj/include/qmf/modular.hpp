#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "qmf/biseries.hpp"
#include "qmf/qseries.hpp"

namespace qmf {

/// The four Jacobi theta lattice sums. Theta is the odd one; Theta1 carries
/// the q^(1/8) characteristic, Theta2 alternates signs, Theta3 is plain.
enum class ThetaKind { Theta, Theta1, Theta2, Theta3 };

/// Quasi-modular Eisenstein series G2 = -1/24 + sum sigma_1(n) q^n,
/// exact to q-order nq.
QSeries eisenstein_g2(int nq);

/// Dedekind eta q^(1/24) * prod_{n>0} (1 - q^n), exact to q-order nq.
QSeries eta(int nq);

/// Theta null value theta_i(tau, 0). The odd kind vanishes identically at
/// z = 0 and is rejected; ask for its z-derivatives instead.
QSeries theta_null(ThetaKind kind, int nq);

/// Pi-normalized z-derivative pi^(-k) * d^k/dz^k theta_kind(tau, z) at z=0.
/// k must match the kind's parity (odd for Theta, even otherwise); all
/// returned series are rational.
QSeries theta_z_derivative(ThetaKind kind, int k, int nq);

/// Half-period values (e1, e2, e3) of the Weierstrass function in the
/// -1/(4 pi^2) normalization. Both classical representations (odd-divisor
/// sums and theta quartics) are computed and must agree; the divisor form is
/// returned. Disagreement throws internal_error.
std::tuple<QSeries, QSeries, QSeries> half_period_values(int nq);

/// Electric frame: h = theta2*theta3/2, V = -3 e1 / h^2,
/// T = -(G2 + e1/2) / h^2. Printed low-order coefficients are asserted
/// against the expected-value registry (T's q^2 entry is 48; see the
/// registry note).
struct ElectricTriple {
    QSeries h;
    QSeries v;
    QSeries t;
};
ElectricTriple electric_triple(int nq);

/// Magnetic frame. The quarter-phase factor of f itself is never
/// materialized: phi = theta1*theta2/2 and f2 = -i*phi^2 carry everything,
/// U = -3 e3 / f2, G = (G2 + e3/2) / f2.
struct MagneticTriple {
    QSeries f2;
    QSeries u;
    QSeries g;
    QSeries phi;
};
MagneticTriple magnetic_triple(int nq);

/// theta1 / q^(1/8): the unit power series 2 + 2q + 2q^3 + ...
QSeries theta1_tilde(int nq);

/// Two-variable theta lattice sum specialized at z = t/(2 pi i g), organized
/// by the n <-> -n-1 (resp. n <-> -n) pairing so that every t-coefficient is
/// a single QSeries:
///   Theta1: sum_n q^(1/8 + n(n+1)/2) * (e^((2n+1)t/2g) + e^(-(2n+1)t/2g))
///   Theta : sum_n (-1)^n q^(1/8 + n(n+1)/2) * (e^((2n+1)t/2g) - e^(-..)),
///           i.e. i * theta(tau, t/(2 pi i g)) — the definition's -i prefactor
///           is absorbed so rows stay Gaussian-rational
///   Theta3: 1 + sum_{n>=1} q^(n^2/2) * (e^(nt/g) + e^(-nt/g))
///   Theta2: same with (-1)^n
/// g must be invertible (nonzero leading coefficient).
BiSeries theta_t_expansion(ThetaKind kind, const QSeries& g, int nt, int nq);

/// k^2 = theta1^4/theta3^4 and m = k^2 at 2*tau + 1, realized exactly as
/// -dilate(theta1,2)^4 / dilate(theta2,2)^4 (the half-integer characteristic
/// contributes the global sign; theta3(2tau+1) = theta2(2tau)).
struct ModulusPair {
    QSeries k2;
    QSeries m;
};
ModulusPair modulus_series(int nq);

/// a = (4 G2 - e1) / h = 16q + ...
QSeries a_series(int nq);

/// Conjectural basic-class series
///   q^(-(2chi+3sigma)/8) * (sw/16) * theta1^(8+sigma) / (a h) * (2a/h^2)^((chi+sigma)/4).
/// Requires (chi + sigma)/4 integral; throws math_error otherwise.
QSeries conjectural_fK(long chi, long sigma, const Rational& sw, int nq);

/// Named lookup for the CLI: h, V, T, G2, eta, e1, e2, e3, theta1, theta2,
/// theta3, a, m, k2, f2, U, G. Throws math_error for unknown names.
QSeries named_form(const std::string& name, int nq);
const std::vector<std::string>& named_form_list();

/// Expected-coefficient registry entry: constructors assert these
/// registered low-order values at build time.
struct RegistryEntry {
    std::string name;
    std::int64_t units; // exponent in 1/24 units
    Gaussian expected;
    std::string note; // nonempty marks an erratum-style annotation
};
const std::vector<RegistryEntry>& coefficient_registry();

} // namespace qmf
