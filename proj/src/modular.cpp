#include "qmf/modular.hpp"

#include <algorithm>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

constexpr std::int64_t kG = QSeries::kGrading;

std::int64_t units_of_order(int nq)
{
    return kG * static_cast<std::int64_t>(nq);
}

// sigma_1(n): sum of divisors
long sigma1(long n)
{
    long s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            s += d;
            if (d != n / d) {
                s += n / d;
            }
        }
    }
    return s;
}

// sum of odd divisors
long sigma1_odd(long n)
{
    long s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            if (d % 2 == 1) {
                s += d;
            }
            const long e = n / d;
            if (e != d && e % 2 == 1) {
                s += e;
            }
        }
    }
    return s;
}

void check_registry(const QSeries& s, const std::string& name)
{
    for (const auto& entry : coefficient_registry()) {
        if (entry.name != name || entry.units >= s.trunc()) {
            continue;
        }
        if (s.coefficient(entry.units) != entry.expected) {
            throw internal_error("registered coefficient mismatch for " + name + " at q^("
                                 + std::to_string(entry.units) + "/24): computed "
                                 + s.coefficient(entry.units).str() + ", registered "
                                 + entry.expected.str()
                                 + (entry.note.empty() ? "" : (" [" + entry.note + "]")));
        }
    }
}

} // namespace

QSeries eisenstein_g2(int nq)
{
    if (nq < 1) {
        throw order_error("eisenstein_g2: order must be >= 1");
    }
    QSeries s = QSeries::zero(units_of_order(nq));
    s.set(0, Gaussian(Rational(-1, 24)));
    for (long n = 1; n < nq; ++n) {
        s.set(kG * n, Gaussian(Rational(sigma1(n))));
    }
    return s;
}

QSeries eta(int nq)
{
    // q^(1/24) * prod(1 - q^n): the shift keeps the product integer-graded
    QSeries prod = QSeries::constant(Gaussian(1), units_of_order(nq));
    for (long n = 1; n <= nq; ++n) {
        QSeries factor = QSeries::constant(Gaussian(1), units_of_order(nq));
        factor.set(kG * n, Gaussian(-1));
        prod = prod * factor;
    }
    return prod.shifted(1);
}

QSeries theta_null(ThetaKind kind, int nq)
{
    const std::int64_t trunc = units_of_order(nq);
    QSeries s = QSeries::zero(trunc);
    switch (kind) {
        case ThetaKind::Theta:
            throw math_error("theta_null: the odd theta vanishes at z = 0; "
                             "request a z-derivative instead");
        case ThetaKind::Theta1:
            // exponents (2n+1)^2/8 -> 3(2n+1)^2 units, coefficient 2
            for (long n = 0; 3 * (2 * n + 1) * (2 * n + 1) < trunc; ++n) {
                s.set(3 * (2 * n + 1) * (2 * n + 1), Gaussian(2));
            }
            break;
        case ThetaKind::Theta2:
        case ThetaKind::Theta3: {
            s.set(0, Gaussian(1));
            const bool alt = (kind == ThetaKind::Theta2);
            for (long n = 1; 12 * n * n < trunc; ++n) {
                s.set(12 * n * n, Gaussian((alt && n % 2 == 1) ? -2 : 2));
            }
            break;
        }
    }
    return s;
}

QSeries theta_z_derivative(ThetaKind kind, int k, int nq)
{
    const bool odd_kind = (kind == ThetaKind::Theta);
    if (odd_kind != (k % 2 == 1)) {
        throw math_error("theta_z_derivative: derivative order parity must match the kind");
    }
    const std::int64_t trunc = units_of_order(nq);
    QSeries s = QSeries::zero(trunc);
    // pi^{-k} d^k/dz^k e^{2 pi i (n+x0) z} |_0 = (2i)^k (n+x0)^k
    mpz_class two_k = 1;
    mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    const Gaussian tk = Gaussian::i_pow(k) * Gaussian(Rational(two_k));
    switch (kind) {
        case ThetaKind::Theta: {
            // -i * sum (-1)^n q^{(n+1/2)^2/2} (2i)^k (n+1/2)^k, paired n <-> -n-1
            const Gaussian pref = Gaussian(Rational(0), Rational(-1)) * tk * Gaussian(2);
            for (long n = 0; 3 * (2 * n + 1) * (2 * n + 1) < trunc; ++n) {
                const Rational half_arg(2 * n + 1, 2);
                Rational p(1);
                for (int e = 0; e < k; ++e) {
                    p *= half_arg;
                }
                const Gaussian c = pref * Gaussian(p) * Gaussian((n % 2 == 0) ? 1 : -1);
                s.set(3 * (2 * n + 1) * (2 * n + 1), c);
            }
            break;
        }
        case ThetaKind::Theta1: {
            const Gaussian pref = tk * Gaussian(2);
            for (long n = 0; 3 * (2 * n + 1) * (2 * n + 1) < trunc; ++n) {
                const Rational half_arg(2 * n + 1, 2);
                Rational p(1);
                for (int e = 0; e < k; ++e) {
                    p *= half_arg;
                }
                s.set(3 * (2 * n + 1) * (2 * n + 1), pref * Gaussian(p));
            }
            break;
        }
        case ThetaKind::Theta2:
        case ThetaKind::Theta3: {
            const bool alt = (kind == ThetaKind::Theta2);
            if (k == 0) {
                return theta_null(kind, nq);
            }
            for (long n = 1; 12 * n * n < trunc; ++n) {
                Rational p(1);
                for (int e = 0; e < k; ++e) {
                    p *= n;
                }
                Gaussian c = tk * Gaussian(2 * p);
                if (alt && n % 2 == 1) {
                    c = -c;
                }
                s.set(12 * n * n, c);
            }
            break;
        }
    }
    return s;
}

std::tuple<QSeries, QSeries, QSeries> half_period_values(int nq)
{
    const std::int64_t trunc = units_of_order(nq);
    QSeries e1 = QSeries::zero(trunc);
    QSeries e2 = QSeries::zero(trunc);
    QSeries e3 = QSeries::zero(trunc);
    e1.set(0, Gaussian(Rational(-1, 6)));
    e2.set(0, Gaussian(Rational(1, 12)));
    e3.set(0, Gaussian(Rational(1, 12)));
    for (long n = 1; 12 * n < trunc; ++n) {
        const long so = sigma1_odd(n);
        if (24 * n < trunc) {
            e1.set(24 * n, Gaussian(Rational(-4 * so)));
        }
        e2.set(12 * n, Gaussian(Rational(2 * so)));
        e3.set(12 * n, Gaussian(Rational((n % 2 == 0) ? 2 * so : -2 * so)));
    }

    // Independent theta-quartic representation; the two must agree exactly.
    const QSeries t1 = theta_null(ThetaKind::Theta1, nq);
    const QSeries t2 = theta_null(ThetaKind::Theta2, nq);
    const QSeries t3 = theta_null(ThetaKind::Theta3, nq);
    const Gaussian c12(Rational(1, 12));
    const QSeries q1 = t1.pow(4);
    const QSeries q2 = t2.pow(4);
    const QSeries q3 = t3.pow(4);
    const QSeries e1q = (q2 + q3) * (-c12);
    const QSeries e2q = (q1 + q3) * c12;
    const QSeries e3q = (q1 - q2) * (-c12);
    const std::int64_t bound = std::min(trunc, e1q.trunc());
    if (QSeries::first_mismatch(e1, e1q, bound) || QSeries::first_mismatch(e2, e2q, bound)
        || QSeries::first_mismatch(e3, e3q, bound)) {
        throw internal_error("half-period values: divisor-sum and theta-quartic "
                             "representations disagree");
    }
    return {e1, e2, e3};
}

ElectricTriple electric_triple(int nq)
{
    const QSeries t2 = theta_null(ThetaKind::Theta2, nq);
    const QSeries t3 = theta_null(ThetaKind::Theta3, nq);
    const auto [e1, e2, e3] = half_period_values(nq);
    const QSeries h = (t2 * t3) * Gaussian(Rational(1, 2));
    const QSeries inv_h2 = inverse(h * h);
    const QSeries v = (e1 * Gaussian(-3)) * inv_h2;
    const QSeries g2 = eisenstein_g2(nq);
    const QSeries t = -(g2 + e1 * Gaussian(Rational(1, 2))) * inv_h2;
    check_registry(h, "h");
    check_registry(v, "V");
    check_registry(t, "T");
    return {h, v, t};
}

MagneticTriple magnetic_triple(int nq)
{
    const QSeries t1 = theta_null(ThetaKind::Theta1, nq);
    const QSeries t2 = theta_null(ThetaKind::Theta2, nq);
    const auto [e1, e2, e3] = half_period_values(nq);
    const QSeries phi = (t1 * t2) * Gaussian(Rational(1, 2));
    const QSeries f2 = (phi * phi) * (-Gaussian::i());
    const QSeries inv_f2 = inverse(f2);
    const QSeries u = (e3 * Gaussian(-3)) * inv_f2;
    const QSeries g = (eisenstein_g2(nq) + e3 * Gaussian(Rational(1, 2))) * inv_f2;
    return {f2, u, g, phi};
}

QSeries theta1_tilde(int nq)
{
    return theta_null(ThetaKind::Theta1, nq).shifted(-3);
}

BiSeries theta_t_expansion(ThetaKind kind, const QSeries& g, int nt, int nq)
{
    if (g.is_zero()) {
        throw math_error("theta_t_expansion: g must be invertible");
    }
    const std::int64_t trunc = units_of_order(nq);
    const QSeries ginv = inverse(g);
    BiSeries out(nt);

    const bool half_char = (kind == ThetaKind::Theta || kind == ThetaKind::Theta1);
    const bool alternating = (kind == ThetaKind::Theta || kind == ThetaKind::Theta2);
    const bool odd_pairing = (kind == ThetaKind::Theta);

    // Lattice sums L_k = sum_n w_n * n_arg^k * q^(exp(n)); rows combine them
    // with inverse powers of (2g) resp. g.
    QSeries ginv_pow = QSeries::constant(Gaussian(1));
    for (std::int64_t k = 0; k < nt; ++k) {
        if (k > 0) {
            ginv_pow = ginv_pow * ginv;
        }
        const bool row_nonzero = odd_pairing ? (k % 2 == 1) : (k % 2 == 0);
        if (!row_nonzero) {
            out.set_row(k, QSeries::zero(trunc));
            continue;
        }
        QSeries lattice = QSeries::zero(trunc);
        if (half_char) {
            // arguments (2n+1)/2, weights q^{3(2n+1)^2} units
            for (long n = 0; 3 * (2 * n + 1) * (2 * n + 1) < trunc; ++n) {
                Rational arg_pow(1);
                for (std::int64_t e = 0; e < k; ++e) {
                    arg_pow *= Rational(2 * n + 1, 2);
                }
                Gaussian c(2 * arg_pow);
                if (alternating && n % 2 == 1) {
                    c = -c;
                }
                lattice.set(3 * (2 * n + 1) * (2 * n + 1), c);
            }
        } else {
            if (k == 0) {
                lattice.set(0, Gaussian(1));
            }
            for (long n = 1; 12 * n * n < trunc; ++n) {
                Rational arg_pow(1);
                for (std::int64_t e = 0; e < k; ++e) {
                    arg_pow *= n;
                }
                Gaussian c(2 * arg_pow);
                if (alternating && n % 2 == 1) {
                    c = -c;
                }
                lattice.set(12 * n * n, c);
            }
        }
        const Gaussian inv_fact(Rational(1) / factorial(static_cast<unsigned long>(k)));
        out.set_row(k, (lattice * ginv_pow) * inv_fact);
    }
    return out;
}

ModulusPair modulus_series(int nq)
{
    const QSeries t1 = theta_null(ThetaKind::Theta1, nq);
    const QSeries t3 = theta_null(ThetaKind::Theta3, nq);
    const QSeries k2 = t1.pow(4) * inverse(t3.pow(4));
    const QSeries t1d = dilate(theta_null(ThetaKind::Theta1, nq), 2);
    const QSeries t2d = dilate(theta_null(ThetaKind::Theta2, nq), 2);
    const QSeries m = -(t1d.pow(4) * inverse(t2d.pow(4)));
    return {k2, m};
}

QSeries a_series(int nq)
{
    const QSeries g2 = eisenstein_g2(nq);
    const auto [e1, e2, e3] = half_period_values(nq);
    const QSeries t2 = theta_null(ThetaKind::Theta2, nq);
    const QSeries t3 = theta_null(ThetaKind::Theta3, nq);
    const QSeries h = (t2 * t3) * Gaussian(Rational(1, 2));
    QSeries a = (g2 * Gaussian(4) - e1) * inverse(h);
    check_registry(a, "a");
    return a;
}

QSeries conjectural_fK(long chi, long sigma, const Rational& sw, int nq)
{
    if ((chi + sigma) % 4 != 0) {
        throw math_error("conjectural_fK: (chi + sigma)/4 must be an integer");
    }
    if (sw == 0) {
        return QSeries::zero(units_of_order(nq));
    }
    const long pow_exp = (chi + sigma) / 4;
    // Laurent depth forces extra working order for negative powers.
    const int nq_work = nq + static_cast<int>(std::max<long>(0, -pow_exp))
                        + static_cast<int>(std::max<long>(3 * (2 * chi + 3 * sigma) / 24 + 2,
                                                          2));
    const QSeries t1 = theta_null(ThetaKind::Theta1, nq_work);
    const auto [h, v, t] = electric_triple(nq_work);
    const QSeries a = a_series(nq_work);
    QSeries t1pow;
    if (8 + sigma >= 0) {
        t1pow = t1.pow(8 + sigma);
    } else {
        t1pow = inverse(t1).pow(-(8 + sigma));
    }
    const QSeries base = (a * Gaussian(2)) * inverse(h * h);
    QSeries base_pow;
    if (pow_exp >= 0) {
        base_pow = base.pow(pow_exp);
    } else {
        base_pow = inverse(base).pow(-pow_exp);
    }
    QSeries f = t1pow * inverse(a * h) * base_pow * Gaussian(sw / 16);
    f = f.shifted(-3 * (2 * chi + 3 * sigma));
    return f;
}

QSeries named_form(const std::string& name, int nq)
{
    if (name == "h") {
        return electric_triple(nq).h;
    }
    if (name == "V") {
        return electric_triple(nq).v;
    }
    if (name == "T") {
        return electric_triple(nq).t;
    }
    if (name == "G2") {
        return eisenstein_g2(nq);
    }
    if (name == "eta") {
        return eta(nq);
    }
    if (name == "e1") {
        return std::get<0>(half_period_values(nq));
    }
    if (name == "e2") {
        return std::get<1>(half_period_values(nq));
    }
    if (name == "e3") {
        return std::get<2>(half_period_values(nq));
    }
    if (name == "theta1") {
        return theta_null(ThetaKind::Theta1, nq);
    }
    if (name == "theta2") {
        return theta_null(ThetaKind::Theta2, nq);
    }
    if (name == "theta3") {
        return theta_null(ThetaKind::Theta3, nq);
    }
    if (name == "a") {
        return a_series(nq);
    }
    if (name == "m") {
        return modulus_series(nq).m;
    }
    if (name == "k2") {
        return modulus_series(nq).k2;
    }
    if (name == "f2") {
        return magnetic_triple(nq).f2;
    }
    if (name == "U") {
        return magnetic_triple(nq).u;
    }
    if (name == "G") {
        return magnetic_triple(nq).g;
    }
    throw math_error("unknown series name: " + name);
}

const std::vector<std::string>& named_form_list()
{
    static const std::vector<std::string> names = {
        "h",  "V", "T",  "G2", "eta", "e1", "e2", "e3", "theta1",
        "theta2", "theta3", "a", "m", "k2", "f2", "U", "G"};
    return names;
}

const std::vector<RegistryEntry>& coefficient_registry()
{
    static const std::vector<RegistryEntry> registry = {
        {"h", 0, Gaussian(Rational(1, 2)), ""},
        {"h", 24, Gaussian(-2), ""},
        {"h", 48, Gaussian(2), ""},
        {"V", 0, Gaussian(2), ""},
        {"V", 24, Gaussian(64), ""},
        {"V", 48, Gaussian(512), ""},
        {"T", 0, Gaussian(Rational(1, 2)), ""},
        {"T", 24, Gaussian(8), ""},
        {"T", 48, Gaussian(48),
         "q^2 coefficient fixed to 48 by two independent derivations (definition and "
         "elliptic-integral chain); the alternative printed value 30 found in the "
         "literature satisfies neither route — see README, Notes"},
        {"a", 24, Gaussian(16), ""},
        {"G2", 0, Gaussian(Rational(-1, 24)), ""},
        {"e1", 0, Gaussian(Rational(-1, 6)), ""},
        {"e1", 24, Gaussian(-4), ""},
    };
    return registry;
}

} // namespace qmf
