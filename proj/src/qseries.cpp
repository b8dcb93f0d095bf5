#include "qmf/qseries.hpp"

#include <sstream>
#include <vector>

#include "qmf/errors.hpp"
#include "qmf/uniseries.hpp"

namespace qmf {

namespace {

constexpr std::int64_t kExact = QSeries::kExact;

// Truncation bookkeeping: kExact is absorbing under + and *.
std::int64_t sat_add(std::int64_t a, std::int64_t b)
{
    if (a == kExact || b == kExact) {
        return kExact;
    }
    return a + b;
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b)
{
    if (a == kExact || b == kExact) {
        return kExact;
    }
    const __int128 p = static_cast<__int128>(a) * b;
    if (p >= static_cast<__int128>(kExact)) {
        return kExact;
    }
    return static_cast<std::int64_t>(p);
}

const Gaussian kZero{};

} // namespace

QSeries QSeries::zero(std::int64_t trunc)
{
    QSeries s;
    s.trunc_ = trunc;
    return s;
}

QSeries QSeries::constant(const Gaussian& c, std::int64_t trunc)
{
    return monomial(c, 0, trunc);
}

QSeries QSeries::monomial(const Gaussian& c, std::int64_t units, std::int64_t trunc)
{
    QSeries s;
    s.trunc_ = trunc;
    s.set(units, c);
    return s;
}

void QSeries::set(std::int64_t j, const Gaussian& c)
{
    if (j >= trunc_) {
        return;
    }
    if (c.is_zero()) {
        coeffs_.erase(j);
    } else {
        coeffs_[j] = c;
    }
}

const Gaussian& QSeries::coefficient(std::int64_t j) const
{
    if (j >= trunc_) {
        throw order_error("coefficient beyond truncation: " + std::to_string(j) + "/24 >= "
                          + std::to_string(trunc_) + "/24");
    }
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? kZero : it->second;
}

bool QSeries::is_real() const
{
    for (const auto& [j, c] : coeffs_) {
        if (!c.is_real()) {
            return false;
        }
    }
    return true;
}

bool QSeries::integer_graded() const
{
    for (const auto& [j, c] : coeffs_) {
        if (j % kGrading != 0) {
            return false;
        }
    }
    return true;
}

QSeries QSeries::truncated(std::int64_t new_trunc) const
{
    if (new_trunc >= trunc_) {
        return *this;
    }
    QSeries s;
    s.trunc_ = new_trunc;
    for (const auto& [j, c] : coeffs_) {
        if (j >= new_trunc) {
            break;
        }
        s.coeffs_.emplace(j, c);
    }
    return s;
}

QSeries QSeries::operator-() const
{
    QSeries s;
    s.trunc_ = trunc_;
    for (const auto& [j, c] : coeffs_) {
        s.coeffs_.emplace(j, -c);
    }
    return s;
}

QSeries operator+(const QSeries& a, const QSeries& b)
{
    QSeries s;
    s.trunc_ = std::min(a.trunc_, b.trunc_);
    for (const auto& [j, c] : a.coeffs_) {
        if (j < s.trunc_) {
            s.coeffs_.emplace(j, c);
        }
    }
    for (const auto& [j, c] : b.coeffs_) {
        if (j >= s.trunc_) {
            continue;
        }
        auto [it, inserted] = s.coeffs_.emplace(j, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                s.coeffs_.erase(it);
            }
        }
    }
    return s;
}

QSeries operator-(const QSeries& a, const QSeries& b)
{
    return a + (-b);
}

QSeries operator*(const QSeries& a, const QSeries& b)
{
    QSeries s;
    s.trunc_ = std::min(sat_add(a.trunc_, b.val()), sat_add(b.trunc_, a.val()));
    for (const auto& [ja, ca] : a.coeffs_) {
        for (const auto& [jb, cb] : b.coeffs_) {
            const std::int64_t j = ja + jb;
            if (j >= s.trunc_) {
                break; // b is ordered; later jb only grow
            }
            Gaussian prod = ca;
            prod *= cb;
            auto [it, inserted] = s.coeffs_.emplace(j, prod);
            if (!inserted) {
                it->second += prod;
            }
        }
    }
    for (auto it = s.coeffs_.begin(); it != s.coeffs_.end();) {
        it = it->second.is_zero() ? s.coeffs_.erase(it) : std::next(it);
    }
    return s;
}

QSeries QSeries::operator*(const Gaussian& c) const
{
    if (c.is_zero()) {
        return zero(trunc_);
    }
    QSeries s;
    s.trunc_ = trunc_;
    for (const auto& [j, v] : coeffs_) {
        s.coeffs_.emplace(j, v * c);
    }
    return s;
}

QSeries QSeries::shifted(std::int64_t units) const
{
    QSeries s;
    s.trunc_ = sat_add(trunc_, units);
    for (const auto& [j, c] : coeffs_) {
        s.coeffs_.emplace(j + units, c);
    }
    return s;
}

QSeries QSeries::pow(long e) const
{
    if (e < 0) {
        return inverse(*this).pow(-e);
    }
    QSeries result = QSeries::constant(Gaussian(1));
    QSeries base = *this;
    // Track the truncation of the true power: exponentiation by squaring
    // propagates the min-plus rule just like repeated multiplication.
    while (e > 0) {
        if (e & 1) {
            result = result * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

std::optional<std::int64_t> QSeries::first_mismatch(const QSeries& a, const QSeries& b,
                                                    std::int64_t bound)
{
    if (a.trunc_ < bound || b.trunc_ < bound) {
        throw order_error("series not known to the requested comparison order");
    }
    auto ia = a.coeffs_.begin();
    auto ib = b.coeffs_.begin();
    while (true) {
        const std::int64_t ja = (ia == a.coeffs_.end()) ? bound : std::min(ia->first, bound);
        const std::int64_t jb = (ib == b.coeffs_.end()) ? bound : std::min(ib->first, bound);
        const std::int64_t j = std::min(ja, jb);
        if (j >= bound) {
            return std::nullopt;
        }
        const Gaussian& ca = (ja == j && ia != a.coeffs_.end()) ? ia->second : kZero;
        const Gaussian& cb = (jb == j && ib != b.coeffs_.end()) ? ib->second : kZero;
        if (ca != cb) {
            return j;
        }
        if (ia != a.coeffs_.end() && ia->first == j) {
            ++ia;
        }
        if (ib != b.coeffs_.end() && ib->first == j) {
            ++ib;
        }
    }
}

std::string QSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, c] : coeffs_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c.str() << ")";
        if (j != 0) {
            if (j % kGrading == 0) {
                os << "*q^" << (j / kGrading);
            } else {
                os << "*q^(" << j << "/24)";
            }
        }
    }
    if (first) {
        os << "0";
    }
    if (trunc_ != kExact) {
        os << " + O(q^(" << trunc_ << "/24))";
    }
    return os.str();
}

QSeries inverse(const QSeries& a)
{
    if (a.is_zero()) {
        throw math_error("inverse: zero leading coefficient");
    }
    const std::int64_t v = a.val();
    if (a.is_exact()) {
        if (a.terms().size() == 1) {
            return QSeries::monomial(Gaussian(1) / a.terms().begin()->second, -v);
        }
        throw math_error("inverse of an exactly-known series requires a finite truncation");
    }
    const std::int64_t m = a.trunc() - v; // relative precision in 1/24 units
    // Solve u * b = 1 for the unit part u = a / q^(v/24).
    std::vector<Gaussian> b(static_cast<std::size_t>(m));
    const Gaussian& lead = a.terms().begin()->second;
    b[0] = Gaussian(1) / lead;
    std::vector<std::pair<std::int64_t, Gaussian>> utail;
    for (auto it = std::next(a.terms().begin()); it != a.terms().end(); ++it) {
        utail.emplace_back(it->first - v, it->second);
    }
    for (std::int64_t n = 1; n < m; ++n) {
        Gaussian acc;
        for (const auto& [k, uk] : utail) {
            if (k > n) {
                break;
            }
            if (!b[static_cast<std::size_t>(n - k)].is_zero()) {
                acc += uk * b[static_cast<std::size_t>(n - k)];
            }
        }
        if (!acc.is_zero()) {
            b[static_cast<std::size_t>(n)] = -(acc * b[0]);
        }
    }
    QSeries s = QSeries::zero(a.trunc() - 2 * v);
    for (std::int64_t n = 0; n < m; ++n) {
        s.set(-v + n, b[static_cast<std::size_t>(n)]);
    }
    return s;
}

QSeries div(const QSeries& a, const QSeries& b)
{
    return a * inverse(b);
}

QSeries sqrt_unit(const QSeries& a)
{
    if (a.is_zero()) {
        throw math_error("sqrt_unit: zero leading coefficient");
    }
    const std::int64_t v = a.val();
    if (v % 2 != 0) {
        throw math_error("sqrt_unit: odd valuation");
    }
    const Gaussian& lead = a.terms().begin()->second;
    std::optional<Rational> root;
    if (lead.is_real()) {
        root = rational_sqrt(lead.re());
    }
    if (!root) {
        throw math_error("sqrt_unit: leading coefficient is not a rational perfect square");
    }
    if (a.is_exact() && a.terms().size() > 1) {
        throw math_error("sqrt_unit of an exactly-known series requires a finite truncation");
    }
    const std::int64_t m = a.is_exact() ? 1 : a.trunc() - v;
    // b = sqrt(u) for the monic unit part u = a / (lead * q^(v/24)).
    const Gaussian inv_lead = Gaussian(1) / lead;
    std::vector<Gaussian> u(static_cast<std::size_t>(m));
    for (const auto& [j, c] : a.terms()) {
        u[static_cast<std::size_t>(j - v)] = c * inv_lead;
    }
    std::vector<Gaussian> b(static_cast<std::size_t>(m));
    b[0] = Gaussian(1);
    const Gaussian half(Rational(1, 2));
    for (std::int64_t n = 1; n < m; ++n) {
        Gaussian acc = u[static_cast<std::size_t>(n)];
        for (std::int64_t k = 1; k < n; ++k) {
            if (!b[static_cast<std::size_t>(k)].is_zero()
                && !b[static_cast<std::size_t>(n - k)].is_zero()) {
                acc -= b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(n - k)];
            }
        }
        b[static_cast<std::size_t>(n)] = acc * half;
    }
    QSeries s = QSeries::zero(a.is_exact() ? kExact : a.trunc() - v / 2);
    const Gaussian scale(*root);
    for (std::int64_t n = 0; n < m; ++n) {
        if (!b[static_cast<std::size_t>(n)].is_zero()) {
            s.set(v / 2 + n, b[static_cast<std::size_t>(n)] * scale);
        }
    }
    return s;
}

QSeries exp_positive(const QSeries& a)
{
    if (a.is_zero()) {
        return QSeries::constant(Gaussian(1), a.trunc());
    }
    const std::int64_t v = a.val();
    if (v <= 0) {
        throw math_error("exp_positive: nonpositive valuation");
    }
    if (a.is_exact()) {
        throw math_error("exp_positive of an exactly-known series requires a finite truncation");
    }
    const std::int64_t trunc = a.trunc();
    QSeries result = QSeries::constant(Gaussian(1), trunc);
    QSeries power = QSeries::constant(Gaussian(1), trunc);
    Rational kfact(1);
    for (std::int64_t k = 1; k * v < trunc; ++k) {
        power = (power * a).truncated(trunc);
        if (power.is_zero()) {
            break;
        }
        kfact *= k;
        result = result + power * Gaussian(Rational(1) / kfact);
    }
    return result;
}

QSeries dilate(const QSeries& a, std::int64_t c)
{
    if (c <= 0) {
        throw math_error("dilate: scale must be a positive integer");
    }
    QSeries s = QSeries::zero(sat_mul(a.trunc(), c));
    for (const auto& [j, coeff] : a.terms()) {
        s.set(c * j, coeff);
    }
    return s;
}

QSeries compose(const UniSeries& outer, const QSeries& inner)
{
    if (inner.is_zero() && inner.is_exact()) {
        return QSeries::constant(outer.degree_bound() > 0 ? outer.coeff(0) : Gaussian());
    }
    const std::int64_t v = inner.val();
    if (v <= 0) {
        throw math_error("compose: inner series must have positive valuation");
    }
    const std::int64_t n = outer.trunc();
    const std::int64_t trunc = std::min(inner.trunc(), sat_mul(n, v));
    QSeries result = QSeries::zero(trunc);
    for (std::int64_t k = n - 1; k >= 0; --k) {
        result = (result * inner).truncated(trunc) + QSeries::constant(outer.coeff(k), trunc);
    }
    return result;
}

UniSeries to_uniseries(const QSeries& a)
{
    if (!a.integer_graded()) {
        throw math_error("to_uniseries: series must have integer q-powers only");
    }
    if (!a.is_zero() && a.val() < 0) {
        throw math_error("to_uniseries: series must have nonnegative valuation");
    }
    if (a.is_exact()) {
        throw math_error("to_uniseries requires a finite truncation");
    }
    const std::int64_t n = (a.trunc() + QSeries::kGrading - 1) / QSeries::kGrading;
    UniSeries u(n);
    for (const auto& [j, c] : a.terms()) {
        u.set(j / QSeries::kGrading, c);
    }
    return u;
}

UniSeries revert(const QSeries& a)
{
    if (!a.integer_graded()) {
        throw math_error("revert: series must have integer q-powers only");
    }
    if (a.is_exact()) {
        throw math_error("revert of an exactly-known series requires a finite truncation");
    }
    if (a.is_zero() || a.val() != QSeries::kGrading) {
        throw math_error("revert: series must start with a nonzero linear term");
    }
    const std::int64_t nq = (a.trunc() + QSeries::kGrading - 1) / QSeries::kGrading;
    std::vector<Gaussian> av(static_cast<std::size_t>(nq));
    for (const auto& [j, c] : a.terms()) {
        const std::int64_t n = j / QSeries::kGrading;
        if (n < nq) {
            av[static_cast<std::size_t>(n)] = c;
        }
    }
    // powers[k][n] = [q^n] a^k, dense mod q^nq
    std::vector<std::vector<Gaussian>> powers(static_cast<std::size_t>(nq));
    powers[1] = av;
    for (std::int64_t k = 2; k < nq; ++k) {
        auto& p = powers[static_cast<std::size_t>(k)];
        p.assign(static_cast<std::size_t>(nq), Gaussian());
        const auto& prev = powers[static_cast<std::size_t>(k - 1)];
        for (std::int64_t i = k - 1; i < nq; ++i) {
            if (prev[static_cast<std::size_t>(i)].is_zero()) {
                continue;
            }
            for (std::int64_t m = 1; i + m < nq; ++m) {
                if (!av[static_cast<std::size_t>(m)].is_zero()) {
                    p[static_cast<std::size_t>(i + m)] +=
                        prev[static_cast<std::size_t>(i)] * av[static_cast<std::size_t>(m)];
                }
            }
        }
    }
    UniSeries r(nq);
    const Gaussian a1 = av[1];
    Gaussian a1_pow = a1;
    r.set(1, Gaussian(1) / a1);
    for (std::int64_t m = 2; m < nq; ++m) {
        a1_pow *= a1;
        Gaussian acc;
        for (std::int64_t k = 1; k < m; ++k) {
            const Gaussian& pk = powers[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
            if (!pk.is_zero() && !r.coeff(k).is_zero()) {
                acc += r.coeff(k) * pk;
            }
        }
        r.set(m, -(acc / a1_pow));
    }
    return r;
}

} // namespace qmf
