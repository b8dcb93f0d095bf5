#include "qmf/donaldson.hpp"

#include <algorithm>

#include "qmf/biseries.hpp"
#include "qmf/elliptic.hpp"
#include "qmf/errors.hpp"
#include "qmf/modular.hpp"

namespace qmf {

namespace {
const Gaussian kZeroG{};
constexpr std::int64_t kG = QSeries::kGrading;
} // namespace

// ------------------------------------------------------------- validation

long q_pair(const std::vector<std::vector<long>>& q, const std::vector<long>& a,
            const std::vector<long>& b)
{
    long s = 0;
    for (std::size_t i = 0; i < a.size() && i < q.size(); ++i) {
        for (std::size_t j = 0; j < b.size() && j < q[i].size(); ++j) {
            s += a[i] * q[i][j] * b[j];
        }
    }
    return s;
}

std::vector<Diagnostic> validate_manifold(const ManifoldData& data)
{
    std::vector<Diagnostic> out;
    auto err = [&](const std::string& code, const std::string& msg) {
        out.push_back({Severity::Error, code, msg});
    };
    auto warn = [&](const std::string& code, const std::string& msg) {
        out.push_back({Severity::Warning, code, msg});
    };

    if (data.b_plus <= 1 || data.b_plus % 2 == 0) {
        err("b-plus", "b+ must be an odd integer > 1");
    }
    const std::size_t r = static_cast<std::size_t>(data.rank);
    bool shape_ok = data.rank > 0 && data.q.size() == r && data.w.size() == r;
    for (const auto& row : data.q) {
        shape_ok = shape_ok && row.size() == r;
    }
    if (!shape_ok) {
        err("shape", "Q must be rank x rank and w of length rank");
        return out;
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            if (data.q[i][j] != data.q[j][i]) {
                err("symmetry", "intersection matrix is not symmetric");
            }
        }
    }

    for (std::size_t c = 0; c < data.classes.size(); ++c) {
        const auto& rec = data.classes[c];
        const std::string where = "class #" + std::to_string(c);
        if (rec.k.size() != r) {
            err("class-shape", where + ": K has wrong length");
            continue;
        }
        if (rec.d < 0 || rec.d % 2 != 0) {
            err("order-datum", where + ": d must be even and nonnegative");
            continue;
        }
        if (static_cast<long>(rec.f.size()) != rec.d / 2 + 1) {
            err("f-length", where + ": f must have exactly d/2 + 1 coefficients");
            continue;
        }
        const long e = q_pair(data.q, rec.k, data.w) + q_pair(data.q, data.w, data.w);
        if (e % 2 != 0) {
            err("sign-parity", where + ": K.w + w^2 is odd, the sign exponent is undefined");
        }
    }

    // +-K symmetry with f_{-K} = (-1)^{(1+b+)/2} f_K: warning severity (the
    // equality is only asserted modulo the truncation).
    const int eps = (((1 + data.b_plus) / 2) % 2 == 0) ? 1 : -1;
    for (const auto& rec : data.classes) {
        if (rec.k.size() != r) {
            continue;
        }
        std::vector<long> neg(rec.k.size());
        for (std::size_t i = 0; i < rec.k.size(); ++i) {
            neg[i] = -rec.k[i];
        }
        bool found = false;
        for (const auto& other : data.classes) {
            if (other.k != neg || other.d != rec.d) {
                continue;
            }
            found = true;
            bool match = other.f.size() == rec.f.size();
            for (std::size_t j = 0; match && j < rec.f.size(); ++j) {
                match = other.f[j] * eps == rec.f[j];
            }
            if (!match) {
                warn("mirror-f", "f_{-K} != (-1)^{(1+b+)/2} f_K for a class pair");
            }
            break;
        }
        if (!found) {
            warn("mirror-class", "class present without its negative");
        }
    }
    return out;
}

void require_valid(const ManifoldData& data)
{
    for (const auto& d : validate_manifold(data)) {
        if (d.severity == Severity::Error) {
            throw validation_error(d.code + ": " + d.message);
        }
    }
}

long degree_d0(const ManifoldData& data, const std::vector<long>& w)
{
    if (data.b_plus % 2 == 0) {
        throw math_error("d0 is not integral for even b+");
    }
    return -q_pair(data.q, w, w) - 3 * (1 + data.b_plus) / 2;
}

// --------------------------------------------------------------- SlotPoly

void SlotPoly::add(int l, int qd, int kd, int t, const Gaussian& c)
{
    add_packed(key(l, qd, kd, t), c);
}

void SlotPoly::add_packed(std::uint64_t k, const Gaussian& c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

const Gaussian& SlotPoly::coeff(int l, int qd, int kd, int t) const
{
    auto it = terms_.find(key(l, qd, kd, t));
    return it == terms_.end() ? kZeroG : it->second;
}

SlotPoly operator+(const SlotPoly& a, const SlotPoly& b)
{
    SlotPoly s = a;
    for (const auto& [k, c] : b.terms_) {
        s.add_packed(k, c);
    }
    return s;
}

SlotPoly operator*(const SlotPoly& a, const SlotPoly& b)
{
    SlotPoly s;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            s.add_packed(ka + kb, ca * cb); // 16-bit fields, degrees stay tiny
        }
    }
    return s;
}

SlotPoly SlotPoly::operator*(const Gaussian& c) const
{
    SlotPoly s;
    if (c.is_zero()) {
        return s;
    }
    for (const auto& [k, v] : terms_) {
        s.terms_.emplace(k, v * c);
    }
    return s;
}

SlotPoly SlotPoly::minus_sector_substituted() const
{
    SlotPoly s;
    for (const auto& [k, c] : terms_) {
        const int l = static_cast<int>(k & 0xffff);
        const int qd = static_cast<int>((k >> 16) & 0xffff);
        const int kd = static_cast<int>((k >> 32) & 0xffff);
        Gaussian cc = c * Gaussian::i_pow(kd);
        if ((l + qd) % 2 != 0) {
            cc = -cc;
        }
        s.add_packed(k, cc);
    }
    return s;
}

int SlotPoly::lambda_degree() const
{
    int deg = -1;
    for (const auto& [k, c] : terms_) {
        deg = std::max(deg, static_cast<int>(k & 0xffff));
    }
    return deg;
}

// ---------------------------------------------------------------- bracket

namespace {

// Series of SlotPolys in integer q-powers 0..d2, the working ring for
// bracket extraction.
using QPoly = std::vector<SlotPoly>;

QPoly qp_mul(const QPoly& a, const QPoly& b)
{
    QPoly s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < s.size() && j < b.size(); ++j) {
            if (!b[j].is_zero()) {
                s[i + j] = s[i + j] + a[i] * b[j];
            }
        }
    }
    return s;
}

// e^{series * slot} truncated at q^d2; slot is 0=lambda, 1=QD, 2=KD.
QPoly qp_exp_slot(const QSeries& series, int slot, long d2)
{
    if (!series.integer_graded() || (!series.is_zero() && series.val() < kG)) {
        throw internal_error("bracket factor must be integer-graded with positive valuation");
    }
    if (series.trunc() <= kG * d2) {
        throw order_error("insufficient q-order for the requested bracket");
    }
    QPoly out(static_cast<std::size_t>(d2) + 1);
    out[0].add(0, 0, 0, 0, Gaussian(1));
    QSeries power = QSeries::constant(Gaussian(1));
    Rational kfact(1);
    for (long k = 1; k <= d2; ++k) {
        power = (power * series).truncated(kG * d2 + 1);
        kfact *= k;
        const Gaussian inv_fact(Rational(1) / kfact);
        for (const auto& [j, c] : power.terms()) {
            const long n = j / kG;
            if (n <= d2) {
                const int a = slot == 0 ? static_cast<int>(k) : 0;
                const int b = slot == 1 ? static_cast<int>(k) : 0;
                const int cc = slot == 2 ? static_cast<int>(k) : 0;
                out[static_cast<std::size_t>(n)].add(a, b, cc, 0, c * inv_fact);
            }
        }
    }
    return out;
}

QPoly qp_from_kernel(const BiSeries& kernel, long d2)
{
    QPoly out(static_cast<std::size_t>(d2) + 1);
    for (std::int64_t t = 0; t < kernel.ttrunc(); ++t) {
        const QSeries& row = kernel.row(t);
        if (row.trunc() <= kG * d2) {
            throw order_error("kernel row not known to the requested bracket order");
        }
        for (const auto& [j, c] : row.terms()) {
            if (j % kG != 0 || j < 0) {
                throw internal_error("kernel rows must be integer-graded power series");
            }
            const long n = j / kG;
            if (n <= d2) {
                out[static_cast<std::size_t>(n)].add(0, 0, 0, static_cast<int>(t), c);
            }
        }
    }
    return out;
}

SlotPoly bracket_impl(const QSeries& l_series, const QSeries& qd_series,
                      const QSeries& kd_series, const BiSeries* kernel,
                      const std::vector<Rational>& f, long d)
{
    const long d2 = d / 2;
    QPoly acc = qp_exp_slot(l_series, 0, d2);
    acc = qp_mul(acc, qp_exp_slot(qd_series, 1, d2));
    acc = qp_mul(acc, qp_exp_slot(kd_series, 2, d2));
    if (kernel != nullptr) {
        acc = qp_mul(acc, qp_from_kernel(*kernel, d2));
    }
    QPoly fq(static_cast<std::size_t>(d2) + 1);
    for (std::size_t j = 0; j < f.size() && j <= static_cast<std::size_t>(d2); ++j) {
        fq[j].add(0, 0, 0, 0, Gaussian(f[j]));
    }
    acc = qp_mul(acc, fq);
    return acc[static_cast<std::size_t>(d2)];
}

struct ElectricStripped {
    QSeries vt; // V - 2
    QSeries tt; // T - 1/2
    QSeries nt; // 1/(2h) - 1
};

ElectricStripped electric_stripped(int nq)
{
    const ElectricTriple et = electric_triple(nq);
    return {et.v - QSeries::constant(Gaussian(2)),
            et.t - QSeries::constant(Gaussian(Rational(1, 2))),
            inverse(et.h * Gaussian(2)) - QSeries::constant(Gaussian(1))};
}

int sign_exponent(const ManifoldData& data, const std::vector<long>& k)
{
    const long e = q_pair(data.q, k, data.w) + q_pair(data.q, data.w, data.w);
    if (e % 2 != 0) {
        throw validation_error("sign-parity: K.w + w^2 is odd");
    }
    return (((e / 2) % 2) + 2) % 2 == 0 ? 1 : -1;
}

} // namespace

SlotPoly bracket_with_kernel(const QSeries& l_series, const QSeries& qd_series,
                             const QSeries& kd_series, const BiSeries* kernel,
                             const std::vector<Rational>& f, long d)
{
    return bracket_impl(l_series, qd_series, kd_series, kernel, f, d);
}

SlotPoly bracket_polynomial(const BasicClassRecord& rec, int nq)
{
    if (nq <= rec.d / 2) {
        throw order_error("bracket_polynomial: q-order must exceed d/2");
    }
    const ElectricStripped es = electric_stripped(nq);
    return bracket_impl(es.vt, es.tt, es.nt, nullptr, rec.f, rec.d);
}

// -------------------------------------------------------------- evaluators

ClosedFormInvariant evaluate_bracket(const ManifoldData& data, int nq)
{
    require_valid(data);
    ClosedFormInvariant cf;
    cf.q = data.q;
    if (data.classes.empty()) {
        return cf;
    }
    long maxd = 0;
    for (const auto& rec : data.classes) {
        maxd = std::max(maxd, rec.d);
    }
    if (nq <= maxd / 2) {
        throw order_error("evaluate_bracket: q-order must exceed max d/2");
    }
    const ElectricStripped es = electric_stripped(nq);
    const Gaussian i_d0 = Gaussian::i_pow(-degree_d0(data, data.w));
    for (const auto& rec : data.classes) {
        const int sign = sign_exponent(data, rec.k);
        const SlotPoly plus = bracket_impl(es.vt, es.tt, es.nt, nullptr, rec.f, rec.d);
        cf.terms.push_back({+1, Gaussian(sign), rec.k, false, plus});
        cf.terms.push_back(
            {-1, Gaussian(sign) * i_d0, rec.k, true, plus.minus_sector_substituted()});
    }
    return cf;
}

ClosedFormInvariant evaluate_operator(const ManifoldData& data, const std::vector<PKRecord>& pks)
{
    require_valid(data);
    ClosedFormInvariant cf;
    cf.q = data.q;
    if (pks.empty()) {
        return cf;
    }
    long maxd = 0;
    for (const auto& pk : pks) {
        if (pk.k.size() != static_cast<std::size_t>(data.rank)) {
            throw validation_error("class-shape: K has wrong length");
        }
        if (pk.d < 0 || pk.d % 2 != 0) {
            throw validation_error("order-datum: d must be even and nonnegative");
        }
        if (static_cast<long>(pk.p.size()) > pk.d / 2 + 1) {
            throw math_error("degree mismatch: P has degree above d/2");
        }
        maxd = std::max(maxd, pk.d);
    }
    const long n_ops = maxd / 2 + 1;
    const ABPair ab = ab_from_elliptic(n_ops);
    const UniSeries a_tilde = ab.a - UniSeries::constant(Gaussian(1), n_ops);
    const UniSeries b_half =
        (ab.b - UniSeries::constant(Gaussian(1), n_ops)) * Gaussian(Rational(1, 2));
    const Gaussian i_d0 = Gaussian::i_pow(-degree_d0(data, data.w));

    for (const auto& pk : pks) {
        const int sign = sign_exponent(data, pk.k);
        // derivatives of P: derivs[m][l] = coeff of lambda^l in P^(m)
        std::vector<std::vector<Gaussian>> derivs;
        std::vector<Gaussian> cur(pk.p.size());
        for (std::size_t l = 0; l < pk.p.size(); ++l) {
            cur[l] = Gaussian(pk.p[l]);
        }
        while (true) {
            derivs.push_back(cur);
            if (cur.size() <= 1) {
                break;
            }
            std::vector<Gaussian> next(cur.size() - 1);
            for (std::size_t l = 0; l + 1 < cur.size(); ++l) {
                next[l] = cur[l + 1] * Gaussian(static_cast<long>(l + 1));
            }
            cur = std::move(next);
        }
        const long dl = static_cast<long>(derivs.size()) - 1; // actual poly degree

        // operator powers: pow_a[a] = A~^a, pow_b[b] = (B~/2)^b mod N^{dl+1}
        const UniSeries one = UniSeries::constant(Gaussian(1), dl + 1);
        std::vector<UniSeries> pow_a{one}, pow_b{one};
        for (long a = 1; a <= dl; ++a) {
            pow_a.push_back((pow_a.back() * a_tilde.truncated(dl + 1)).truncated(dl + 1));
            pow_b.push_back((pow_b.back() * b_half.truncated(dl + 1)).truncated(dl + 1));
        }

        SlotPoly plus;
        for (long a = 0; a <= dl; ++a) {
            for (long b = 0; a + b <= dl; ++b) {
                const UniSeries op = (pow_a[static_cast<std::size_t>(a)]
                                      * pow_b[static_cast<std::size_t>(b)])
                                         .truncated(dl + 1);
                const Gaussian scale(Rational(1)
                                     / (factorial(static_cast<unsigned long>(a))
                                        * factorial(static_cast<unsigned long>(b))));
                // R_{a,b}(lambda) = sum_m op_m P^(m)(lambda)
                for (long m = 0; m <= dl; ++m) {
                    const Gaussian& cm = op.coeff(m);
                    if (cm.is_zero()) {
                        continue;
                    }
                    const auto& pm = derivs[static_cast<std::size_t>(m)];
                    for (std::size_t l = 0; l < pm.size(); ++l) {
                        if (!pm[l].is_zero()) {
                            plus.add(static_cast<int>(l), static_cast<int>(b),
                                     static_cast<int>(a), 0, pm[l] * cm * scale);
                        }
                    }
                }
            }
        }
        cf.terms.push_back({+1, Gaussian(sign), pk.k, false, plus});
        cf.terms.push_back(
            {-1, Gaussian(sign) * i_d0, pk.k, true, plus.minus_sector_substituted()});
    }
    return cf;
}

// ------------------------------------------------------------ conversions

namespace {

// c_{l,j} = (1/l!) [q^{d/2-j}] (V-2)^l, real rationals
std::vector<std::vector<Rational>> bracket_matrix(long d)
{
    const long d2 = d / 2;
    const ElectricStripped es = electric_stripped(static_cast<int>(d2) + 2);
    std::vector<std::vector<Rational>> c(static_cast<std::size_t>(d2) + 1,
                                         std::vector<Rational>(static_cast<std::size_t>(d2) + 1,
                                                               Rational(0)));
    QSeries power = QSeries::constant(Gaussian(1), kG * (d2 + 1) + 1);
    Rational lfact(1);
    for (long l = 0; l <= d2; ++l) {
        if (l > 0) {
            power = (power * es.vt).truncated(kG * (d2 + 1) + 1);
            lfact *= l;
        }
        for (long j = 0; j <= d2; ++j) {
            const long n = d2 - j;
            if (n < l) {
                continue; // below the valuation of (V-2)^l
            }
            const Gaussian& g = power.coefficient(kG * n);
            if (!g.is_zero()) {
                c[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = g.re() / lfact;
            }
        }
    }
    return c;
}

} // namespace

PKRecord PK_from_fK(const BasicClassRecord& rec)
{
    if (rec.d < 0 || rec.d % 2 != 0 || static_cast<long>(rec.f.size()) != rec.d / 2 + 1) {
        throw math_error("degree mismatch: f must have exactly d/2 + 1 coefficients");
    }
    const long d2 = rec.d / 2;
    const auto c = bracket_matrix(rec.d);
    PKRecord pk;
    pk.k = rec.k;
    pk.d = rec.d;
    pk.p.assign(static_cast<std::size_t>(d2) + 1, Rational(0));
    for (long l = 0; l <= d2; ++l) {
        Rational acc(0);
        for (long j = 0; j <= d2 - l; ++j) {
            acc += c[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]
                   * rec.f[static_cast<std::size_t>(j)];
        }
        pk.p[static_cast<std::size_t>(l)] = acc;
    }
    return pk;
}

BasicClassRecord fK_from_PK(const PKRecord& pk)
{
    if (pk.d < 0 || pk.d % 2 != 0 || static_cast<long>(pk.p.size()) != pk.d / 2 + 1) {
        throw math_error("degree mismatch: P must have exactly d/2 + 1 coefficients");
    }
    const long d2 = pk.d / 2;
    const auto c = bracket_matrix(pk.d);
    BasicClassRecord rec;
    rec.k = pk.k;
    rec.d = pk.d;
    rec.f.assign(static_cast<std::size_t>(d2) + 1, Rational(0));
    // solve top lambda-degree down: p_{d2-j} involves f_0..f_j only
    for (long j = 0; j <= d2; ++j) {
        const long l = d2 - j;
        Rational acc = pk.p[static_cast<std::size_t>(l)];
        for (long jp = 0; jp < j; ++jp) {
            acc -= c[static_cast<std::size_t>(l)][static_cast<std::size_t>(jp)]
                   * rec.f[static_cast<std::size_t>(jp)];
        }
        rec.f[static_cast<std::size_t>(j)] =
            acc / c[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
    }
    return rec;
}

// ----------------------------------------------------------------- taylor

namespace {

MultiPoly taylor_term(const CFTerm& term, const std::vector<std::vector<long>>& q,
                      int t_var, int lambda_order, const std::vector<int>& d_orders)
{
    std::vector<int> orders;
    orders.push_back(lambda_order);
    orders.insert(orders.end(), d_orders.begin(), d_orders.end());
    const std::size_t nvars = orders.size();
    const std::size_t rank = q.size();

    // Q(D) and K.D written out in D-coordinates
    MultiPoly qd_poly(orders);
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            if (q[i][j] != 0) {
                std::vector<int> e(nvars, 0);
                e[1 + i] += 1;
                e[1 + j] += 1;
                qd_poly.add_term(e, Gaussian(q[i][j]));
            }
        }
    }
    MultiPoly kd_poly(orders);
    for (std::size_t i = 0; i < rank; ++i) {
        long coeff = 0;
        for (std::size_t j = 0; j < term.k.size(); ++j) {
            coeff += q[i][j] * term.k[j];
        }
        if (coeff != 0) {
            std::vector<int> e(nvars, 0);
            e[1 + i] = 1;
            kd_poly.add_term(e, Gaussian(coeff));
        }
    }

    // polynomial part: substitute the slots
    std::map<int, MultiPoly> qd_pow{{0, MultiPoly::constant(Gaussian(1), orders)}};
    std::map<int, MultiPoly> kd_pow{{0, MultiPoly::constant(Gaussian(1), orders)}};
    auto power_of = [](std::map<int, MultiPoly>& cache, const MultiPoly& base,
                       int e) -> const MultiPoly& {
        for (int m = 1; m <= e; ++m) {
            if (cache.find(m) == cache.end()) {
                cache.emplace(m, cache.at(m - 1) * base);
            }
        }
        return cache.at(e);
    };

    MultiPoly poly(orders);
    for (const auto& [key, c] : term.poly.terms()) {
        const int l = static_cast<int>(key & 0xffff);
        const int qd = static_cast<int>((key >> 16) & 0xffff);
        const int kd = static_cast<int>((key >> 32) & 0xffff);
        const int t = static_cast<int>((key >> 48) & 0xffff);
        if (l > lambda_order) {
            continue;
        }
        if (t > 0 && (t_var < 0 || t > orders[static_cast<std::size_t>(t_var)])) {
            if (t_var < 0) {
                throw internal_error("t-slot used without a target Taylor variable");
            }
            continue;
        }
        std::vector<int> e(nvars, 0);
        e[0] = l;
        if (t > 0) {
            e[static_cast<std::size_t>(t_var)] = t;
        }
        MultiPoly mono(orders);
        mono.add_term(e, c);
        if (qd > 0) {
            mono = mono * power_of(qd_pow, qd_poly, qd);
        }
        if (kd > 0) {
            mono = mono * power_of(kd_pow, kd_poly, kd);
        }
        poly = poly + mono;
    }

    // exponential part
    poly = poly * term.prefactor;
    {
        std::vector<int> e(nvars, 0);
        e[0] = 1;
        poly.mul_exp_monomial(MultiPoly::pack(e), Gaussian(2L * term.sector));
    }
    const Gaussian half(Rational(term.sector, 2));
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = i; j < rank; ++j) {
            if (q[i][j] == 0) {
                continue;
            }
            std::vector<int> e(nvars, 0);
            e[1 + i] += 1;
            e[1 + j] += 1;
            const Gaussian coeff = (i == j) ? half * Gaussian(q[i][j])
                                            : Gaussian(term.sector * q[i][j]);
            poly.mul_exp_monomial(MultiPoly::pack(e), coeff);
        }
    }
    const Gaussian mult = term.kd_imag ? Gaussian::i() : Gaussian(1);
    for (std::size_t i = 0; i < rank; ++i) {
        long coeff = 0;
        for (std::size_t j = 0; j < term.k.size(); ++j) {
            coeff += q[i][j] * term.k[j];
        }
        if (coeff != 0) {
            std::vector<int> e(nvars, 0);
            e[1 + i] = 1;
            poly.mul_exp_monomial(MultiPoly::pack(e), mult * Gaussian(coeff));
        }
    }
    return poly;
}

} // namespace

MultiPoly taylor_expand(const ClosedFormInvariant& cf, int lambda_order,
                        const std::vector<int>& d_orders)
{
    std::vector<int> orders;
    orders.push_back(lambda_order);
    orders.insert(orders.end(), d_orders.begin(), d_orders.end());
    MultiPoly acc(orders);
    for (const auto& term : cf.terms) {
        acc = acc + taylor_term(term, cf.q, cf.t_var, lambda_order, d_orders);
    }
    return acc;
}

// ------------------------------------------------------------------- pde

PdeResiduals pde_residual(const ManifoldData& data, std::size_t k_index,
                          const std::vector<Rational>& h, int lambda_order, int d_order,
                          int nq)
{
    require_valid(data);
    if (k_index >= data.classes.size()) {
        throw math_error("pde_residual: class index out of range");
    }
    const auto& rec = data.classes[k_index];
    const long d2 = rec.d / 2;
    const int l_int = lambda_order + static_cast<int>(d2) + 2;
    const int d_int = d_order + 1;

    // plus-sector K-term at inflated orders
    ClosedFormInvariant one;
    one.q = data.q;
    one.terms.push_back(
        {+1, Gaussian(sign_exponent(data, rec.k)), rec.k, false, bracket_polynomial(rec, nq)});
    const std::vector<int> d_orders_int(static_cast<std::size_t>(data.rank), d_int);
    const MultiPoly big = taylor_expand(one, l_int, d_orders_int);

    // (dl - 2)^k chain
    std::vector<MultiPoly> chain{big};
    for (long k = 1; k <= d2 + 1; ++k) {
        const MultiPoly& prev = chain.back();
        chain.push_back(prev.derivative(0) - prev * Gaussian(2));
    }

    const ABPair ab = ab_from_elliptic(d2 + 1);

    // directional residual: dH(big) - (D.H) B(N) big - (K.H) A(N) big
    MultiPoly dir = big;
    {
        MultiPoly acc(big.orders());
        for (std::size_t i = 0; i < static_cast<std::size_t>(data.rank); ++i) {
            if (i < h.size() && h[i] != 0) {
                acc = acc + big.derivative(1 + i) * Gaussian(h[i]);
            }
        }
        dir = acc;
    }
    MultiPoly b_of_n(big.orders());
    MultiPoly a_of_n(big.orders());
    for (long k = 0; k <= d2; ++k) {
        b_of_n = b_of_n + chain[static_cast<std::size_t>(k)] * ab.b.coeff(k);
        a_of_n = a_of_n + chain[static_cast<std::size_t>(k)] * ab.a.coeff(k);
    }
    MultiPoly dh_poly(big.orders());
    for (std::size_t i = 0; i < static_cast<std::size_t>(data.rank); ++i) {
        Rational coeff(0);
        for (std::size_t j = 0; j < h.size() && j < static_cast<std::size_t>(data.rank); ++j) {
            coeff += Rational(data.q[i][j]) * h[j];
        }
        if (coeff != 0) {
            std::vector<int> e(big.orders().size(), 0);
            e[1 + i] = 1;
            dh_poly.add_term(e, Gaussian(coeff));
        }
    }
    Rational kh(0);
    for (std::size_t i = 0; i < rec.k.size(); ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            kh += Rational(rec.k[i] * data.q[i][j]) * h[j];
        }
    }
    const MultiPoly resid_dir = dir - dh_poly * b_of_n - a_of_n * Gaussian(kh);

    std::vector<int> final_orders;
    final_orders.push_back(lambda_order);
    for (long i = 0; i < data.rank; ++i) {
        final_orders.push_back(d_order);
    }
    return {resid_dir.truncated(final_orders),
            chain[static_cast<std::size_t>(d2 + 1)].truncated(final_orders)};
}

// ---------------------------------------------------------------- blow-up

ManifoldData blow_up(const ManifoldData& data, BlowupSide side)
{
    require_valid(data);
    ManifoldData out;
    out.b_plus = data.b_plus;
    out.rank = data.rank + 1;
    out.q.assign(static_cast<std::size_t>(out.rank),
                 std::vector<long>(static_cast<std::size_t>(out.rank), 0));
    for (std::size_t i = 0; i < static_cast<std::size_t>(data.rank); ++i) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(data.rank); ++j) {
            out.q[i][j] = data.q[i][j];
        }
    }
    out.q[static_cast<std::size_t>(data.rank)][static_cast<std::size_t>(data.rank)] = -1;
    out.w = data.w;
    out.w.push_back(side == BlowupSide::WPlusE ? 1 : 0);

    long maxd = 0;
    for (const auto& rec : data.classes) {
        maxd = std::max(maxd, rec.d);
    }
    const QSeries inv_t1t = inverse(theta1_tilde(static_cast<int>(maxd / 2) + 2));

    for (const auto& rec : data.classes) {
        // f~ = f / theta1~ as a q-polynomial, reused for every n
        QSeries f_over = QSeries::zero(inv_t1t.trunc());
        for (std::size_t j = 0; j < rec.f.size(); ++j) {
            f_over.set(kG * static_cast<std::int64_t>(j), Gaussian(rec.f[j]));
        }
        f_over = f_over * inv_t1t;
        for (long n = 0; n * (n + 1) <= rec.d; ++n) {
            const long dt = rec.d - n * (n + 1);
            std::vector<Rational> ft(static_cast<std::size_t>(dt / 2) + 1);
            for (long j = 0; j <= dt / 2; ++j) {
                ft[static_cast<std::size_t>(j)] = f_over.coefficient(kG * j).re();
            }
            for (int s : {+1, -1}) {
                BasicClassRecord nr;
                nr.k = rec.k;
                nr.k.push_back(s * (2 * n + 1));
                nr.d = dt;
                nr.f = ft;
                out.classes.push_back(std::move(nr));
            }
        }
    }
    return out;
}

// ------------------------------------------------------------ simple type

std::vector<SimpleTypeTerm> simple_type_form(const ManifoldData& data)
{
    require_valid(data);
    std::vector<SimpleTypeTerm> out;
    for (const auto& rec : data.classes) {
        if (rec.d != 0) {
            throw math_error("not simple type: class with d > 0 present");
        }
        out.push_back({rec.k, rec.f.at(0), sign_exponent(data, rec.k)});
    }
    return out;
}

bool operator==(const ClosedFormInvariant& a, const ClosedFormInvariant& b)
{
    if (a.q != b.q || a.t_var != b.t_var || a.terms.size() != b.terms.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const auto& x = a.terms[i];
        const auto& y = b.terms[i];
        if (x.sector != y.sector || !(x.prefactor == y.prefactor) || x.k != y.k
            || x.kd_imag != y.kd_imag || !(x.poly == y.poly)) {
            return false;
        }
    }
    return true;
}

} // namespace qmf
