#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmf/multipoly.hpp"
#include "qmf/qseries.hpp"
#include "qmf/rational.hpp"

namespace qmf {

/// One basic class: the class vector K (in the same coordinates as the
/// intersection form), the order datum d (even, >= 0), and the d/2 + 1
/// series coefficients f_0 .. f_{d/2}.
struct BasicClassRecord {
    std::vector<long> k;
    long d = 0;
    std::vector<Rational> f;
};

/// Invariant data of a 4-manifold with b1 = 0: odd b+ > 1, the symmetric
/// intersection matrix Q (all pairings K.D, K.w, w^2 are taken through Q),
/// the distinguished class w, and the basic-class records.
struct ManifoldData {
    long b_plus = 3;
    long rank = 0;
    std::vector<std::vector<long>> q;
    std::vector<long> w;
    std::vector<BasicClassRecord> classes;
};

/// Basic class with its polynomial presentation P(lambda) of degree <= d/2.
struct PKRecord {
    std::vector<long> k;
    long d = 0;
    std::vector<Rational> p; // coefficient of lambda^j at index j
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity;
    std::string code;
    std::string message;
};

/// Non-throwing validation: parity of d, f lengths, Q symmetry, sign-exponent
/// parity (hard errors) and the +-K / f_{-K} symmetry (warnings).
std::vector<Diagnostic> validate_manifold(const ManifoldData& data);

/// Throws validation_error on the first Error-severity diagnostic.
void require_valid(const ManifoldData& data);

/// d0 = -w^T Q w - (3/2)(1 + b+); requires odd b+.
long degree_d0(const ManifoldData& data, const std::vector<long>& w);

/// a^T Q b.
long q_pair(const std::vector<std::vector<long>>& q, const std::vector<long>& a,
            const std::vector<long>& b);

/// Polynomial in the four abstract slots (lambda, Q(D), K.D, t) over Q(i).
/// Plain evaluator output never uses the t slot; the blow-up commutation
/// machinery does.
class SlotPoly {
  public:
    static std::uint64_t key(int l, int qd, int kd, int t)
    {
        return (static_cast<std::uint64_t>(l)) | (static_cast<std::uint64_t>(qd) << 16)
               | (static_cast<std::uint64_t>(kd) << 32) | (static_cast<std::uint64_t>(t) << 48);
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::uint64_t, Gaussian>& terms() const { return terms_; }

    void add(int l, int qd, int kd, int t, const Gaussian& c);
    void add_packed(std::uint64_t k, const Gaussian& c);

    const Gaussian& coeff(int l, int qd, int kd, int t = 0) const;

    friend SlotPoly operator+(const SlotPoly& a, const SlotPoly& b);
    friend SlotPoly operator*(const SlotPoly& a, const SlotPoly& b);
    SlotPoly operator*(const Gaussian& c) const;

    /// The second-bracket substitutions lambda -> -lambda, QD -> -QD,
    /// KD -> i*KD (t untouched).
    SlotPoly minus_sector_substituted() const;

    int lambda_degree() const;

    friend bool operator==(const SlotPoly& a, const SlotPoly& b)
    {
        return a.terms_ == b.terms_;
    }

  private:
    std::map<std::uint64_t, Gaussian> terms_;
};

/// One structure-formula term
///   prefactor * e^{ sector*2*lambda + sector*Q(D)/2 + mult*K.D } * poly
/// with mult = i when kd_imag is set, and poly a polynomial in the literal
/// slots (lambda, Q(D), K.D[, t]).
struct CFTerm {
    int sector = +1; // +1 or -1
    Gaussian prefactor;
    std::vector<long> k;
    bool kd_imag = false;
    SlotPoly poly;
};

/// Structured closed-form output of the evaluators. Keeps the intersection
/// matrix so Taylor expansion is self-contained. t_var >= 0 marks which
/// Taylor variable the t slot maps to (blow-up machinery only).
struct ClosedFormInvariant {
    std::vector<std::vector<long>> q;
    std::vector<CFTerm> terms;
    int t_var = -1;

    friend bool operator==(const ClosedFormInvariant& a, const ClosedFormInvariant& b);
};

/// The sector-agnostic stripped bracket
///   [ q^{-d/2} e^{(V-2) l + (T-1/2) QD + (1/2h - 1) KD} f ]_{q^0}
/// as a polynomial of q-weighted total degree <= d/2 in the three slots.
/// Requires nq > d/2.
SlotPoly bracket_polynomial(const BasicClassRecord& rec, int nq);

class BiSeries;

/// General stripped bracket with an optional t-kernel (the blow-up
/// commutation machinery): [ q^{-d/2} kernel(q,t) e^{ls*l + qs*QD + ks*KD} f ]_{q^0}.
/// The three exponent series must be integer-graded with positive valuation;
/// kernel rows must be integer-graded power series.
SlotPoly bracket_with_kernel(const QSeries& l_series, const QSeries& qd_series,
                             const QSeries& kd_series, const BiSeries* kernel,
                             const std::vector<Rational>& f, long d);

/// Bracket-route evaluator: per class K, the plus-sector term with the
/// stripped bracket and the minus-sector term with the (-l, -QD, i KD)
/// substitutions, signs (-1)^{(K.w + w^2)/2} and the global i^{-d0}.
ClosedFormInvariant evaluate_bracket(const ManifoldData& data, int nq = 12);

/// Operator-series evaluator: same output shape, with the bracket replaced
/// by e^{(A(N)-1) KD + (B(N)-1) QD/2} acting on P_K through the nilpotent
/// N = d/dlambda (the operators act on the polynomial after stripping
/// e^{+-2 lambda}; the minus sector takes P_K(-lambda) with i KD / -QD).
ClosedFormInvariant evaluate_operator(const ManifoldData& data,
                                   const std::vector<PKRecord>& pks);

/// Triangular correspondence P(lambda) = [q^{-d/2} e^{(V-2) lambda} f]_{q^0}.
PKRecord PK_from_fK(const BasicClassRecord& rec);
/// Inverse of PK_from_fK (solves the triangular system top degree down).
BasicClassRecord fK_from_PK(const PKRecord& rec);

struct PdeResiduals {
    MultiPoly directional;
    MultiPoly nilpotency;
};

/// Residuals of the two defining conditions applied to the plus-sector
/// K-term in Taylor mode:
///   (d/dt - (D.H) B(dl-2) - (K.H) A(dl-2))|_{t=0} P(D + tH, lambda)
///   (dl - 2)^{d/2+1} P(D, lambda)
/// Both vanish identically for correct data. Internally computed at inflated
/// orders so the returned boxes are exact.
PdeResiduals pde_residual(const ManifoldData& data, std::size_t k_index,
                          const std::vector<Rational>& h, int lambda_order,
                          int d_order, int nq = 12);

enum class BlowupSide { W, WPlusE };

/// Blow-up propagation: rank+1 data with Q extended by a (-1) block; each
/// class K spawns K +- (2n+1)E for n(n+1) <= d(K) with d~ = d - n(n+1) and
/// f~ = f / theta1~ truncated at q^{d~/2}. Both sides carry the same f~; the
/// W+E side extends w by the E-coordinate, whose sign bookkeeping the
/// evaluator's own sign exponent then reproduces.
ManifoldData blow_up(const ManifoldData& data, BlowupSide side);

/// Expand every term exactly over Q(i) into the truncated multivariate
/// polynomial in (lambda, d_1 .. d_r): Q(D) and K.D written out in
/// D-coordinates, exponentials expanded within the per-variable box.
MultiPoly taylor_expand(const ClosedFormInvariant& cf, int lambda_order,
                        const std::vector<int>& d_orders);

struct SimpleTypeTerm {
    std::vector<long> k;
    Rational a; // = f_0(K)
    int sign;   // (-1)^{(K.w + w^2)/2}, exposed separately
};

/// Requires all d(K) = 0; returns the Kronheimer-Mrowka-shape coefficients.
std::vector<SimpleTypeTerm> simple_type_form(const ManifoldData& data);

} // namespace qmf
