#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmf/donaldson.hpp"
#include "qmf/errors.hpp"
#include "qmf/serialize.hpp"

using namespace qmf;

namespace {

ManifoldData worked_example()
{
    // the schema example: hyperbolic form, one class pair at d = 2
    ManifoldData data;
    data.b_plus = 3;
    data.rank = 2;
    data.q = {{0, 1}, {1, 0}};
    data.w = {1, 0};
    data.classes.push_back({{2, 0}, 2, {Rational(1), Rational(3, 2)}});
    data.classes.push_back({{-2, 0}, 2, {Rational(1), Rational(3, 2)}});
    return data;
}

} // namespace

TEST_CASE("validation")
{
    ManifoldData empty;
    empty.rank = 1;
    empty.q = {{1}};
    empty.w = {0};
    CHECK(validate_manifold(empty).empty());
    CHECK(evaluate_bracket(empty, 4).terms.empty());

    ManifoldData data = worked_example();
    CHECK(validate_manifold(data).empty());

    data.classes[0].d = 3;
    bool has_error = false;
    for (const auto& d : validate_manifold(data)) {
        has_error = has_error || d.severity == Severity::Error;
    }
    CHECK(has_error);

    data = worked_example();
    data.classes.pop_back();
    bool warned = false;
    for (const auto& d : validate_manifold(data)) {
        warned = warned || (d.severity == Severity::Warning && d.code == "mirror-class");
    }
    CHECK(warned);

    // odd sign exponent is a hard error: K.w + w^2 = 1 for K = (0,1)
    data = worked_example();
    data.classes[0].k = {0, 1};
    data.classes[1].k = {0, -1};
    bool parity_error = false;
    for (const auto& d : validate_manifold(data)) {
        parity_error = parity_error || d.code == "sign-parity";
    }
    CHECK(parity_error);
}

TEST_CASE("degree d0 and the global phase")
{
    ManifoldData data;
    data.b_plus = 3;
    data.rank = 1;
    data.q = {{-1}};
    data.w = {0};
    CHECK(degree_d0(data, {0}) == -6);
    CHECK(degree_d0(data, {1}) == -5); // w^2 = -1
    CHECK(Gaussian::i_pow(6) == Gaussian(-1));
    data.b_plus = 2;
    CHECK_THROWS_AS(degree_d0(data, {0}), math_error);
}

TEST_CASE("bracket polynomial worked examples")
{
    // d = 0: only q^0 survives
    const SlotPoly c = bracket_polynomial({{1}, 0, {Rational(5, 3)}}, 2);
    CHECK(c.coeff(0, 0, 0) == Gaussian(Rational(5, 3)));
    CHECK(c.terms().size() == 1);

    // d = 2, f = [c0, c1] -> c1 + c0(64 l + 8 QD + 4 KD)
    const Rational c0(2), c1(-7);
    const SlotPoly p = bracket_polynomial({{1}, 2, {c0, c1}}, 3);
    CHECK(p.coeff(0, 0, 0) == Gaussian(c1));
    CHECK(p.coeff(1, 0, 0) == Gaussian(c0 * 64));
    CHECK(p.coeff(0, 1, 0) == Gaussian(c0 * 8));
    CHECK(p.coeff(0, 0, 1) == Gaussian(c0 * 4));

    // d = 2, f = [0, 1] -> 1
    const SlotPoly one = bracket_polynomial({{1}, 2, {Rational(0), Rational(1)}}, 3);
    CHECK(one.coeff(0, 0, 0) == Gaussian(1));
    CHECK(one.terms().size() == 1);

    CHECK_THROWS_AS(bracket_polynomial({{1}, 4, {Rational(1), Rational(0), Rational(0)}}, 2),
                    order_error);
}

TEST_CASE("main evaluator worked example")
{
    ManifoldData data;
    data.b_plus = 3;
    data.rank = 1;
    data.q = {{1}};
    data.w = {0};
    const Rational c0(1), c1(3, 2);
    data.classes.push_back({{1}, 2, {c0, c1}});
    data.classes.push_back({{-1}, 2, {c0, c1}});
    const ClosedFormInvariant cf = evaluate_bracket(data, 4);
    REQUIRE(cf.terms.size() == 4);

    // plus sector of K: sign +1 (K.w + w^2 = 0), bracket as in the example
    const CFTerm& plus = cf.terms[0];
    CHECK(plus.sector == 1);
    CHECK_FALSE(plus.kd_imag);
    CHECK(plus.prefactor == Gaussian(1));
    CHECK(plus.poly.coeff(0, 0, 0) == Gaussian(c1));
    CHECK(plus.poly.coeff(1, 0, 0) == Gaussian(64 * c0));

    // minus sector: i^{-d0} = i^6 = -1 for w = 0, b+ = 3; substitutions applied
    const CFTerm& minus = cf.terms[1];
    CHECK(minus.sector == -1);
    CHECK(minus.kd_imag);
    CHECK(minus.prefactor == Gaussian(-1));
    CHECK(minus.poly.coeff(0, 0, 0) == Gaussian(c1));
    CHECK(minus.poly.coeff(1, 0, 0) == Gaussian(-64 * c0));
    CHECK(minus.poly.coeff(0, 1, 0) == Gaussian(-8 * c0));
    CHECK(minus.poly.coeff(0, 0, 1) == Gaussian(c0 * 4) * Gaussian::i());
}

TEST_CASE("operator evaluator agrees on the worked example")
{
    const ManifoldData data = worked_example();
    std::vector<PKRecord> pks;
    for (const auto& rec : data.classes) {
        pks.push_back(PK_from_fK(rec));
    }
    // d = 2: P = c1 + 64 c0 lambda
    CHECK(pks[0].p == std::vector<Rational>{Rational(3, 2), Rational(64)});

    const ClosedFormInvariant a = evaluate_bracket(data, 4);
    const ClosedFormInvariant b = evaluate_operator(data, pks);
    const std::vector<int> d_orders(2, 5);
    CHECK(taylor_expand(a, 5, d_orders) == taylor_expand(b, 5, d_orders));

    // constant polynomials: operators act trivially
    ManifoldData st;
    st.b_plus = 3;
    st.rank = 1;
    st.q = {{1}};
    st.w = {0};
    st.classes.push_back({{1}, 0, {Rational(4)}});
    st.classes.push_back({{-1}, 0, {Rational(4)}});
    std::vector<PKRecord> stp = {{{1}, 0, {Rational(4)}}, {{-1}, 0, {Rational(4)}}};
    const ClosedFormInvariant c = evaluate_operator(st, stp);
    CHECK(c.terms[0].poly.coeff(0, 0, 0) == Gaussian(4));
    CHECK(c.terms[0].poly.terms().size() == 1);

    // zero polynomial gives the zero term
    std::vector<PKRecord> zp = {{{1}, 0, {Rational(0)}}, {{-1}, 0, {Rational(0)}}};
    const ClosedFormInvariant z = evaluate_operator(st, zp);
    CHECK(z.terms[0].poly.is_zero());
}

TEST_CASE("operator evaluator agrees at order datum six")
{
    // exercises the cubic terms of the operator series and the triangular
    // conversion beyond the randomized-suite range
    ManifoldData data;
    data.b_plus = 5;
    data.rank = 1;
    data.q = {{2}};
    data.w = {0};
    const std::vector<Rational> f = {Rational(2), Rational(-1, 3), Rational(5, 2),
                                     Rational(7)};
    data.classes.push_back({{1}, 6, f});
    BasicClassRecord mirror{{-1}, 6, f};
    for (auto& x : mirror.f) {
        x = -x; // (1 + b+)/2 = 3 odd
    }
    data.classes.push_back(mirror);
    std::vector<PKRecord> pks;
    for (const auto& rec : data.classes) {
        pks.push_back(PK_from_fK(rec));
        CHECK(fK_from_PK(pks.back()).f == rec.f);
    }
    const ClosedFormInvariant a = evaluate_bracket(data, 6);
    const ClosedFormInvariant b = evaluate_operator(data, pks);
    CHECK(taylor_expand(a, 6, {6}) == taylor_expand(b, 6, {6}));

    const PdeResiduals res = pde_residual(data, 0, {Rational(3, 2)}, 4, 3, 6);
    CHECK(res.directional.is_zero());
    CHECK(res.nilpotency.is_zero());
}

TEST_CASE("f and P presentations")
{
    // d = 0 is the identity
    const PKRecord p0 = PK_from_fK({{1}, 0, {Rational(5)}});
    CHECK(p0.p == std::vector<Rational>{Rational(5)});
    const BasicClassRecord f0 = fK_from_PK(p0);
    CHECK(f0.f == std::vector<Rational>{Rational(5)});

    // d = 2 worked conversion
    const PKRecord p2 = PK_from_fK({{1}, 2, {Rational(2), Rational(1, 3)}});
    CHECK(p2.p == std::vector<Rational>{Rational(1, 3), Rational(128)});

    CHECK_THROWS_AS(PK_from_fK({{1}, 2, {Rational(1)}}), math_error);
    CHECK_THROWS_AS(fK_from_PK({{1}, 2, {Rational(1)}}), math_error);
}

TEST_CASE("pde residuals")
{
    const ManifoldData data = worked_example();
    for (std::size_t c = 0; c < data.classes.size(); ++c) {
        const PdeResiduals res = pde_residual(data, c, {Rational(1), Rational(-2)}, 4, 3, 5);
        CHECK(res.directional.is_zero());
        CHECK(res.nilpotency.is_zero());
    }

    // d = 0 case
    ManifoldData st;
    st.b_plus = 3;
    st.rank = 1;
    st.q = {{2}};
    st.w = {0};
    st.classes.push_back({{1}, 0, {Rational(1)}});
    st.classes.push_back({{-1}, 0, {Rational(1)}});
    const PdeResiduals res = pde_residual(st, 0, {Rational(1)}, 3, 3, 4);
    CHECK(res.directional.is_zero());
    CHECK(res.nilpotency.is_zero());
}

TEST_CASE("blow-up propagation")
{
    // d = 0: f~ = [1/2]
    ManifoldData st;
    st.b_plus = 3;
    st.rank = 1;
    st.q = {{1}};
    st.w = {0};
    st.classes.push_back({{1}, 0, {Rational(1)}});
    st.classes.push_back({{-1}, 0, {Rational(1)}});
    const ManifoldData blown = blow_up(st, BlowupSide::W);
    REQUIRE(blown.classes.size() == 4);
    CHECK(blown.rank == 2);
    CHECK(blown.q[1][1] == -1);
    CHECK(blown.q[0][1] == 0);
    CHECK(blown.w == std::vector<long>{0, 0});
    CHECK(blown.classes[0].k == std::vector<long>{1, 1});
    CHECK(blown.classes[0].f == std::vector<Rational>{Rational(1, 2)});
    CHECK(validate_manifold(blown).empty());

    // the w+e side extends w
    const ManifoldData blown_e = blow_up(st, BlowupSide::WPlusE);
    CHECK(blown_e.w == std::vector<long>{0, 1});
    CHECK(validate_manifold(blown_e).empty());

    // d = 2 class list
    const ManifoldData data = worked_example();
    const ManifoldData b2 = blow_up(data, BlowupSide::W);
    CHECK(b2.classes.size() == 8);
    CHECK(b2.classes[0].k == std::vector<long>{2, 0, 1});
    CHECK(b2.classes[0].d == 2);
    CHECK(b2.classes[2].k == std::vector<long>{2, 0, 3});
    CHECK(b2.classes[2].d == 0);
    // f~ = f/theta1~ truncations: f = [1, 3/2] -> [1/2, 1/4] and [1/2]
    CHECK(b2.classes[0].f == std::vector<Rational>{Rational(1, 2), Rational(1, 4)});
    CHECK(b2.classes[2].f == std::vector<Rational>{Rational(1, 2)});
}

TEST_CASE("taylor expansion basics")
{
    ManifoldData st;
    st.b_plus = 3;
    st.rank = 1;
    st.q = {{1}};
    st.w = {0};
    const ClosedFormInvariant zero = evaluate_bracket(st, 4);
    CHECK(taylor_expand(zero, 3, {3}).is_zero());

    // e^{2 lambda} alone: 1 + 2l + 2l^2 + 4/3 l^3
    ClosedFormInvariant cf;
    cf.q = {{1}};
    CFTerm term;
    term.sector = 1;
    term.prefactor = Gaussian(1);
    term.k = {0};
    term.poly.add(0, 0, 0, 0, Gaussian(1));
    cf.terms.push_back(term);
    const MultiPoly p = taylor_expand(cf, 3, {0});
    CHECK(p.coeff({0, 0}) == Gaussian(1));
    CHECK(p.coeff({1, 0}) == Gaussian(2));
    CHECK(p.coeff({2, 0}) == Gaussian(2));
    CHECK(p.coeff({3, 0}) == Gaussian(Rational(4, 3)));
}

TEST_CASE("taylor expansion against a multinomial oracle")
{
    // rank 1, plus sector only: coefficient of lambda^a d^b in
    // f0 * e^{2 lambda} e^{(q/2) d^2} e^{(k q) d} is
    // f0 * 2^a/a! * sum_{2i+j=b} (q/2)^i (kq)^j / (i! j!)
    const long q11 = 3, k1 = 2;
    const Rational f0(5, 4);
    ClosedFormInvariant cf;
    cf.q = {{q11}};
    CFTerm term;
    term.sector = 1;
    term.prefactor = Gaussian(1);
    term.k = {k1};
    term.poly.add(0, 0, 0, 0, Gaussian(f0));
    cf.terms.push_back(term);
    const int l_ord = 4, d_ord = 6;
    const MultiPoly got = taylor_expand(cf, l_ord, {d_ord});
    for (int a = 0; a <= l_ord; ++a) {
        for (int b = 0; b <= d_ord; ++b) {
            Rational want(0);
            for (int i = 0; 2 * i <= b; ++i) {
                const int j = b - 2 * i;
                Rational t(1);
                for (int e = 0; e < i; ++e) {
                    t *= Rational(q11, 2);
                }
                for (int e = 0; e < j; ++e) {
                    t *= Rational(k1 * q11);
                }
                want += t / (factorial(static_cast<unsigned long>(i))
                             * factorial(static_cast<unsigned long>(j)));
            }
            Rational lam(1);
            for (int e = 0; e < a; ++e) {
                lam *= 2;
            }
            want *= f0 * lam / factorial(static_cast<unsigned long>(a));
            CHECK(got.coeff({a, b}) == Gaussian(want));
        }
    }
}

TEST_CASE("simple type")
{
    ManifoldData st;
    st.b_plus = 3;
    st.rank = 1;
    st.q = {{1}};
    st.w = {0};
    st.classes.push_back({{1}, 0, {Rational(7, 2)}});
    st.classes.push_back({{-1}, 0, {Rational(7, 2)}});
    const auto terms = simple_type_form(st);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].a == Rational(7, 2));
    CHECK(terms[0].sign == 1);

    ManifoldData mixed = st;
    mixed.classes[0].d = 2;
    mixed.classes[0].f = {Rational(1), Rational(1)};
    mixed.classes[1].d = 2;
    mixed.classes[1].f = {Rational(1), Rational(1)};
    CHECK_THROWS_AS(simple_type_form(mixed), math_error);
}

TEST_CASE("serialization")
{
    const ManifoldData data = worked_example();
    const ManifoldData back = manifold_from_json(manifold_json(data));
    CHECK(back.b_plus == data.b_plus);
    CHECK(back.q == data.q);
    CHECK(back.w == data.w);
    CHECK(back.classes[0].k == data.classes[0].k);
    CHECK(back.classes[0].f == data.classes[0].f);

    // the schema example from the interface description parses
    const auto j = parse_json(R"({"b_plus":3,"rank":2,"Q":[[0,1],[1,0]],"w":[1,0],
        "classes":[{"K":[2,0],"d":2,"f":["1","3/2"]}]})");
    const ManifoldData parsed = manifold_from_json(j);
    CHECK(parsed.classes.size() == 1);
    CHECK(parsed.classes[0].f[1] == Rational(3, 2));

    const ClosedFormInvariant cf = evaluate_bracket(data, 4);
    CHECK(closed_form_from_json(closed_form_json(cf)) == cf);

    std::vector<PKRecord> pks;
    for (const auto& rec : data.classes) {
        pks.push_back(PK_from_fK(rec));
    }
    const auto [hdr, pks2] = pk_manifold_from_json(pk_manifold_json(data, pks));
    REQUIRE(pks2.size() == pks.size());
    CHECK(pks2[0].p == pks[0].p);
    CHECK(hdr.rank == data.rank);

    CHECK_THROWS_AS(manifold_from_json(parse_json(R"({"rank":1})")), io_error);
    CHECK_THROWS_AS(parse_json("{nope"), io_error);

    // q-series text form
    const QSeries s = QSeries::monomial(Gaussian(Rational(1, 2)), -12, 48);
    const std::string text = qseries_text(s);
    CHECK(text.find("-12/24\t1/2\t0") != std::string::npos);
    const QSeries rs = qseries_from_json(qseries_json(s));
    CHECK(rs == s);
}
