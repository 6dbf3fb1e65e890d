#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfactor/localfactor.hpp"

using namespace lfactor;

namespace {

LocalFactorRequest make_request(int n, int d1, int d2, int64_t p, int vy2,
                                int kmax) {
    auto pair = QuadraticSpacePair::split(d1, d2, p, 40);
    // y with y_1 = varpi^v (1,...,1-slot) matching Q(y_1) = 2Q'(y_2)
    std::vector<Rational> c1(d1, Rational(0)), c2(d2, Rational(0));
    Rational w = pow_rat(Rational(p), vy2);
    c1[0] = w; c1[d1 - 1] = w;
    c2[0] = w / 2; c2[d2 - 1] = w;
    PointY y = PointY::from_rationals(pair, c1, c2);
    LocalFactorRequest req{pair, y, SatakeParams::formal(n, p), BesselOptions{}, kmax};
    return req;
}

std::map<VarId, std::complex<double>> numeric_point(int n, double s) {
    std::map<VarId, std::complex<double>> at{
        {SQRT_Q, std::sqrt(3.0)},
        {Z_S, std::pow(3.0, -s)}};
    for (int i = 1; i <= n; ++i) at[X(i)] = std::polar(1.0, 0.5 * i + 0.3);
    return at;
}

} // namespace

TEST_CASE("GL_1 x GL_n gamma factor") {
    Monomial z{{Z_S, 1}};

    SUBCASE("n = 1, trivial chi'") {
        auto g = gamma_gl1_gln(1, Monomial{}, z);
        LaurentPoly num = LaurentPoly(Rational(1))
                          - LaurentPoly::monomial(Monomial{{X(1), 1}, {Z_S, 1}}, 1);
        LaurentPoly den = LaurentPoly(Rational(1))
                          - LaurentPoly::monomial(Monomial{{X(1), -1}, {SQRT_Q, -2}, {Z_S, -1}}, 1);
        CHECK(g == RationalFunction(num, den));
    }

    SUBCASE("involution: gamma(s) * gamma(1-s, dual) = 1") {
        for (int n : {1, 2, 3}) {
            Monomial cp{{SQRT_Q, -3}};
            Monomial z1m = mono_mul(Monomial{{SQRT_Q, -2}}, mono_inv(z));  // q^{-(1-s)}
            auto g = gamma_gl1_gln(n, cp, z);
            auto gd = gamma_gl1_gln(n, mono_inv(cp), z1m, true);
            CHECK(g * gd == RationalFunction(Rational(1)));
        }
    }

    SUBCASE("degrees") {
        auto g = gamma_gl1_gln(2, Monomial{}, z);
        CHECK(g.num.max_exp(Z_S) - g.num.min_exp(Z_S) == 2);
        CHECK(g.den.max_exp(Z_S) - g.den.min_exp(Z_S) == 2);
    }
}

TEST_CASE("C_{k,s} coefficients") {
    auto req = make_request(2, 2, 4, 3, 0, 3);

    SUBCASE("support cutoff") {
        CHECK(c_ks(req, -1).is_zero());
        CHECK(c_ks(req, -5).is_zero());
        CHECK(!c_ks(req, 0).is_zero());
    }

    SUBCASE("no s_1, s_2 dependence survives the extraction") {
        for (int k : {0, 1, 2}) {
            auto C = c_ks(req, k);
            CHECK(!C.num.depends_on(Z_S1));
            CHECK(!C.den.depends_on(Z_S1));
            CHECK(!C.num.depends_on(Z_S2));
            CHECK(!C.den.depends_on(Z_S2));
            CHECK(!C.num.depends_on(MU));
        }
    }

    SUBCASE("shifted support for val(4Q'(y_2)) = 2") {
        auto reqv = make_request(2, 2, 4, 3, 1, 4);
        // val(4Q'(y_2)) = val(Q'(y_2)) = 2 for y_2 scaled by varpi
        CHECK(c_ks(reqv, 1).is_zero());
        CHECK(!c_ks(reqv, 2).is_zero());
    }
}

TEST_CASE("theorem 2 series") {
    SUBCASE("shape at unit Q'(y_2)") {
        auto req = make_request(2, 2, 4, 3, 0, 4);
        auto sr = theorem2_value(req);
        CHECK(sr.kmin == 0);
        CHECK((int)sr.terms.size() == 5);
        CHECK(sr.prefactor.empty());          // |4Q'| = 1
        CHECK(sr.alpha == Rational(1, 4));    // both factors at v = 0
        CHECK(sr.partials.back() == sr.terms[0] + sr.terms[1] + sr.terms[2]
                                     + sr.terms[3] + sr.terms[4]);
    }

    SUBCASE("unit scaling of y_2 leaves the series unchanged") {
        auto pair = QuadraticSpacePair::split(2, 4, 3, 40);
        std::vector<Rational> c1{1, 0}, c2{Rational(1, 2), 0, 0, 1};
        std::vector<Rational> c2u{Rational(5, 2), 0, 0, 5};  // unit multiple
        std::vector<Rational> c1u{5, 0};
        // keep y in Y': Q(y_1) = 2Q'(y_2) needs matching rescale of y_1 by 5
        c1u[0] = 25;
        auto ra = LocalFactorRequest{pair, PointY::from_rationals(pair, c1, c2),
                                     SatakeParams::formal(2, 3), BesselOptions{}, 2};
        auto rb = LocalFactorRequest{pair, PointY::from_rationals(pair, c1u, c2u),
                                     SatakeParams::formal(2, 3), BesselOptions{}, 2};
        auto sa = theorem2_value(ra);
        auto sb = theorem2_value(rb);
        REQUIRE(sa.terms.size() == sb.terms.size());
        CHECK(sa.kmin == sb.kmin);
        CHECK(sa.alpha == sb.alpha);
        for (size_t i = 0; i < sa.terms.size(); ++i) CHECK(sa.terms[i] == sb.terms[i]);
    }

    SUBCASE("terms decay geometrically at large Re(s)") {
        auto req = make_request(2, 2, 4, 3, 0, 5);
        auto sr = theorem2_value(req);
        auto at = numeric_point(2, 6.0);
        REQUIRE(std::abs(sr.terms[0].eval(at)) > 0);
        // the first step can grow (the delta = 0 Bessel value is the
        // normalization one); geometric decay sets in from k = 1
        double prev = std::abs(sr.terms[1].eval(at));
        REQUIRE(prev > 0);
        for (size_t i = 2; i < sr.terms.size(); ++i) {
            double cur = std::abs(sr.terms[i].eval(at));
            CHECK(cur < 0.5 * prev);
            prev = cur;
        }
        CHECK(std::isfinite(sr.tail_estimate(at)));
        CHECK(std::isfinite(sr.eval(at).real()));
    }
}

TEST_CASE("lemma 6.5 region predicate") {
    int n = 2, d1 = 2, d2 = 4;
    RegionConstants cst(n, d1, d2);
    double s1 = cst.C1 + 2, ms2 = cst.C2 + 2;

    // the band has width n + 3: its midpoint passes
    double lo = s1 + ms2 - 2 - d1 / 2.0, hi = s1 + ms2 + n + 1 - d1 / 2.0;
    CHECK(hi - lo == doctest::Approx(n + 3.0));
    CHECK(region_lemma65(n, d1, d2, (lo + hi) / 2, s1, -ms2).ok);

    auto above = region_lemma65(n, d1, d2, hi + 1, s1, -ms2);
    CHECK(!above.ok);
    REQUIRE(above.violated.size() == 1);
    CHECK(above.violated[0] == "Re(s) <= Re(s_1) - Re(s_2) + n + 1 - d_1/2");

    auto below = region_lemma65(n, d1, d2, lo - 1, s1, -ms2);
    CHECK(!below.ok);
    CHECK(below.violated[0] == "Re(s_1) - Re(s_2) - 2 - d_1/2 <= Re(s)");

    // shrinking s_1 below C_1 also shifts the band, so check membership
    auto gates = region_lemma65(n, d1, d2, (lo + hi) / 2, cst.C1 - 1, -ms2);
    CHECK(!gates.ok);
    bool has_gate = false;
    for (const auto& m : gates.violated) has_gate |= (m == "Re(s_1) > C_1");
    CHECK(has_gate);
}
