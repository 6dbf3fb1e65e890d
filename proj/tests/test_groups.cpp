#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lfactor/groups.hpp"
#include "lfactor/iwasawa.hpp"

using namespace lfactor;

namespace {

using QMat = Mat<Rational>;
using QCtx = RingTraits<Rational>::Ctx;
using PMat = Mat<PAdicScalar>;
using PCtx = RingTraits<PAdicScalar>::Ctx;

Rational small_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    return Rational(num(rng), den(rng));
}

// random element of SL_2(Q)
QMat rand_sl2(std::mt19937& rng) {
    QCtx c;
    for (;;) {
        Rational a = small_rat(rng), b = small_rat(rng), cc = small_rat(rng);
        if (a == 0) continue;
        Rational d = (Rational(1) + b * cc) / a;
        QMat m(2, Rational(0));
        m.at(0, 0) = a; m.at(0, 1) = b; m.at(1, 0) = cc; m.at(1, 1) = d;
        return m;
    }
}

QMat diag2(const Rational& x, const Rational& y) {
    QMat m(2, Rational(0));
    m.at(0, 0) = x; m.at(1, 1) = y;
    return m;
}

QMat upper2(const Rational& x) {
    QMat m = QMat::identity(2, QCtx{});
    m.at(0, 1) = x;
    return m;
}

// diag(x, 3x3 block, y)
QMat corner5(const Rational& x, const QMat& midblk, const Rational& y) {
    QCtx c;
    QMat m(5, Rational(0));
    m.at(0, 0) = x; m.at(4, 4) = y;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(1 + i, 1 + j) = midblk.at(i, j);
    return m;
}

} // namespace

TEST_CASE("iota1: identity, kernel, homomorphism") {
    QCtx c;
    std::mt19937 rng(7);
    GPair<Rational> e{QMat::identity(2, c), QMat::identity(2, c)};
    CHECK(iota1(e, c) == QMat::identity(4, c));

    QMat neg = diag2(-1, -1);
    CHECK(iota1(GPair<Rational>{neg, neg}, c) == QMat::identity(4, c));

    for (int trial = 0; trial < 300; ++trial) {
        GPair<Rational> g{rand_sl2(rng), rand_sl2(rng)};
        GPair<Rational> h{rand_sl2(rng), rand_sl2(rng)};
        CHECK(iota1(gpair_mul(g, h), c) == iota1(g, c) * iota1(h, c));
        CHECK(is_so(iota1(g, c), c));
    }
}

TEST_CASE("iota2 and iota: form preservation and homomorphism") {
    QCtx c;
    std::mt19937 rng(11);
    CHECK(iota2(QMat::identity(4, c), c) == QMat::identity(5, c));
    QMat neg = diag2(-1, -1);
    CHECK(iota(GPair<Rational>{neg, neg}, c) == QMat::identity(5, c));

    for (int trial = 0; trial < 100; ++trial) {
        GPair<Rational> g{rand_sl2(rng), rand_sl2(rng)};
        GPair<Rational> h{rand_sl2(rng), rand_sl2(rng)};
        QMat ig = iota(g, c), ih = iota(h, c);
        CHECK(is_so(ig, c));
        CHECK(iota(gpair_mul(g, h), c) == ig * ih);
    }

    QMat bad = QMat::identity(4, c);
    bad.at(0, 0) = 2;
    CHECK_THROWS_AS(iota2(bad, c), std::domain_error);
}

TEST_CASE("torus images: corner entries with the middle SO3 block") {
    QCtx c;
    for (Rational b : {Rational(3), Rational(2, 5), Rational(-7, 4)}) {
        // G_1 = ((1,0;0,b^{-1}), (1,0;0,b)) -> diag(1, R(b), 1)
        GPair<Rational> g1{diag2(1, Rational(1) / b), diag2(1, b)};
        CHECK(iota(g1, c) == corner5(1, so3_R(b, c), 1));

        // A_1 = ((a,0;0,a^{-1}), 1) -> diag(a, R(a), a^{-1})
        GPair<Rational> a1{diag2(b, Rational(1) / b), QMat::identity(2, c)};
        CHECK(iota(a1, c) == corner5(b, so3_R(b, c), Rational(1) / b));

        // A_2 = (1, (a,0;0,a^{-1})) -> diag(a, R(a^{-1}), a^{-1})
        GPair<Rational> a2{QMat::identity(2, c), diag2(b, Rational(1) / b)};
        CHECK(iota(a2, c) == corner5(b, so3_R(Rational(1) / b, c), Rational(1) / b));

        // M = ((m,0;0,m^{-1}) twice) -> diag(m^2, I_3, m^{-2})
        GPair<Rational> m{diag2(b, Rational(1) / b), diag2(b, Rational(1) / b)};
        CHECK(iota(m, c) == corner5(b * b, QMat::identity(3, c), Rational(1) / (b * b)));
    }

    // R is itself a one-parameter subgroup preserving the form
    Rational b(5, 3);
    CHECK(is_so(so3_R(b, c), c));
    CHECK(so3_R(b, c) * so3_R(Rational(7), c) == so3_R(b * Rational(7), c));
}

TEST_CASE("unipotent images") {
    QCtx c;
    Rational cc(5, 2), b(-3, 4);

    // N_1 = ((1,c/2;0,1),(1,-c;0,1))
    GPair<Rational> n1{upper2(cc / 2), upper2(-cc)};
    QMat e1 = QMat::identity(5, c);
    e1.at(0, 2) = cc;
    e1.at(0, 4) = -cc * cc / 2;
    e1.at(2, 4) = -cc;
    CHECK(iota(n1, c) == e1);

    // N_2 = ((1,b;0,1),(1,2b;0,1))
    GPair<Rational> n2{upper2(b), upper2(2 * b)};
    QMat e2 = QMat::identity(5, c);
    e2.at(0, 1) = b;
    e2.at(0, 3) = -2 * b;
    e2.at(0, 4) = 2 * b * b;
    e2.at(1, 4) = 2 * b;
    e2.at(3, 4) = -b;
    CHECK(iota(n2, c) == e2);
    CHECK(is_so(e2, c));
}

TEST_CASE("image of the parabolic Q_G") {
    QCtx c;
    Rational m(3, 2), cc(5), b(-2, 3);
    GPair<Rational> g = gpair_mul(
        gpair_mul(GPair<Rational>{diag2(m, Rational(1) / m), diag2(m, Rational(1) / m)},
                  GPair<Rational>{upper2(cc / 2), upper2(-cc)}),
        GPair<Rational>{upper2(b), upper2(2 * b)});
    QMat P = iota(g, c);
    // upper triangular, diag (m^2,1,1,1,m^-2)
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < i; ++j) CHECK(P.at(i, j) == 0);
    CHECK(P.at(0, 0) == m * m);
    CHECK(P.at(4, 4) == Rational(1) / (m * m));
    for (int i = 1; i < 4; ++i) CHECK(P.at(i, i) == 1);
    // entries (1,5),(2,5),(4,5) determined by (1,2),(1,3),(1,4)
    Rational B = P.at(0, 1), C = P.at(0, 2);
    CHECK(P.at(0, 3) == -2 * B);
    CHECK(P.at(3, 4) == -B / (m * m));
    CHECK(P.at(1, 4) == 2 * B / (m * m));
    CHECK(P.at(2, 4) == -C / (m * m));
    Rational bp = P.at(3, 4), cp = P.at(2, 4);
    CHECK(P.at(0, 4) == (2 * bp * bp - cp * cp / 2) * (m * m));
}

TEST_CASE("special elements lie in SO_{2n+1}") {
    QCtx c;
    for (int n : {2, 3, 4}) {
        CHECK(is_so(w_element<Rational>(n, c), c));
        CHECK(is_so(w0_element<Rational>(n, c), c));
        CHECK(is_so(wtilde0_element<Rational>(n, c), c));
        // w' = diag(I_n, -1, I_n) is orthogonal of determinant -1
        QMat wp = wprime_element<Rational>(n, c);
        QMat J = j_matrix<Rational>(2 * n + 1, c);
        CHECK(wp.transpose() * J * wp == J);
        CHECK(wp.det(c) == -1);
        CHECK(w0_element<Rational>(n, c) * w0_element<Rational>(n, c) ==
              QMat::identity(2 * n + 1, c));
    }

    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        QMat x = rand_sl2(rng) * diag2(small_rat(rng) + 7, small_rat(rng) + 7);
        QMat full(3, Rational(0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) full.at(i, j) = x.at(i, j);
        full.at(2, 2) = small_rat(rng) + 9;
        full.at(0, 2) = small_rat(rng);
        CHECK(is_so(v_of_x(full, c), c));
    }
    CHECK(v_of_x(QMat::identity(3, c), c) == QMat::identity(7, c));

    // so5 block embedding is compatible with multiplication
    GPair<Rational> g{rand_sl2(rng), rand_sl2(rng)}, h{rand_sl2(rng), rand_sl2(rng)};
    CHECK(embed_so5_in_H(iota(g, c), 3, c) * embed_so5_in_H(iota(h, c), 3, c) ==
          embed_so5_in_H(iota(gpair_mul(g, h), c), 3, c));
    CHECK(is_so(embed_so5_in_H(iota(g, c), 3, c), c));
}

TEST_CASE("torus powers of the uniformizer") {
    PCtx c{3, 8};
    auto t = varpi_H_delta({2, -1, 0}, c);
    CHECK(is_so(t, c));
    CHECK(t.at(0, 0).val == 2);
    CHECK(t.at(6, 6).val == -2);
    CHECK(t.at(1, 1).val == -1);
    CHECK(t.at(5, 5).val == 1);
    CHECK(t.at(3, 3) == RingTraits<PAdicScalar>::one(c));
}

TEST_CASE("characters") {
    PCtx c{3, 8};
    int n = 3;
    CHECK(std::abs(psi1_NH(PMat::identity(2 * n + 1, c), n) -
                   std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(psi1_prime(PMat::identity(2 * n + 1, c), n) -
                   std::complex<double>(1, 0)) < 1e-12);

    // psi_0(a_y z a_y^{-1}) = psi_{y,Q'}(z)
    PAdicScalar m4q = PAdicScalar::from_rational(3, Rational(6), 8);  // -4Q'(y_2)
    PMat ay = PMat::identity(n, c);
    ay.at(0, 0) = m4q;
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        PMat z = PMat::identity(n, c);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                z.at(i, j) = PAdicScalar::from_rational(3, small_rat(rng) / 9, 8);
        auto lhs = psi0_Zn(ay * z * ay.inverse(c));
        auto rhs = psi_yQ_Zn(z, m4q);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("modulus exponents") {
    CHECK(delta_B_gln_exp({1, 0, 0}) == -2);        // |t_1|^{n-1} at n=3
    CHECK(delta_B_gln_exp({0, 0, 1}) == 2);
    CHECK(delta_Qn_exp(1, 3) == -3);                // delta_{Q_n}(v(diag(w,1,1))) = q^{-n}
    CHECK(delta_B_H_exp({1, 0, 0}) == -5);          // q^{-(2n-1)}, square root q^{-(2n-1)/2}
    CHECK(delta_B_H_exp({0, 1}) == -1);
}

TEST_CASE("GL_n Iwasawa decomposition") {
    PCtx c{3, 10};
    std::mt19937 rng(41);

    // already integral with unit determinant: t trivial
    {
        PMat k = PMat::identity(3, c);
        k.at(0, 1) = PAdicScalar::from_integer(3, 5, 10);
        k.at(2, 0) = PAdicScalar::from_integer(3, 7, 10);
        auto dec = iwasawa_gln(k, c);
        for (auto v : dec.tval) CHECK(v == 0);
        for (auto& e : dec.z.a) CHECK((e.is_zero() || e.val >= 0));
    }

    // lower unipotent with w^{-1}: |t| = (q, q^{-1})
    {
        PMat g = PMat::identity(2, c);
        g.at(1, 0) = PAdicScalar::from_rational(3, Rational(1, 3), 10);
        auto dec = iwasawa_gln(g, c);
        CHECK(dec.tval == std::vector<int64_t>{1, -1});
    }

    // reassembly z t k == g on random inputs
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3;
        PMat g(n, RingTraits<PAdicScalar>::zero(c));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g.at(i, j) = PAdicScalar::from_rational(3, small_rat(rng) / 3, 10);
        bool ok = true;
        try { g.inverse(c); } catch (const std::domain_error&) { ok = false; }
        if (!ok) continue;
        auto dec = iwasawa_gln(g, c);
        PMat t = PMat::identity(n, c);
        for (int i = 0; i < n; ++i)
            t.at(i, i) = RingTraits<PAdicScalar>::one(c).shifted(dec.tval[i]);
        CHECK(dec.z * t * dec.k == g);
        // k is integral with unit determinant
        for (auto& e : dec.k.a) CHECK((e.is_zero() || e.val >= 0));
        CHECK(dec.k.det(c).val == 0);
        // z is upper unipotent
        for (int i = 0; i < n; ++i) {
            CHECK(dec.z.at(i, i) == RingTraits<PAdicScalar>::one(c));
            for (int j = 0; j < i; ++j) CHECK(dec.z.at(i, j).is_zero());
        }
    }
}

namespace {

// random element of SO_{2n+1}(O) as a word in integral generators
PMat rand_KH(int n, std::mt19937& rng, const PCtx& c) {
    int N = 2 * n + 1;
    detail::HReduction red(PMat::identity(N, c), c);
    std::uniform_int_distribution<int> coin(0, 2), row(0, N - 1), amt(-4, 4);
    for (int step = 0; step < 12; ++step) {
        int r = row(rng), cc = row(rng);
        PAdicScalar a = PAdicScalar::from_integer(c.p, amt(rng), c.prec);
        switch (coin(rng)) {
            case 0:
                if (r != cc && r != n && cc != n && r != N - 1 - cc)
                    red.long_op(r, cc, a);
                break;
            case 1:
                if (cc != n) red.short_op_to_mid(cc, a);
                break;
            default:
                if (r != n && cc != n) red.move_pivot(cc, r);
        }
    }
    return red.g;
}

PMat rand_upper_unipotent_H(int n, std::mt19937& rng, const PCtx& c) {
    int N = 2 * n + 1;
    detail::HReduction red(PMat::identity(N, c), c);
    std::uniform_int_distribution<int> amt(-6, 6), sh(0, 2);
    for (int i = 0; i < n; ++i) {
        PAdicScalar b = PAdicScalar::from_rational(
            c.p, Rational(amt(rng), 1), c.prec).shifted(-sh(rng));
        red.short_op_from_mid(i, b);
        for (int j = i + 1; j < n; ++j) {
            PAdicScalar a = PAdicScalar::from_rational(
                c.p, Rational(amt(rng), 1), c.prec).shifted(-sh(rng));
            red.long_op(i, j, a);
        }
    }
    return red.g;
}

} // namespace

TEST_CASE("SO_{2n+1} Iwasawa decomposition") {
    std::mt19937 rng(99);
    for (int n : {2, 3}) {
        PCtx c{3, 30};
        int N = 2 * n + 1;

        // integral input: all torus valuations vanish
        {
            PMat k0 = rand_KH(n, rng, c);
            REQUIRE(is_so(k0, c));
            auto dec = iwasawa_H(k0, c);
            for (auto v : dec.tval) CHECK(v == 0);
        }

        // pure torus input
        {
            std::vector<int> d(n);
            for (int i = 0; i < n; ++i) d[i] = (i % 2 == 0) ? 2 : -1;
            auto dec = iwasawa_H(varpi_H_delta(d, c), c);
            for (int i = 0; i < n; ++i) CHECK(dec.tval[i] == d[i]);
        }

        // construct u t k, recover |t|, reassemble
        for (int trial = 0; trial < 10; ++trial) {
            std::uniform_int_distribution<int> dv(-2, 2);
            std::vector<int> d(n);
            for (int i = 0; i < n; ++i) d[i] = dv(rng);
            PMat u = rand_upper_unipotent_H(n, rng, c);
            PMat t = varpi_H_delta(d, c);
            PMat k0 = rand_KH(n, rng, c);
            PMat h = u * t * k0;
            REQUIRE(is_so(h, c));

            auto dec = iwasawa_H(h, c);
            for (int i = 0; i < n; ++i) CHECK(dec.tval[i] == d[i]);
            // u upper unipotent, k integral in SO, t_i t_{N+1-i} = 1
            for (int i = 0; i < N; ++i) {
                CHECK(dec.u.at(i, i) == RingTraits<PAdicScalar>::one(c));
                for (int j = 0; j < i; ++j) CHECK(dec.u.at(i, j).is_zero());
                CHECK(dec.t[i] * dec.t[N - 1 - i] == RingTraits<PAdicScalar>::one(c));
            }
            for (auto& e : dec.k.a) CHECK((e.is_zero() || e.val >= 0));
            CHECK(is_so(dec.k, c));
            PMat T = PMat::identity(N, c);
            for (int i = 0; i < N; ++i) T.at(i, i) = dec.t[i];
            CHECK(dec.u * T * dec.k == h);
        }
    }
}

TEST_CASE("SO3 closed form agrees with the generic decomposition") {
    PCtx c{5, 22};
    for (int v : {2, 1, 0, -1, -3}) {
        for (int unit : {1, 2, -3}) {
            PAdicScalar b = PAdicScalar::from_integer(5, unit, 22).shifted(v);
            PMat R = so3_R(b, c);
            REQUIRE(is_so(R, c));
            auto closed = so3_iwasawa_closed(b);
            CHECK(closed.cconst == (v >= 0 ? 2 : -2));
            CHECK(closed.t == floor_bracket(b));

            auto dec = iwasawa_H(R, c);
            CHECK(dec.tval[0] == closed.t.val);

            // direct check: n(c)^{-1} R diag(t,1,t^{-1})^{-1} is in SO_3(O)
            PAdicScalar cconst = PAdicScalar::from_integer(5, closed.cconst, 22);
            PMat nc = so3_n(cconst, c);
            PMat tm = PMat::identity(3, c);
            tm.at(0, 0) = closed.t;
            tm.at(2, 2) = closed.t.inv();
            PMat k = tm.inverse(c) * nc.inverse(c) * R;
            CHECK(is_so(k, c));
            for (auto& e : k.a) CHECK((e.is_zero() || e.val >= 0));
        }
    }
}
