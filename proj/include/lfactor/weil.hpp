#pragma once

#include <vector>
#include <map>
#include <complex>
#include <stdexcept>

#include "groups.hpp"
#include "iwasawa.hpp"
#include "integrate.hpp"
#include "ratfunc.hpp"

namespace lfactor {

inline long val_p_rational(const Rational& r, int64_t p) {
    if (r == 0) throw std::domain_error("p-adic valuation of zero");
    Int nu = boost::multiprecision::numerator(r);
    Int de = boost::multiprecision::denominator(r);
    long v = 0;
    while (nu % p == 0) { nu /= p; ++v; }
    while (de % p == 0) { de /= p; --v; }
    return v;
}

/**
 * A pair of even-dimensional quadratic spaces (V1, Q), (V2, Q') over F.
 * Each space is given by its Gram matrix, symmetric and invertible over O
 * (entries integral, unit determinant); the form is Q(y) = y^T G y.
 * d2 > d1 is not required here; the closed-form local factor imposes it
 * separately at its own entry point.
 */
struct QuadraticSpacePair {
    int d1, d2;
    Mat<Rational> gram1, gram2;
    int64_t p;
    int prec;

    QuadraticSpacePair(int d1_, int d2_,
                       const Mat<Rational>& g1, const Mat<Rational>& g2,
                       int64_t p_, int prec_)
        : d1(d1_), d2(d2_), gram1(g1), gram2(g2), p(p_), prec(prec_) {
        if (p <= 2 || p % 2 == 0) throw std::invalid_argument("prime must be odd");
        check_space(d1, gram1);
        check_space(d2, gram2);
    }

    // Direct sum of hyperbolic planes: Gram antidiag(1/2,...,1/2), so that
    // Q(y) = sum_i y_i y_{d-1-i} over the complementary index pairs.
    static QuadraticSpacePair split(int d1_, int d2_, int64_t p_, int prec_) {
        auto hyp = [](int d) {
            Mat<Rational> g(d, Rational(0));
            for (int i = 0; i < d; ++i) g.at(i, d - 1 - i) = Rational(1, 2);
            return g;
        };
        return QuadraticSpacePair(d1_, d2_, hyp(d1_), hyp(d2_), p_, prec_);
    }

private:
    void check_space(int d, const Mat<Rational>& g) const {
        if (d <= 0 || d % 2 != 0) throw std::invalid_argument("dimension must be even and positive");
        if (g.n != d) throw std::invalid_argument("Gram size does not match dimension");
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (g.at(i, j) != g.at(j, i)) throw std::invalid_argument("Gram matrix not symmetric");
                if (g.at(i, j) != 0 && val_p_rational(g.at(i, j), p) < 0)
                    throw std::invalid_argument("Gram matrix not integral");
            }
        Rational det = g.det(RingTraits<Rational>::Ctx{});
        if (det == 0 || val_p_rational(det, p) != 0)
            throw std::invalid_argument("Gram matrix not invertible over O");
    }
};

inline PAdicScalar eval_quadratic_form(const Mat<Rational>& gram,
                                       const std::vector<PAdicScalar>& y,
                                       int64_t p, int prec) {
    if ((int)y.size() != gram.n) throw std::invalid_argument("coordinate count mismatch");
    PAdicScalar acc = PAdicScalar::zero_at(p);
    for (int i = 0; i < gram.n; ++i)
        for (int j = 0; j < gram.n; ++j) {
            if (gram.at(i, j) == 0) continue;
            PAdicScalar c = PAdicScalar::from_rational(p, gram.at(i, j), prec);
            acc = acc + c * y[i] * y[j];
        }
    return acc;
}

/**
 * A point of V(F) = V1 + V2 with cached form values and coordinate
 * valuations. val(y_i) is the minimum coordinate valuation, so that
 * "a y_i integral" reads val(a) + val(y_i) >= 0.
 */
struct PointY {
    std::vector<PAdicScalar> y1, y2;
    bool zero1 = true, zero2 = true;
    int64_t v1 = 0, v2 = 0;
    PAdicScalar Qy1, Qpy2;

    PointY(const QuadraticSpacePair& sp,
           std::vector<PAdicScalar> c1, std::vector<PAdicScalar> c2)
        : y1(std::move(c1)), y2(std::move(c2)) {
        scan(y1, zero1, v1);
        scan(y2, zero2, v2);
        Qy1  = eval_quadratic_form(sp.gram1, y1, sp.p, sp.prec);
        Qpy2 = eval_quadratic_form(sp.gram2, y2, sp.p, sp.prec);
    }

    static PointY from_rationals(const QuadraticSpacePair& sp,
                                 const std::vector<Rational>& c1,
                                 const std::vector<Rational>& c2) {
        auto lift = [&](const std::vector<Rational>& v) {
            std::vector<PAdicScalar> out;
            for (auto& r : v) out.push_back(PAdicScalar::from_rational(sp.p, r, sp.prec));
            return out;
        };
        return PointY(sp, lift(c1), lift(c2));
    }

private:
    static void scan(const std::vector<PAdicScalar>& y, bool& zero, int64_t& v) {
        zero = true;
        for (auto& c : y) {
            if (c.is_zero()) continue;
            v = zero ? c.val : std::min(v, c.val);
            zero = false;
        }
        if (zero) v = 0;
    }
};

// Y' membership: y1, y2 nonzero and Q(y1) = 2 Q'(y2).
inline bool is_in_Yprime(const QuadraticSpacePair& sp, const PointY& y) {
    if (y.zero1 || y.zero2) return false;
    PAdicScalar two = PAdicScalar::from_integer(sp.p, 2, sp.prec);
    PAdicScalar diff = y.Qy1 - two * y.Qpy2;
    if (!diff.is_zero()) return false;
    if (diff.abs < 1)
        throw std::domain_error("insufficient precision to decide Y membership");
    return true;
}

// a_y = diag(-4 Q'(y_2), 1, ..., 1) in GL_n.
inline Mat<PAdicScalar> a_y_matrix(const QuadraticSpacePair& sp, const PointY& y, int n) {
    RingTraits<PAdicScalar>::Ctx c{sp.p, sp.prec};
    Mat<PAdicScalar> m = Mat<PAdicScalar>::identity(n, c);
    PAdicScalar m4 = PAdicScalar::from_integer(sp.p, -4, sp.prec);
    m.at(0, 0) = m4 * y.Qpy2;
    return m;
}

/**
 * An element of the Borel of G = (SL2 x SL2-shaped pair): upper unipotent
 * parameters n1, n2, the anisotropic torus coordinates a1, a2 and the
 * similitude coordinate d, standing for
 * n(n1,n2) (diag(a1,a1^{-1}), diag(a2,a2^{-1})) (diag(1,d), diag(1,d^{-1})).
 */
struct BorelG {
    PAdicScalar a1, a2, d, n1, n2;
};

inline BorelG borel_from_gpair(const GPair<PAdicScalar>& g) {
    if (g.g1.n != 2 || g.g2.n != 2) throw std::invalid_argument("expected a 2x2 pair");
    if (!g.g1.at(1, 0).is_zero() || !g.g2.at(1, 0).is_zero())
        throw std::invalid_argument("unsupported: element not in the Borel of G");
    BorelG b;
    b.a1 = g.g1.at(0, 0);
    b.a2 = g.g2.at(0, 0);
    b.d  = g.g1.at(0, 0) * g.g1.at(1, 1);
    PAdicScalar dinv = g.g2.at(0, 0) * g.g2.at(1, 1);
    PAdicScalar one = PAdicScalar::from_integer(b.d.p, 1, PAdicScalar::max_digits(b.d.p));
    if (b.d * dinv != one)
        throw std::invalid_argument("pair determinants are not inverse to each other");
    b.n1 = g.g1.at(0, 1) / g.g1.at(1, 1);
    b.n2 = g.g2.at(0, 1) / g.g2.at(1, 1);
    return b;
}

/**
 * Weil action of a Borel element on the basic function f = 1_{V(O) x O^x},
 * evaluated at (gamma, u): the unipotent part contributes the character
 * psi(n1 Q(gamma_1) + 2 n2 Q'(gamma_2)), the torus part scales the first
 * argument and multiplies by |a1|^{d1/2}|a2|^{d2/2}, the similitude part
 * rescales u and multiplies by |d|^{(d2-d1)/4}.
 */
inline std::complex<double> weil_borel_action(const QuadraticSpacePair& sp,
                                              const BorelG& b, const PointY& gamma,
                                              const PAdicScalar& u) {
    int64_t A1 = b.a1.valuation(), A2 = b.a2.valuation(), Dd = b.d.valuation();
    bool supp1 = gamma.zero1 || A1 + gamma.v1 >= 0;
    bool supp2 = gamma.zero2 || A2 + gamma.v2 >= 0;
    if (!supp1 || !supp2) return {0.0, 0.0};
    PAdicScalar uu = u / b.d;
    if (uu.is_zero() || !uu.is_unit()) return {0.0, 0.0};
    PAdicScalar two = PAdicScalar::from_integer(sp.p, 2, sp.prec);
    std::complex<double> psi =
        additive_character(b.n1 * gamma.Qy1 + two * b.n2 * gamma.Qpy2);
    double q = static_cast<double>(sp.p);
    double e = -(double)A1 * sp.d1 / 2.0 - (double)A2 * sp.d2 / 2.0
               - (double)Dd * (sp.d2 - sp.d1) / 4.0;
    return std::pow(q, e) * psi;
}

// One factor of alpha(y_1, y_2):
// (2 + sum_{k'=1}^{v} q^{k'} (1 - (q-1) sum_{k=1}^{v} q^{(d/2-2)k}))^{-1}.
inline Rational alpha_one(int64_t q, int d, long v) {
    if (v < 0) throw std::invalid_argument("negative valuation");
    Rational S = 0;
    for (long k = 1; k <= v; ++k) S += pow_rat(Rational(q), (d / 2 - 2) * k);
    Rational inner = Rational(1) - (Rational(q) - 1) * S;
    Rational den = 2;
    for (long k = 1; k <= v; ++k) den += pow_rat(Rational(q), k) * inner;
    if (den == 0) throw std::domain_error("alpha denominator vanishes");
    return Rational(1) / den;
}

inline RationalFunction alpha_one_symbolic(int d, long v) {
    RationalFunction q(LaurentPoly::q_pow(1));
    RationalFunction S{Rational(0)};
    for (long k = 1; k <= v; ++k) S += RationalFunction(LaurentPoly::q_pow((d / 2 - 2) * (int)k));
    RationalFunction inner = RationalFunction(Rational(1)) - (q - RationalFunction(Rational(1))) * S;
    RationalFunction den{Rational(2)};
    for (long k = 1; k <= v; ++k) den += RationalFunction(LaurentPoly::q_pow((int)k)) * inner;
    return RationalFunction(Rational(1)) / den;
}

inline Rational alpha_factor(const QuadraticSpacePair& sp, const PointY& y) {
    return alpha_one(sp.p, sp.d1, (long)y.v1) * alpha_one(sp.p, sp.d2, (long)y.v2);
}

/**
 * Radial profile of one SL2 factor of Phi_y.
 *
 * Writing g(A) for the factor value at diag(varpi^A, varpi^{-A}) and V for
 * the valuation of the psi-coefficient (the relevant form value at y), the
 * U2-integral identities of the basic-function lemma give one shell
 * equation per torus valuation A:
 *
 *   q^{-A d/2} 1[A >= -v] =
 *     q^{-2A} g(A) + sum_{t=-V-1}^{2A-1} w(t) g(t - A),
 *
 * with shell weights w(t) = q^{-t}(1-1/q) for t >= -V, w(-V-1) = -q^V,
 * and w = 0 below (the character integral kills deeper shells). These
 * determine g upward from the support edge A = -v. The equations leave the
 * shell at -V-1 free; it is fixed by the unit-similitude equation, which
 * is exactly the alpha normalization: the tail sum must equal 1/alpha - 1.
 * We store the alpha-rescaled table phitilde = g / alpha_i.
 */
struct RadialProfile {
    int64_t q = 3;
    int d = 2;
    long v = 0, V = 0;
    Rational alpha;
    Rational deep;                 // phitilde(-V-1)
    std::map<long, Rational> tab;  // phitilde on [-v, amax]

    Rational phitilde(long A) const {
        if (A < -v) return A == -V - 1 ? deep : Rational(0);
        auto it = tab.find(A);
        if (it == tab.end()) throw std::logic_error("profile window exceeded");
        return it->second;
    }
    // Value at a torus element with first-entry valuation A and determinant
    // valuation D; the similitude support confines the factor to D = 0.
    Rational value(long A, long D) const {
        return D == 0 ? alpha * phitilde(A) : Rational(0);
    }
};

inline RadialProfile solve_radial_profile(int64_t q, int d, long v, long V, long amax = 64) {
    if (V < 2 * v) throw std::invalid_argument("form valuation below 2 val(y): non-integral Gram?");
    RadialProfile P;
    P.q = q; P.d = d; P.v = v; P.V = V;
    P.alpha = alpha_one(q, d, v);
    Rational qr(q);
    auto w = [&](long t) -> Rational {
        if (t == -V - 1) return -pow_rat(qr, V);
        return pow_rat(qr, -t) * (Rational(1) - Rational(1) / qr);
    };
    auto lhs = [&](long A) -> Rational {
        return A >= -v ? pow_rat(qr, -A * (d / 2)) : Rational(0);
    };
    auto step = [&](long A) {
        Rational s = 0;
        for (long t = -V - 1; t <= 2 * A - 1; ++t) s += w(t) * P.phitilde(t - A);
        P.tab[A] = pow_rat(qr, 2 * A) * (lhs(A) / P.alpha - s);
    };
    P.deep = 0;
    for (long A = -v; A <= -1; ++A) step(A);
    Rational supported = 0;
    for (long m = 1; m <= v; ++m)
        supported += pow_rat(qr, m) * (Rational(1) - Rational(1) / qr) * P.phitilde(-m);
    P.deep = (supported - (Rational(1) / P.alpha - 1)) / pow_rat(qr, V);
    for (long A = 0; A <= amax; ++A) step(A);
    return P;
}

// Torus data of the lower-triangular Iwasawa decomposition of a 2x2 matrix:
// m = (lower unipotent) diag(tau0, tau1) k, returned as A = val(tau0),
// D = val(tau0 tau1). Computed from the upper decomposition of Jm.
struct LowerTorus { long A, D; };

inline LowerTorus lower_torus_2x2(const Mat<PAdicScalar>& m,
                                  const RingTraits<PAdicScalar>::Ctx& c) {
    Mat<PAdicScalar> J(2, RingTraits<PAdicScalar>::zero(c));
    J.at(0, 1) = RingTraits<PAdicScalar>::one(c);
    J.at(1, 0) = RingTraits<PAdicScalar>::one(c);
    auto dec = iwasawa_gln(J * m, c);
    return {(long)dec.tval[1], (long)(dec.tval[0] + dec.tval[1])};
}

/**
 * Phi_y as a product of two factor profiles, each evaluated through the
 * lower Iwasawa decomposition. Also serves as H_y on the torus.
 */
struct PhiY {
    RadialProfile f1, f2;
    RingTraits<PAdicScalar>::Ctx ctx;

    Rational eval_factor(const RadialProfile& P, const Mat<PAdicScalar>& g) const {
        auto t = lower_torus_2x2(g, ctx);
        return P.value(t.A, t.D);
    }
    Rational operator()(const GPair<PAdicScalar>& g) const {
        return eval_factor(f1, g.g1) * eval_factor(f2, g.g2);
    }
};

inline PhiY make_phi(const QuadraticSpacePair& sp, const PointY& y, long amax = 64) {
    long V1 = (long)y.Qy1.valuation();    // throws if Q(y1) is (indistinguishable from) 0
    long V2 = (long)y.Qpy2.valuation();
    PhiY out;
    out.f1 = solve_radial_profile(sp.p, sp.d1, (long)y.v1, V1, amax);
    out.f2 = solve_radial_profile(sp.p, sp.d2, (long)y.v2, V2, amax);
    out.ctx = RingTraits<PAdicScalar>::Ctx{sp.p, sp.prec};
    return out;
}

// H_{1,y} on the (a1, a2) torus: |a1|^{d1/2-2} |a2|^{d2/2-2}.
inline Rational h1_on_torus(const QuadraticSpacePair& sp, long A1, long A2) {
    return pow_rat(Rational(sp.p), -A1 * (sp.d1 / 2 - 2) - A2 * (sp.d2 / 2 - 2));
}

/**
 * One factor of the U2-integral of Lemma 4.1:
 *   int_F Phi_factor( (1 n; 0 1) diag(alpha, beta) ) psi(n c)^{-1} dn,
 * by brute force over a coset lattice. The domain splits into valuation
 * bands so the coset resolution can follow the integrand: the profile
 * branch changes at val(n) = val(alpha) - val(beta) and psi's coefficient
 * is integral, so each band is honestly locally constant at its own
 * resolution. Shells below -val(c)-1 vanish; two are kept as a margin.
 */
inline std::complex<double> lemma41_rhs_factor(const RadialProfile& P,
                                               const PAdicScalar& alpha_e,
                                               const PAdicScalar& beta_e,
                                               const PAdicScalar& c,
                                               const RingTraits<PAdicScalar>::Ctx& ctx,
                                               int threads = 1) {
    long D = (long)(alpha_e.valuation() + beta_e.valuation());
    if (D != 0) return {0.0, 0.0};     // similitude support: the profile vanishes
    long V = (long)c.valuation();
    long Delta = (long)(alpha_e.valuation() - beta_e.valuation());
    double q = static_cast<double>(ctx.p);

    auto f = [&](const std::vector<PAdicScalar>& pt) -> std::complex<double> {
        Mat<PAdicScalar> m(2, PAdicScalar::zero_at(ctx.p));
        m.at(0, 0) = alpha_e;
        m.at(0, 1) = pt[0] * beta_e;
        m.at(1, 1) = beta_e;
        auto t = lower_torus_2x2(m, ctx);
        Rational phiv = P.value(t.A, t.D);
        if (phiv == 0) return {0.0, 0.0};
        return to_double(phiv) * std::conj(additive_character(pt[0] * c));
    };
    // multiplicative-lattice evaluation of the additive integral:
    // dn = |n| (1 - 1/q) d^x n
    auto fw = [&](const std::vector<PAdicScalar>& pt) -> std::complex<double> {
        return f(pt) * std::pow(q, -(double)pt[0].valuation()) * (1.0 - 1.0 / q);
    };

    long Mpe = std::max<long>(1, Delta + 1);
    std::complex<double> out{0.0, 0.0};
    LatticeDomain band1{ctx.p, {LatticeAxis{(int)(V + 2), 1}}};
    out += integrate_locally_constant(fw, band1, Measure::Multiplicative, threads);
    if (Mpe > 1) {
        LatticeDomain band2{ctx.p, {LatticeAxis{-1, (int)Mpe}}};
        out += integrate_locally_constant(fw, band2, Measure::Multiplicative, threads);
    }
    LatticeDomain tail{ctx.p, {LatticeAxis{(int)(-Mpe), (int)(Mpe + 1)}}};
    out += integrate_locally_constant(f, tail, Measure::Additive, threads);
    return out;
}

/**
 * Both sides of Lemma 4.1 at the torus element
 * (diag(a1, a1^{-1} d), diag(a2, a2^{-1} d^{-1})): the closed-form Weil
 * action value on the left, the U2 integral of Phi_y against
 * psi(n1 Q(y1) + n2 Q'(y2))^{-1} on the right.
 */
inline std::pair<std::complex<double>, std::complex<double>>
lemma41_lhs_rhs(const QuadraticSpacePair& sp, const PointY& y,
                const PAdicScalar& a1, const PAdicScalar& a2, const PAdicScalar& d,
                int threads = 1) {
    int64_t A1 = a1.valuation(), A2 = a2.valuation(), Dd = d.valuation();
    double q = static_cast<double>(sp.p);
    std::complex<double> lhs{0.0, 0.0};
    if (Dd == 0 && A1 + y.v1 >= 0 && A2 + y.v2 >= 0)
        lhs = std::pow(q, -(double)A1 * sp.d1 / 2.0 - (double)A2 * sp.d2 / 2.0);

    PhiY phi = make_phi(sp, y);
    std::complex<double> r1 =
        lemma41_rhs_factor(phi.f1, a1, a1.inv() * d, y.Qy1, phi.ctx, threads);
    std::complex<double> r2 =
        lemma41_rhs_factor(phi.f2, a2, a2.inv() * d.inv(), y.Qpy2, phi.ctx, threads);
    return {lhs, r1 * r2};
}

// Reconstructed H_{2,y} radial profile on the (1, a2)-slice:
// P2(i) = 1[i >= 0] + (q-1)(i + v2 + 1) 1[i >= -v2] at i = val(a2).
// This is the inverse Mellin transform of c(q^{s2}, y2) zeta(-s2)^2.
inline Rational h2_profile(int64_t q, long v2, long i) {
    Rational out = 0;
    if (i >= 0) out += 1;
    if (i >= -v2) out += (Rational(q) - 1) * Rational(i + v2 + 1);
    return out;
}

// H_{y,s2}(1) = c(q^{s2}, y2) zeta_v(-s2)^2 with
// c(Z, y2) = 1 - Z + (q-1) Z^{-val(y2)}, Z = q^{s2}.
inline RationalFunction mellin_H(const QuadraticSpacePair& sp, const PointY& y) {
    (void)sp;
    LaurentPoly Z = LaurentPoly::var(Z_S2);
    LaurentPoly qm1 = LaurentPoly::q_pow(1) - LaurentPoly(Rational(1));
    LaurentPoly cnum = LaurentPoly(Rational(1)) - Z
                     + qm1 * LaurentPoly::var(Z_S2, (int)(-y.v2));
    RationalFunction zeta = zeta_v(Z);
    return RationalFunction(cnum) * zeta * zeta;
}

// Mellin sum of the reconstructed profile: finite window [-v2, N] plus the
// exact geometric tails. Independent of N >= 0 and equal to mellin_H.
inline RationalFunction mellin_profile_sum(long v2, long N) {
    if (N < 0) throw std::invalid_argument("window must reach nonnegative valuations");
    LaurentPoly qm1 = LaurentPoly::q_pow(1) - LaurentPoly(Rational(1));
    LaurentPoly acc;
    for (long i = -v2; i <= N; ++i) {
        LaurentPoly coeff = qm1 * LaurentPoly(Rational(i + v2 + 1));
        if (i >= 0) coeff = coeff + LaurentPoly(Rational(1));
        acc = acc + coeff * LaurentPoly::var(Z_S2, (int)i);
    }
    LaurentPoly Z = LaurentPoly::var(Z_S2);
    RationalFunction zeta = zeta_v(Z);
    RationalFunction t1 = RationalFunction(LaurentPoly::var(Z_S2, (int)(N + 1))) * zeta;
    LaurentPoly lin = LaurentPoly(Rational(N + v2 + 2)) - LaurentPoly(Rational(N + v2 + 1)) * Z;
    RationalFunction t2 = RationalFunction(qm1 * LaurentPoly::var(Z_S2, (int)(N + 1)) * lin)
                        * zeta * zeta;
    return RationalFunction(acc) + t1 + t2;
}

} // namespace lfactor
