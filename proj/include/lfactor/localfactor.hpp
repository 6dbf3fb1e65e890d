#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "weil.hpp"
#include "bessel.hpp"

namespace lfactor {

// ---------------------------------------------------------------------------
// GL_1 x GL_n gamma factor (unramified, epsilon = 1):
//   gamma(s, chi' x tau) = L(1-s, chi'^{-1} x tau^v) / L(s, chi' x tau),
//   L(s, chi' x tau) = prod_i (1 - chi'(varpi) chi_i(varpi) q^{-s})^{-1}.
//
// chi_prime is the character value chi'(varpi) and z the monomial standing
// for q^{-s} at the argument in question. dual replaces tau by tau^v.

inline RationalFunction gamma_gl1_gln(int n, const Monomial& chi_prime,
                                      const Monomial& z, bool dual = false) {
    LaurentPoly num{Rational(1)};   // L(s, chi' x tau)^{-1}
    LaurentPoly den{Rational(1)};   // L(1-s, chi'^{-1} x tau^v)^{-1}
    for (int i = 1; i <= n; ++i) {
        Monomial xi{{X(i), dual ? -1 : 1}};
        Monomial a = mono_mul(mono_mul(chi_prime, xi), z);
        Monomial b = mono_mul(mono_mul(mono_inv(chi_prime), mono_inv(xi)),
                              mono_mul(Monomial{{SQRT_Q, -2}}, mono_inv(z)));
        num *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(a, 1);
        den *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(b, 1);
    }
    // gamma = Ldual/L = num/den with the two inverted L's swapped
    return RationalFunction(num, den);
}

/** chi' of Theorem 2: the |.|^{(d2+1)/2} twist, chi'(varpi) = q^{-(d2+1)/2}. */
inline Monomial chi_prime_theorem2(int d2) {
    return Monomial{{SQRT_Q, -(d2 + 1)}};
}

// ---------------------------------------------------------------------------
// Requests and results

struct LocalFactorRequest {
    QuadraticSpacePair pair;
    PointY y;
    SatakeParams params;
    BesselOptions bessel;
    int kmax = 8;
};

struct SeriesResult {
    int kmin = 0;                      // val(4 Q'(y_2)): the support edge
    int kmax = 0;
    Rational alpha;                    // alpha(y_1, y_2)
    Monomial prefactor;                // |4Q'(y_2)|^{-s+1/2-n/2} as a monomial
    std::vector<RationalFunction> terms;     // q^{(n-2+d2/2)k} C_{k,s}, k from kmin
    std::vector<RationalFunction> partials;  // running sums of terms

    // alpha * prefactor * (sum of the first `count` terms), numerically
    std::complex<double> eval(const std::map<VarId, std::complex<double>>& at,
                              int count = -1) const {
        if (count < 0 || count > (int)terms.size()) count = (int)terms.size();
        std::complex<double> acc = 0;
        for (int i = 0; i < count; ++i) acc += terms[i].eval(at);
        return to_complex(alpha) * LaurentPoly::monomial(prefactor, 1).eval(at) * acc;
    }

    // geometric tail bound from the last two nonzero term magnitudes
    double tail_estimate(const std::map<VarId, std::complex<double>>& at) const {
        if (terms.size() < 2) return std::numeric_limits<double>::infinity();
        double a = std::abs(terms[terms.size() - 2].eval(at));
        double b = std::abs(terms.back().eval(at));
        if (a == 0.0) return b;
        double rho = b / a;
        if (rho >= 1.0) return std::numeric_limits<double>::infinity();
        return b * rho / (1.0 - rho);
    }
};

namespace detail {

inline RationalFunction subst_mu_trivial(const RationalFunction& f) {
    LaurentPoly one{Rational(1)};
    return RationalFunction(f.num.subst(MU, one), f.den.subst(MU, one));
}

/**
 * Contribution of the simple pole at var = b (b an invertible monomial, with
 * the factor (1 - b var^{-1}) dividing f.den) to the e-th Laurent
 * coefficient of f in var on a contour enclosing b:
 *
 *   Res_{var=b} f(var) var^{-e-1} = (f * (1 - b var^{-1}))|_{var=b} * b^{-e}.
 */
inline RationalFunction residue_piece(const RationalFunction& f, VarId var,
                                      const Monomial& b, int e) {
    LaurentPoly fac = LaurentPoly(Rational(1))
        - LaurentPoly::monomial(mono_mul(b, Monomial{{var, -1}}), 1);
    LaurentPoly dred = divexact(f.den, fac);
    LaurentPoly rep = LaurentPoly::monomial(b, 1);
    RationalFunction h(f.num.subst(var, rep), dred.subst(var, rep));
    return h * RationalFunction(LaurentPoly::monomial(mono_pow(b, -e), 1));
}

/**
 * The e-th Laurent coefficient of f in var on a contour whose interior
 * contains the origin and the listed simple monomial poles only. Poles whose
 * factor is absent from f.den are skipped.
 */
inline RationalFunction contour_coeff(const RationalFunction& f, VarId var, int e,
                                      const std::vector<Monomial>& inside) {
    RationalFunction out = coeff_extract(f, var, e, Expand::AtZero);
    for (const Monomial& b : inside) {
        LaurentPoly fac = LaurentPoly(Rational(1))
            - LaurentPoly::monomial(mono_mul(b, Monomial{{var, -1}}), 1);
        bool present = true;
        try { (void)divexact(f.den, fac); }
        catch (const std::runtime_error&) { present = false; }
        if (present) out += residue_piece(f, var, b, e);
    }
    return out;
}

/** Cancel any common occurrences of the candidate factors from num and den. */
inline RationalFunction cancel_factors(RationalFunction f,
                                       const std::vector<LaurentPoly>& facs) {
    if (f.is_zero()) return f;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const LaurentPoly& g : facs) {
            while (true) {
                LaurentPoly dn, dd;
                try {
                    dd = divexact(f.den, g);
                    dn = divexact(f.num, g);
                } catch (const std::runtime_error&) { break; }
                f = RationalFunction(dn, dd);
                progress = true;
            }
        }
    }
    return f;
}

/**
 * The denominator factors the C_{k,s} pipeline can introduce, used to reduce
 * the raw extraction output (coefficient extraction returns denominators as
 * powers of the full lowest-order coefficient, most of which cancels).
 */
inline std::vector<LaurentPoly> cks_den_factors(int n, int d1, int d2) {
    std::vector<LaurentPoly> out;
    Monomial cp = chi_prime_theorem2(d2);
    auto add = [&](const Monomial& m) {
        out.push_back(LaurentPoly(Rational(1)) - LaurentPoly::monomial(m, 1));
    };
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Monomial b{{Z_S, 2}};
            b[X(i)] += 1; b[X(j)] += 1;
            add(b);
            add(mono_mul(cp, b));
            Monomial br = mono_mul(cp, b);
            br[SQRT_Q] += d1 - 4;
            if (br[SQRT_Q] == 0) br.erase(SQRT_Q);
            add(br);
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) add(Monomial{{X(i), 1}, {X(j), -1}});
    return out;
}

} // namespace detail

/**
 * C_{k,s}(y): the double Mellin coefficient against q^{(-s_1+s_2)k} of
 *
 *   c(q^{s_2}, y_2) zeta_v(-s_2 - d_1/2 + 2)^2 zeta_v(-s_2)^2
 *     * gamma(s - s_1 + s_2, chi' x tau)^{-1}
 *     * B_{psi'_1, s_1}(varpi_H^{delta_{k - val(4Q'(y_2))}}),
 *
 * i.e. the coefficient of (q^{s_1})^k (q^{s_2})^{-k} in the Laurent
 * expansion valid on the contours Re(s_1) >> 0, Re(-s_2) >> 0,
 * Re(s) ~ Re(s_1) + Re(-s_2). On those contours |q^{-s}| ~ |q^{-s_1}||q^{s_2}|
 * is the small quantity, so the q^{s_1}-contour encloses the poles at
 * q^{s_1} = chi_i(varpi) q^{-s} of L(s, mu_{s_1} x tau) and the
 * q^{s_2}-contour encloses q^{s_2} = chi'(varpi) chi_i chi_j q^{-2s} of the
 * expanded gamma^{-1}, besides the origin in both cases; the remaining poles
 * (the zeta_v's and the dual L-function) stay outside. Each coefficient is
 * the finite sum of the enclosed residues, computed exactly.
 * mu_{s_1} has trivial unitary part here.
 */
inline RationalFunction c_ks(const LocalFactorRequest& req, int k) {
    int n = req.params.n;
    int d1 = req.pair.d1, d2 = req.pair.d2;
    int vQ = (int)(req.y.Qpy2 * PAdicScalar::from_integer(req.pair.p, 4, 24)).valuation();
    if (k < vQ) return RationalFunction(Rational(0));

    std::vector<int> delta(n, 0);
    delta[0] = k - vQ;
    RationalFunction B = detail::subst_mu_trivial(bessel_value(req.params, delta, req.bessel));

    // c(q^{s_2}, y_2) = 1 - q^{s_2} + (q-1) q^{-val(y_2) s_2}
    LaurentPoly Z = LaurentPoly::var(Z_S2);
    LaurentPoly c = LaurentPoly(Rational(1)) - Z
        + (LaurentPoly::q_pow(1) - LaurentPoly(Rational(1))) * LaurentPoly::var(Z_S2, -req.y.v2);
    RationalFunction A = RationalFunction(c)
        * zeta_v(LaurentPoly::monomial(Monomial{{Z_S2, 1}, {SQRT_Q, 2 * (d1 / 2 - 2)}}, 1))
        * zeta_v(LaurentPoly::monomial(Monomial{{Z_S2, 1}, {SQRT_Q, 2 * (d1 / 2 - 2)}}, 1))
        * zeta_v(Z) * zeta_v(Z);

    // gamma^{-1}(T) = prod (1 - beta_i T^{-1}) / prod (1 - alpha_i T) in a
    // scratch variable standing for z = q^{-(s - s_1 + s_2)}; substituted or
    // expanded in powers of z as needed below.
    const VarId ZT = X(99);
    Monomial cp = chi_prime_theorem2(d2);
    RationalFunction Ghat = gamma_gl1_gln(n, cp, Monomial{{ZT, 1}});
    Ghat = RationalFunction(Rational(1)) / Ghat;

    auto facs = detail::cks_den_factors(n, d1, d2);

    // Origin part of both contour coefficients. Splitting the product as
    // A(q^{s_2}) * sum_m g_m z^m * B(q^{s_1}) and matching exponents leaves a
    // finite sum of single-variable Taylor coefficients: B vanishes to
    // positive order at q^{s_1} = 0 and gamma^{-1} has a finite principal
    // part in z.
    int m0B = B.num.min_exp(Z_S1) - B.den.min_exp(Z_S1);
    RationalFunction out(Rational(0));
    for (int m = -n; m <= k - m0B; ++m) {
        RationalFunction gm = coeff_extract(Ghat, ZT, m, Expand::AtZero);
        if (gm.is_zero()) continue;
        RationalFunction Am = coeff_extract(A, Z_S2, m - k, Expand::AtZero);
        if (Am.is_zero()) continue;
        RationalFunction Bm = coeff_extract(B, Z_S1, k - m, Expand::AtZero);
        if (Bm.is_zero()) continue;
        Monomial zs;
        if (m != 0) zs[Z_S] = m;
        out += gm * RationalFunction(LaurentPoly::monomial(zs, 1)) * Am * Bm;
    }
    out = detail::cancel_factors(out, facs);

    // Residues at q^{s_1} = chi_i q^{-s} of L(s, mu_{s_1} x tau), then the
    // q^{s_2}-coefficient of each piece: its origin part plus the residues at
    // the enclosed poles of the expanded gamma^{-1}. The pieces are kept
    // separate: they share pole locations pairwise (chi_i chi_j is
    // symmetric), and summing first would square those denominator factors.
    for (int i = 1; i <= n; ++i) {
        Monomial ai{{X(i), 1}, {Z_S, 1}};
        Monomial zi{{X(i), 1}, {Z_S, 2}, {Z_S2, -1}};   // z at q^{s_1} = chi_i q^{-s}
        RationalFunction Gi(Ghat.num.subst(ZT, LaurentPoly::monomial(zi, 1)),
                            Ghat.den.subst(ZT, LaurentPoly::monomial(zi, 1)));
        RationalFunction Ji = A * Gi * detail::residue_piece(B, Z_S1, ai, k);
        std::vector<Monomial> poles;
        for (int j = 1; j <= n; ++j) {
            Monomial b = mono_mul(cp, Monomial{{Z_S, 2}});
            b[X(i)] += 1;
            b[X(j)] += 1;
            poles.push_back(b);
        }
        out += detail::cancel_factors(detail::contour_coeff(Ji, Z_S2, -k, poles), facs);
    }
    return detail::cancel_factors(out, facs);
}

/**
 * Theorem 2:
 *   I_s(y) = alpha(y_1,y_2) |4Q'(y_2)|^{-s+1/2-n/2}
 *            sum_{k >= val(4Q'(y_2))} q^{(n-2+d_2/2)k} C_{k,s}(y),
 * truncated at req.kmax.
 */
inline SeriesResult theorem2_value(const LocalFactorRequest& req) {
    int n = req.params.n;
    int d2 = req.pair.d2;
    int vQ = (int)(req.y.Qpy2 * PAdicScalar::from_integer(req.pair.p, 4, 24)).valuation();

    SeriesResult out;
    out.kmin = vQ;
    out.kmax = req.kmax;
    out.alpha = alpha_factor(req.pair, req.y);
    // |4Q'|^{-s+1/2-n/2} = q^{-vQ(-s + (1-n)/2)} = zs^{-vQ} r^{-vQ(1-n)}
    if (vQ != 0) {
        out.prefactor[Z_S] = -vQ;
        if (vQ * (1 - n) != 0) out.prefactor[SQRT_Q] = -vQ * (1 - n);
    }
    RationalFunction acc(Rational(0));
    auto facs = detail::cks_den_factors(n, req.pair.d1, d2);
    for (int k = vQ; k <= req.kmax; ++k) {
        Monomial g;
        if ((2 * (n - 2) + d2) * k != 0) g[SQRT_Q] = (2 * (n - 2) + d2) * k;
        RationalFunction term = RationalFunction(LaurentPoly::monomial(g, 1)) * c_ks(req, k);
        acc = detail::cancel_factors(acc + term, facs);
        out.terms.push_back(term);
        out.partials.push_back(acc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lemma 6.5 convergence region

struct RegionCheck {
    bool ok = true;
    std::vector<std::string> violated;
};

struct RegionConstants {
    // C_1, C_2 of Lemma 6.5 depend on (n, d_1, d_2) without stated formulas;
    // these conservative defaults come from the convergence remarks in the
    // surrounding text.
    double C1, C2;
    RegionConstants(int n, int d1, int d2)
        : C1(n + d2 / 2.0 + 2.0), C2(std::max(d1 / 2.0 + 3.0, d2 / 2.0 + 8.0 - n)) {}
};

inline RegionCheck region_lemma65(int n, int d1, int /*d2*/, double re_s,
                                  double re_s1, double re_s2,
                                  const RegionConstants& cst) {
    RegionCheck rc;
    auto fail = [&](const std::string& msg) { rc.ok = false; rc.violated.push_back(msg); };
    if (!(re_s1 - re_s2 - 2 - d1 / 2.0 <= re_s))
        fail("Re(s_1) - Re(s_2) - 2 - d_1/2 <= Re(s)");
    if (!(re_s <= re_s1 - re_s2 + n + 1 - d1 / 2.0))
        fail("Re(s) <= Re(s_1) - Re(s_2) + n + 1 - d_1/2");
    if (!(re_s1 > cst.C1)) fail("Re(s_1) > C_1");
    if (!(-re_s2 > cst.C2)) fail("Re(-s_2) > C_2");
    return rc;
}

inline RegionCheck region_lemma65(int n, int d1, int d2, double re_s,
                                  double re_s1, double re_s2) {
    return region_lemma65(n, d1, d2, re_s, re_s1, re_s2, RegionConstants(n, d1, d2));
}

} // namespace lfactor
