#pragma once

#include <vector>
#include <algorithm>
#include <stdexcept>

#include "ratfunc.hpp"
#include "schur.hpp"
#include "whittaker.hpp"

namespace lfactor {

// ---------------------------------------------------------------------------
// Hyperoctahedral Weyl group of SO_{2n+1}
//
// An element is a permutation together with a sign on each coordinate. Its
// sign is the determinant on the reflection representation, sgn(sigma) times
// the product of the coordinate signs; this is the convention under which
// the alternating sum over the group is divisible by the type-B Weyl
// denominator.

struct SignedPerm {
    std::vector<int> sigma;  // images, 0-based
    std::vector<int> eps;    // +1 or -1 per coordinate

    int sign() const {
        int n = (int)sigma.size();
        int s = 1;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j)
                if (sigma[i] > sigma[j]) s = -s;
            if (eps[i] < 0) s = -s;
        }
        return s;
    }
};

inline std::vector<SignedPerm> weyl_enumerate(int n) {
    if (n < 1 || n > 6)
        throw std::invalid_argument("weyl_enumerate supports 1 <= n <= 6");
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<SignedPerm> out;
    do {
        for (int mask = 0; mask < (1 << n); ++mask) {
            SignedPerm w;
            w.sigma = perm;
            w.eps.resize(n);
            for (int i = 0; i < n; ++i) w.eps[i] = (mask >> i) & 1 ? -1 : 1;
            out.push_back(w);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Character values at varpi, kept as invertible monomials in the symbolic
// variables. chi_{i,s} = chi_i |.|^{s-1/2} so chi_{i,s}(varpi) = X_i zs r;
// mu_{s1} = mu |.|^{-s1} so mu_{s1}(varpi) = MU zs1.

inline Monomial mono_pow(const Monomial& m, int e) {
    Monomial out;
    if (e == 0) return out;
    for (auto& [v, k] : m) out[v] = k * e;
    return out;
}

inline std::vector<Monomial> chi_s_values(int n) {
    std::vector<Monomial> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Monomial{{SQRT_Q, 1}, {Z_S, 1}, {X(i + 1), 1}};
    return v;
}

inline Monomial mu_s1_value() { return Monomial{{MU, 1}, {Z_S1, 1}}; }

inline std::vector<Monomial> weyl_apply(const SignedPerm& w,
                                        const std::vector<Monomial>& v) {
    int n = (int)v.size();
    if ((int)w.sigma.size() != n) throw std::invalid_argument("rank mismatch");
    std::vector<Monomial> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = w.eps[i] == 1 ? v[w.sigma[i]] : mono_inv(v[w.sigma[i]]);
    return out;
}

// ---------------------------------------------------------------------------
// The type-B Weyl denominator
//   Delta(chi) = (-1)^n det( chi_{i,s}(varpi)^{n-j+1} - chi_{i,s}(varpi)^{-(n-j+1)} )
// with rows indexed by i and column j carrying the exponent n-j+1.

inline LaurentPoly delta_weyl(const std::vector<Monomial>& v) {
    int n = (int)v.size();
    std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int e = n - j;
            m[i][j] = LaurentPoly::monomial(mono_pow(v[i], e), 1)
                      - LaurentPoly::monomial(mono_pow(v[i], -e), 1);
        }
    // Leibniz expansion; n <= 6 keeps this tiny
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    LaurentPoly det;
    do {
        int s = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) s = -s;
        LaurentPoly term{Rational(s)};
        for (int i = 0; i < n; ++i) term *= m[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n % 2 == 1) det = -det;
    return det;
}

// ---------------------------------------------------------------------------
// Options resolving the manuscript's ambiguous product limits. n_D = -1
// means "use n" (the reading fixed by the brute-force oracle); the printed
// text has n-1. strict_pairs selects i<j in the normalization displays.

struct BesselOptions {
    int n_D = -1;
    bool strict_pairs = true;
};

inline int resolve_nD(int n, const BesselOptions& o) {
    if (o.n_D < 0) return n;
    if (o.n_D > n) throw std::invalid_argument("n_D exceeds the rank");
    return o.n_D;
}

/**
 * D(chi_s, mu) = prod_i chi_{i,s}(varpi)^{-(n+1-i)}
 *              * prod_{i<=n_D} (1 - chi_{i,s} mu q^{-1/2})(1 - chi_{i,s} mu^{-1} q^{-1/2}).
 */
inline LaurentPoly d_factor(const std::vector<Monomial>& v, const Monomial& mu,
                            const BesselOptions& opts = {}) {
    int n = (int)v.size();
    int nd = resolve_nD(n, opts);
    Monomial lead;
    for (int i = 0; i < n; ++i) lead = mono_mul(lead, mono_pow(v[i], -(n - i)));
    LaurentPoly out = LaurentPoly::monomial(lead, 1);
    Monomial rinv{{SQRT_Q, -1}};
    for (int i = 0; i < nd; ++i) {
        Monomial f1 = mono_mul(mono_mul(v[i], mu), rinv);
        Monomial f2 = mono_mul(mono_mul(v[i], mono_inv(mu)), rinv);
        out *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(f1, 1);
        out *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(f2, 1);
    }
    return out;
}

/**
 * S(chi_s, mu, varpi_H^delta)
 *   = Delta(chi_s)^{-1} sum_w sgn(w) D(^w chi_s, mu) ^w chi_s(varpi^delta)^{-1}.
 * The division is exact; the result is a Laurent polynomial.
 */
inline LaurentPoly s_sum(const std::vector<Monomial>& v, const Monomial& mu,
                         const std::vector<int>& delta,
                         const BesselOptions& opts = {}) {
    int n = (int)v.size();
    if ((int)delta.size() != n) throw std::invalid_argument("delta length mismatch");
    LaurentPoly num;
    for (const auto& w : weyl_enumerate(n)) {
        auto wv = weyl_apply(w, v);
        Monomial tinv;
        for (int i = 0; i < n; ++i) tinv = mono_mul(tinv, mono_pow(wv[i], -delta[i]));
        num += d_factor(wv, mu, opts) * LaurentPoly::monomial(tinv, Rational(w.sign()));
    }
    return divexact(num, delta_weyl(v));
}

// ---------------------------------------------------------------------------
// Local L-factors of Lemma 4.5. The untwisted chi_i enter with the explicit
// q^{-s}; the mu-factor carries its own s_1 twist.

struct BesselLFactors {
    RationalFunction L_mu_tau;   // L(s, mu_{s1} x tau)
    RationalFunction L_sym2;     // L(2s, tau, Sym^2)
};

inline BesselLFactors l_factors(int n, const BesselOptions& opts = {}) {
    (void)opts;
    Monomial mu = mu_s1_value();
    LaurentPoly den1{Rational(1)};
    for (int i = 1; i <= n; ++i) {
        Monomial a = mono_mul(Monomial{{X(i), 1}, {Z_S, 1}}, mu);
        Monomial b = mono_mul(Monomial{{X(i), 1}, {Z_S, 1}}, mono_inv(mu));
        den1 *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(a, 1);
        den1 *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(b, 1);
    }
    LaurentPoly den2{Rational(1)};
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Monomial a{{X(i), 1}, {Z_S, 2}};
            a = mono_mul(a, Monomial{{X(j), 1}});
            den2 *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(a, 1);
        }
    BesselLFactors out;
    out.L_mu_tau = RationalFunction(LaurentPoly(Rational(1)), den1);
    out.L_sym2 = RationalFunction(LaurentPoly(Rational(1)), den2);
    return out;
}

// ---------------------------------------------------------------------------
// Normalization constants from the Lemma 4.5 proof, both manuscript
// readings. strict_pairs = true is the corrected i<j form.

inline RationalFunction w_tau_s_at_one(int n, const BesselOptions& opts = {}) {
    LaurentPoly out{Rational(1)};
    if (opts.strict_pairs) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                Monomial m{{X(i), 1}, {X(j), -1}, {SQRT_Q, -2}};
                out *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(m, 1);
            }
    } else {
        // literal transcription: every factor is (1 - q^{-1})
        LaurentPoly f = LaurentPoly(Rational(1)) - LaurentPoly::q_pow(-1);
        for (int k = 0; k < n * (n + 1) / 2; ++k) out *= f;
    }
    return RationalFunction(out);
}

inline RationalFunction b_f0_at_one(int n, const BesselOptions& opts = {}) {
    auto v = chi_s_values(n);
    Monomial mu = mu_s1_value();
    Monomial qinv{{SQRT_Q, -2}};
    Monomial rinv{{SQRT_Q, -1}};
    LaurentPoly num{Rational(1)};
    if (opts.strict_pairs) {
        // corrected reading: the chi_i chi_j factor runs over i <= j (the
        // display's stray prod_i (1 - chi_{i,s} q^{-1}) is its i = j part
        // with the square dropped), the chi_i chi_j^{-1} factor over i < j
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Monomial a = mono_mul(mono_mul(v[i], v[j]), qinv);
                num *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(a, 1);
                if (j > i) {
                    Monomial b = mono_mul(mono_mul(v[i], mono_inv(v[j])), qinv);
                    num *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(b, 1);
                }
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Monomial a = mono_mul(mono_mul(v[i], v[j]), qinv);
                Monomial b = mono_mul(mono_mul(v[i], mono_inv(v[j])), qinv);
                num *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(a, 1);
                num *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(b, 1);
            }
        for (int i = 0; i < n; ++i)
            num *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(mono_mul(v[i], qinv), 1);
    }
    LaurentPoly den{Rational(1)};
    for (int i = 0; i < n; ++i) {
        Monomial a = mono_mul(mono_mul(v[i], mu), rinv);
        Monomial b = mono_mul(mono_mul(v[i], mono_inv(mu)), rinv);
        den *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(a, 1);
        den *= LaurentPoly(Rational(1)) - LaurentPoly::monomial(b, 1);
    }
    return RationalFunction(num, den);
}

inline RationalFunction bessel_normalization(int n, const BesselOptions& opts = {}) {
    return b_f0_at_one(n, opts) / w_tau_s_at_one(n, opts);
}

// ---------------------------------------------------------------------------
// The unramified Bessel value at varpi_H^delta.

inline bool is_bessel_dominant(const std::vector<int>& delta) {
    if (delta.empty()) return true;
    if (!is_dominant(delta)) return false;
    return delta.back() >= 0;
}

/**
 * B_{psi'_1, s_1}(varpi_H^delta)
 *   = L(s, mu_{s1} x tau) / L(2s, tau, Sym^2)
 *     * delta_H^{1/2} * S(chi_s, mu_{s1}, t) / S(chi_s, mu_{s1}, 1),
 * zero off the dominant cone. The S-quotient normalization makes
 * B(1) equal the L-ratio, matching the Lemma 4.5 normalization constant
 * B_{f_0}(1)/W_{tau_s}(1); the brute-force integral confirms this absolute
 * value. With the default options S(1) is the constant 1 - q^{-1}.
 */
inline RationalFunction bessel_value(const SatakeParams& sp,
                                     const std::vector<int>& delta,
                                     const BesselOptions& opts = {}) {
    int n = sp.n;
    if ((int)delta.size() != n) throw std::invalid_argument("delta length mismatch");
    if (!is_bessel_dominant(delta)) return RationalFunction(Rational(0));
    std::vector<long> dl(delta.begin(), delta.end());
    long e = delta_B_H_exp(dl);
    LaurentPoly half = LaurentPoly::var(SQRT_Q, (int)e);
    LaurentPoly S = s_sum(chi_s_values(n), mu_s1_value(), delta, opts);
    LaurentPoly S1 = s_sum(chi_s_values(n), mu_s1_value(),
                           std::vector<int>(n, 0), opts);
    auto L = l_factors(n, opts);
    return (L.L_mu_tau / L.L_sym2) * RationalFunction(half * S, S1);
}

} // namespace lfactor
