#pragma once

#include <vector>
#include <map>
#include <complex>

#include "schur.hpp"
#include "iwasawa.hpp"

namespace lfactor {

/**
 * Satake data of the unramified pair (tau, mu). The chi_i and mu live as the
 * formal variables X(i) and MU of the symbolic layer; a numeric instance is a
 * choice of values for those variables (plus SQRT_Q and the s-variables),
 * applied when a symbolic result is evaluated. This keeps "specialize, then
 * compute" and "compute, then specialize" trivially equal.
 */
struct SatakeParams {
    int n = 1;
    int64_t q = 3;
    std::map<VarId, std::complex<double>> numeric;

    static SatakeParams formal(int n_, int64_t q_) {
        SatakeParams s; s.n = n_; s.q = q_;
        return s;
    }
    // Fill the evaluation map: chi_i on the unit circle by angles, mu, q.
    SatakeParams& with_numeric(const std::vector<std::complex<double>>& chi,
                               std::complex<double> mu) {
        for (int i = 0; i < (int)chi.size(); ++i) numeric[X(i + 1)] = chi[i];
        numeric[MU] = mu;
        numeric[SQRT_Q] = std::sqrt((double)q);
        return *this;
    }
};

/**
 * Casselman-Shalika value of the GL_n spherical Whittaker function at
 * varpi^lambda: zero off the dominant cone, else
 * delta_B^{1/2}(varpi^lambda) * s_lambda(chi).
 */
inline RationalFunction cs_whittaker_gln(const SatakeParams& sp,
                                         const std::vector<int>& lambda) {
    if ((int)lambda.size() != sp.n) throw std::invalid_argument("weight length mismatch");
    if (!is_dominant(lambda)) return RationalFunction(Rational(0));
    std::vector<long> lv(lambda.begin(), lambda.end());
    long e = delta_B_gln_exp(lv);   // delta_B = q^e, so delta^{1/2} = r^e
    LaurentPoly half = LaurentPoly::var(SQRT_Q, (int)e);
    return RationalFunction(half * schur_poly(lambda));
}

/**
 * A Whittaker-model value: a unimodular character phase (the psi part,
 * numeric) times a symbolic magnitude in SQRT_Q, Z_S and the Satake
 * variables.
 */
struct WhittakerValue {
    std::complex<double> phase{1.0, 0.0};
    RationalFunction value{Rational(1)};

    std::complex<double> eval(const std::map<VarId, std::complex<double>>& m) const {
        return phase * value.eval(m);
    }
};

// W_tau on GL_n(F) through the Iwasawa decomposition g = z varpi^lambda k:
// psi_0(z) * CS(lambda).
inline WhittakerValue whittaker_gln(const SatakeParams& sp,
                                    const Mat<PAdicScalar>& g,
                                    const RingTraits<PAdicScalar>::Ctx& c) {
    auto dec = iwasawa_gln(g, c);
    std::vector<int> lambda(dec.tval.begin(), dec.tval.end());
    WhittakerValue out;
    out.value = cs_whittaker_gln(sp, lambda);
    out.phase = out.value.is_zero() ? std::complex<double>{1.0, 0.0}
                                    : psi0_Zn(dec.z);
    return out;
}

/**
 * The normalized spherical vector of Ind_{Q_n}^{H} tau |det|^{s-1/2},
 * evaluated at (h, a): decompose h = n_Q v(x) k through the Borel Iwasawa
 * decomposition and the Siegel split, then
 *
 *   W(h, a) = delta_{Q_n}^{1/2}(v(x)) |det x|^{s-1/2} W_tau(a x),
 *
 * with |det x|^{-s} carried by Z_S. W(1,1) = 1.
 */
inline WhittakerValue eval_W_rho(const SatakeParams& sp,
                                 const Mat<PAdicScalar>& h,
                                 const Mat<PAdicScalar>& a,
                                 const RingTraits<PAdicScalar>::Ctx& c) {
    int n = sp.n;
    if (h.n != 2 * n + 1 || a.n != n) throw std::invalid_argument("size mismatch");
    auto dec = iwasawa_H(h, c);
    Mat<PAdicScalar> b = dec.u;
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) b.at(i, j) = b.at(i, j) * dec.t[j];
    Mat<PAdicScalar> x(n, PAdicScalar::zero_at(c.p));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x.at(i, j) = b.at(i, j);

    long vdet = 0;
    for (int i = 0; i < n; ++i) vdet += dec.tval[i];
    // delta_{Q_n}^{1/2} = |det x|^{n/2} and |det x|^{s-1/2} = Z_S^{v} r^{v}
    Monomial pre;
    if (vdet != 0) pre[Z_S] = (int)vdet;
    int re = (int)(vdet * (1 - n));
    if (re != 0) pre[SQRT_Q] = re;

    WhittakerValue inner = whittaker_gln(sp, a * x, c);
    WhittakerValue out;
    out.phase = inner.phase;
    out.value = RationalFunction(LaurentPoly::monomial(pre, 1)) * inner.value;
    return out;
}

} // namespace lfactor
