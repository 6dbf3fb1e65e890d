#pragma once

#include <complex>

#include "matrix.hpp"

namespace lfactor {

// ---------------------------------------------------------------------------
// Forms and membership

template <class S>
Mat<S> j_matrix(int k, const typename Mat<S>::Ctx& c) {
    Mat<S> j(k, RingTraits<S>::zero(c));
    for (int i = 0; i < k; ++i) j.at(i, k - 1 - i) = RingTraits<S>::one(c);
    return j;
}

template <class S>
bool is_so(const Mat<S>& g, const typename Mat<S>::Ctx& c) {
    int k = g.n;
    Mat<S> J = j_matrix<S>(k, c);
    if (!(g.transpose() * J * g == J)) return false;
    return g.det(c) == RingTraits<S>::one(c);
}

// ---------------------------------------------------------------------------
// G = {(g1,g2) in GL2 x GL2 : det g1 = det g2^{-1}}

template <class S>
struct GPair {
    Mat<S> g1, g2;
};

template <class S>
GPair<S> gpair_mul(const GPair<S>& a, const GPair<S>& b) {
    return {a.g1 * b.g1, a.g2 * b.g2};
}

/**
 * The isogeny SL2 x SL2 -> SO4 on 2x2 pairs ((a,b;c,d),(a',b';c',d')).
 */
template <class S>
Mat<S> iota1(const GPair<S>& g, const typename Mat<S>::Ctx& c) {
    const Mat<S>& x = g.g1;
    const Mat<S>& y = g.g2;
    S a = x.at(0, 0), b = x.at(0, 1), cc = x.at(1, 0), d = x.at(1, 1);
    S ap = y.at(0, 0), bp = y.at(0, 1), cp = y.at(1, 0), dp = y.at(1, 1);
    S z = RingTraits<S>::zero(c);
    Mat<S> m(4, z);
    m.at(0, 0) = a * ap;   m.at(0, 1) = z - a * bp;  m.at(0, 2) = b * ap;      m.at(0, 3) = b * bp;
    m.at(1, 0) = z - a * cp; m.at(1, 1) = a * dp;    m.at(1, 2) = z - b * cp;  m.at(1, 3) = z - b * dp;
    m.at(2, 0) = cc * ap;  m.at(2, 1) = z - cc * bp; m.at(2, 2) = d * ap;      m.at(2, 3) = d * bp;
    m.at(3, 0) = cc * cp;  m.at(3, 1) = z - cc * dp; m.at(3, 2) = d * cp;      m.at(3, 3) = d * dp;
    return m;
}

namespace detail {

// Change of basis taking the 4+1 block realization of SO4 inside SO5 to the
// split antidiagonal form. Entries lie in Z[1/4], so it is integral and
// invertible over O for odd residual characteristic.
inline const std::vector<std::vector<Rational>>& so4_conjugator() {
    static const std::vector<std::vector<Rational>> s = {
        {1, 0, 0, 0, 0},
        {0, -1, 1, Rational(1, 2), 0},
        {0, 1, 0, Rational(1, 2), 0},
        {0, Rational(1, 2), Rational(1, 2), Rational(-1, 4), 0},
        {0, 0, 0, 0, 1}};
    return s;
}

} // namespace detail

/**
 * SO4 -> SO5. The 4x4 input is placed on coordinates (1,2,4,5) with a 1 at
 * (3,3), then conjugated into the antidiagonal-form realization.
 */
template <class S>
Mat<S> iota2(const Mat<S>& m, const typename Mat<S>::Ctx& c) {
    if (m.n != 4) throw std::invalid_argument("iota2 expects a 4x4 matrix");
    if (!is_so(m, c)) throw std::domain_error("iota2 argument is not in SO4");
    Mat<S> ins(5, RingTraits<S>::zero(c));
    static const int pos[4] = {0, 1, 3, 4};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ins.at(pos[i], pos[j]) = m.at(i, j);
    ins.at(2, 2) = RingTraits<S>::one(c);
    Mat<S> s2 = Mat<S>::from_rationals(detail::so4_conjugator(), c);
    return s2 * ins * s2.inverse(c);
}

template <class S>
Mat<S> iota(const GPair<S>& g, const typename Mat<S>::Ctx& c) {
    return iota2(iota1(g, c), c);
}

/** diag(I_{n-2}, m, I_{n-2}) in SO_{2n+1}. */
template <class S>
Mat<S> embed_so5_in_H(const Mat<S>& m, int n, const typename Mat<S>::Ctx& c) {
    if (m.n != 5) throw std::invalid_argument("expected a 5x5 block");
    int N = 2 * n + 1;
    Mat<S> out = Mat<S>::identity(N, c);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) out.at(n - 2 + i, n - 2 + j) = m.at(i, j);
    return out;
}

// ---------------------------------------------------------------------------
// Special elements of H = SO_{2n+1}

namespace detail {

// Assemble a block matrix from (row sizes, col sizes, placements).
template <class S>
void place_scaled_identity(Mat<S>& m, int r0, int c0, int k, const S& v) {
    for (int i = 0; i < k; ++i) m.at(r0 + i, c0 + i) = v;
}

} // namespace detail

/** The Weyl element w of the local integral (row blocks 2,n-2,1,n-2,2). */
template <class S>
Mat<S> w_element(int n, const typename Mat<S>::Ctx& c) {
    int N = 2 * n + 1;
    Mat<S> m(N, RingTraits<S>::zero(c));
    S one = RingTraits<S>::one(c);
    S half = RingTraits<S>::from_rational(c, Rational(1, 2));
    S two = RingTraits<S>::from_rational(c, Rational(2));
    S mid = RingTraits<S>::from_rational(c, (n % 2 == 0) ? 1 : -1);  // (-1)^{n-2}
    // column blocks: n-2 | 2 | 1 | 2 | n-2
    detail::place_scaled_identity(m, 0, n - 2, 2, half);
    detail::place_scaled_identity(m, 2, n + 3, n - 2, one);
    m.at(n, n) = mid;
    detail::place_scaled_identity(m, n + 1, 0, n - 2, one);
    detail::place_scaled_identity(m, 2 * n - 1, n + 1, 2, two);
    return m;
}

/** w0 of the unfolding argument: swaps the outer (n-2)-blocks. */
template <class S>
Mat<S> w0_element(int n, const typename Mat<S>::Ctx& c) {
    int N = 2 * n + 1;
    Mat<S> m(N, RingTraits<S>::zero(c));
    S one = RingTraits<S>::one(c);
    S mid = RingTraits<S>::from_rational(c, (n % 2 == 0) ? 1 : -1);
    detail::place_scaled_identity(m, 0, n + 3, n - 2, one);
    detail::place_scaled_identity(m, n - 2, n - 2, 2, one);
    m.at(n, n) = mid;
    detail::place_scaled_identity(m, n + 1, n + 1, 2, one);
    detail::place_scaled_identity(m, n + 3, 0, n - 2, one);
    return m;
}

/** wtilde0 = antidiag(I_n, (-1)^n, I_n). */
template <class S>
Mat<S> wtilde0_element(int n, const typename Mat<S>::Ctx& c) {
    int N = 2 * n + 1;
    Mat<S> m(N, RingTraits<S>::zero(c));
    S one = RingTraits<S>::one(c);
    detail::place_scaled_identity(m, 0, n + 1, n, one);
    m.at(n, n) = RingTraits<S>::from_rational(c, (n % 2 == 0) ? 1 : -1);
    detail::place_scaled_identity(m, n + 1, 0, n, one);
    return m;
}

/** w' = diag(I_n, -1, I_n). */
template <class S>
Mat<S> wprime_element(int n, const typename Mat<S>::Ctx& c) {
    Mat<S> m = Mat<S>::identity(2 * n + 1, c);
    m.at(n, n) = RingTraits<S>::from_rational(c, -1);
    return m;
}

/** Levi element v(x) = diag(x, 1, J_n x^{-T} J_n). */
template <class S>
Mat<S> v_of_x(const Mat<S>& x, const typename Mat<S>::Ctx& c) {
    int n = x.n;
    Mat<S> J = j_matrix<S>(n, c);
    Mat<S> xstar = J * x.inverse(c).transpose() * J;
    Mat<S> m = Mat<S>::identity(2 * n + 1, c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m.at(i, j) = x.at(i, j);
            m.at(n + 1 + i, n + 1 + j) = xstar.at(i, j);
        }
    return m;
}

/**
 * Torus element diag(p^{d_1},..,p^{d_n},1,p^{-d_n},..,p^{-d_1}). The inverse
 * half runs in reverse so that t_i t_{2n+2-i} = 1 (as the antidiagonal form
 * requires; the inline list in the paper orders it the other way).
 */
inline Mat<PAdicScalar> varpi_H_delta(const std::vector<int>& delta,
                                      const RingTraits<PAdicScalar>::Ctx& c) {
    int n = static_cast<int>(delta.size());
    Mat<PAdicScalar> m = Mat<PAdicScalar>::identity(2 * n + 1, c);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = RingTraits<PAdicScalar>::one(c).shifted(delta[i]);
        m.at(2 * n - i, 2 * n - i) = RingTraits<PAdicScalar>::one(c).shifted(-delta[i]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Characters (p-adic arguments)

/** psi_1 on N_H: psi(sum_{i<=n-3} u_{i,i+1} + u_{n-2,n} + (1/2)u_{n-2,n+2}). */
inline std::complex<double> psi1_NH(const Mat<PAdicScalar>& u, int n) {
    auto ctx = RingTraits<PAdicScalar>::Ctx{u.a[0].p, PAdicScalar::max_digits(u.a[0].p)};
    PAdicScalar s = RingTraits<PAdicScalar>::zero(ctx);
    for (int i = 1; i <= n - 3; ++i) s = s + u.at(i - 1, i);
    if (n >= 3) {
        s = s + u.at(n - 3, n - 1);
        s = s + RingTraits<PAdicScalar>::from_rational(ctx, Rational(1, 2)) * u.at(n - 3, n + 1);
    }
    return additive_character(s);
}

/** psi_0 on Z_n: the full superdiagonal character. */
inline std::complex<double> psi0_Zn(const Mat<PAdicScalar>& z) {
    int n = z.n;
    PAdicScalar s = PAdicScalar::zero_at(z.a[0].p);
    for (int i = 0; i + 1 < n; ++i) s = s + z.at(i, i + 1);
    return additive_character(s);
}

/** psi_{y,Q'} on Z_n: psi(-4Q'(y_2) z_{12} + z_{23} + ... + z_{n-1,n}). */
inline std::complex<double> psi_yQ_Zn(const Mat<PAdicScalar>& z,
                                      const PAdicScalar& minus4Qprime) {
    int n = z.n;
    PAdicScalar s = minus4Qprime * z.at(0, 1);
    for (int i = 1; i + 1 < n; ++i) s = s + z.at(i, i + 1);
    return additive_character(s);
}

/** psi'_1 of the Bessel model: psi(sum_{i<=n-1} v_{i,i+1} + (1/2) v_{2n,1}). */
inline std::complex<double> psi1_prime(const Mat<PAdicScalar>& v, int n) {
    auto ctx = RingTraits<PAdicScalar>::Ctx{v.a[0].p, PAdicScalar::max_digits(v.a[0].p)};
    PAdicScalar s = RingTraits<PAdicScalar>::zero(ctx);
    for (int i = 1; i <= n - 1; ++i) s = s + v.at(i - 1, i);
    s = s + RingTraits<PAdicScalar>::from_rational(ctx, Rational(1, 2)) * v.at(2 * n - 1, 0);
    return additive_character(s);
}

// ---------------------------------------------------------------------------
// Modulus characters, returned as the exponent e with delta = q^e.

/** Borel of GL_n: delta(t) = prod |t_i|^{n-2i+1}. */
inline long delta_B_gln_exp(const std::vector<long>& val_t) {
    int n = static_cast<int>(val_t.size());
    long e = 0;
    for (int i = 1; i <= n; ++i) e -= (n - 2 * i + 1) * val_t[i - 1];
    return e;
}

/** Borel of SO_{2n+1}: delta(t) = prod |t_i|^{2(n-i)+1}. */
inline long delta_B_H_exp(const std::vector<long>& lambda) {
    int n = static_cast<int>(lambda.size());
    long e = 0;
    for (int i = 1; i <= n; ++i) e -= (2 * (n - i) + 1) * lambda[i - 1];
    return e;
}

/** Siegel parabolic Q_n: delta(v(x)) = |det x|^n. */
inline long delta_Qn_exp(long val_det_x, int n) { return -n * val_det_x; }

} // namespace lfactor
