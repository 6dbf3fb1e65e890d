#pragma once

#include "groups.hpp"

namespace lfactor {

/** The bracket of the paper: b when |b| <= 1, otherwise b^{-1}. */
inline PAdicScalar floor_bracket(const PAdicScalar& b) {
    if (b.is_zero()) throw std::domain_error("floor bracket of zero");
    return b.val >= 0 ? b : b.inv();
}

template <class S>
struct IwasawaGLn {
    Mat<S> z;                    // upper unipotent
    std::vector<int64_t> tval;   // valuations of the diagonal
    Mat<S> k;                    // GL_n(O)
};

/**
 * g = z t k with z upper unipotent, t = diag(p^{v_i}), k integral with unit
 * determinant. Column reduction from the bottom row up.
 */
inline IwasawaGLn<PAdicScalar> iwasawa_gln(const Mat<PAdicScalar>& g0,
                                           const RingTraits<PAdicScalar>::Ctx& c) {
    int n = g0.n;
    Mat<PAdicScalar> g = g0;
    Mat<PAdicScalar> kk = Mat<PAdicScalar>::identity(n, c);

    auto col_swap = [&](Mat<PAdicScalar>& m, int a, int b) {
        for (int r = 0; r < n; ++r) std::swap(m.at(r, a), m.at(r, b));
    };
    auto col_scale = [&](Mat<PAdicScalar>& m, int j, const PAdicScalar& u) {
        for (int r = 0; r < n; ++r) m.at(r, j) = m.at(r, j) * u;
    };
    auto col_addmul = [&](Mat<PAdicScalar>& m, int dst, int src, const PAdicScalar& a) {
        for (int r = 0; r < n; ++r) m.at(r, dst) = m.at(r, dst) + a * m.at(r, src);
    };

    for (int i = n - 1; i >= 0; --i) {
        int piv = -1;
        for (int j = 0; j <= i; ++j) {
            if (g.at(i, j).is_zero()) continue;
            if (piv < 0 || g.at(i, j).val < g.at(i, piv).val) piv = j;
        }
        if (piv < 0) throw std::domain_error("singular matrix in Iwasawa reduction");
        if (piv != i) { col_swap(g, piv, i); col_swap(kk, piv, i); }
        // normalize the pivot to an exact power of p
        PAdicScalar pw = RingTraits<PAdicScalar>::one(c).shifted(g.at(i, i).val);
        PAdicScalar u = pw / g.at(i, i);
        col_scale(g, i, u); col_scale(kk, i, u);
        for (int j = 0; j < i; ++j) {
            if (g.at(i, j).is_zero()) continue;
            PAdicScalar a = -(g.at(i, j) / g.at(i, i));
            if (a.val < 0) throw std::logic_error("non-integral coefficient in reduction");
            col_addmul(g, j, i, a); col_addmul(kk, j, i, a);
        }
    }

    IwasawaGLn<PAdicScalar> out;
    out.tval.resize(n);
    Mat<PAdicScalar> z = Mat<PAdicScalar>::identity(n, c);
    for (int i = 0; i < n; ++i) {
        out.tval[i] = g.at(i, i).val;
        for (int j = i + 1; j < n; ++j) z.at(i, j) = g.at(i, j) / g.at(j, j);
    }
    out.z = z;
    out.k = kk.inverse(c);
    return out;
}

template <class S>
struct IwasawaH {
    Mat<S> u;                    // upper unipotent in H
    std::vector<S> t;            // full diagonal t_1..t_{2n+1} (t_i t_{2n+2-i} = 1)
    std::vector<int64_t> tval;   // valuations of t_1..t_n
    Mat<S> k;                    // K_H = SO_{2n+1}(O)
};

namespace detail {

// K_H row operations used to left-reduce an element of SO_{2n+1}(F) to upper
// triangular form. All are integral and preserve the antidiagonal form.
struct HReduction {
    int N, mid;
    RingTraits<PAdicScalar>::Ctx c;
    Mat<PAdicScalar> g, k;

    HReduction(const Mat<PAdicScalar>& g0, const RingTraits<PAdicScalar>::Ctx& ctx)
        : N(g0.n), mid(g0.n / 2), c(ctx), g(g0),
          k(Mat<PAdicScalar>::identity(g0.n, ctx)) {}

    int pair(int i) const { return N - 1 - i; }

    void apply(const Mat<PAdicScalar>& L) { g = L * g; k = L * k; }

    // signed permutation moving row r to row c (r != mid)
    void move_pivot(int cidx, int r) {
        if (r == cidx) return;
        Mat<PAdicScalar> P(N, RingTraits<PAdicScalar>::zero(c));
        PAdicScalar one = RingTraits<PAdicScalar>::one(c);
        std::vector<int> dest(N);
        for (int i = 0; i < N; ++i) dest[i] = i;
        if (r == pair(cidx)) {
            dest[cidx] = r; dest[r] = cidx;
            for (int i = 0; i < N; ++i) P.at(dest[i], i) = one;
            P.at(mid, mid) = -one;   // restore det = 1
        } else {
            dest[cidx] = r; dest[r] = cidx;
            dest[pair(cidx)] = pair(r); dest[pair(r)] = pair(cidx);
            for (int i = 0; i < N; ++i) P.at(dest[i], i) = one;
        }
        apply(P.transpose());   // row permutation sending row r -> row c
    }

    // I + a(E_{rc} - E_{c'r'}); requires r,c != mid, r != c, r != pair(c)
    void long_op(int r, int cidx, const PAdicScalar& a) {
        Mat<PAdicScalar> L = Mat<PAdicScalar>::identity(N, c);
        L.at(r, cidx) = a;
        L.at(pair(cidx), pair(r)) = L.at(pair(cidx), pair(r)) - a;
        apply(L);
    }

    // adds b*(row c) to the middle row: exp of the short root generator
    void short_op_to_mid(int cidx, const PAdicScalar& b) {
        Mat<PAdicScalar> L = Mat<PAdicScalar>::identity(N, c);
        L.at(mid, cidx) = b;
        L.at(pair(cidx), mid) = -b;
        L.at(pair(cidx), cidx) = -(b * b) / RingTraits<PAdicScalar>::from_rational(c, 2);
        apply(L);
    }

    // adds b*(middle row) to row c
    void short_op_from_mid(int cidx, const PAdicScalar& b) {
        Mat<PAdicScalar> L = Mat<PAdicScalar>::identity(N, c);
        L.at(cidx, mid) = b;
        L.at(mid, pair(cidx)) = -b;
        L.at(cidx, pair(cidx)) = -(b * b) / RingTraits<PAdicScalar>::from_rational(c, 2);
        apply(L);
    }
};

} // namespace detail

/**
 * h = u t k for h in SO_{2n+1}(F): u upper unipotent in H, t in the diagonal
 * torus (units kept in t), k in SO_{2n+1}(O). Works by left-reducing h^{-1}
 * with integral operations that preserve the form; entries forced to vanish
 * by isotropy relations are checked, not assumed.
 */
inline IwasawaH<PAdicScalar> iwasawa_H(const Mat<PAdicScalar>& h,
                                       const RingTraits<PAdicScalar>::Ctx& c) {
    int N = h.n;
    if (N % 2 == 0) throw std::invalid_argument("expected odd size");
    int n = N / 2, mid = n;
    detail::HReduction red(h.inverse(c), c);

    for (int col = 0; col < n; ++col) {
        int pr = red.pair(col);
        // rows beyond pair(col) must already vanish in this column
        for (int r = pr + 1; r < N; ++r)
            if (!red.g.at(r, col).is_zero())
                throw std::domain_error("argument is not in SO_{2n+1} (or precision lost)");
        // pivot: minimal valuation among rows [col, pair(col)] excluding mid
        int piv = -1;
        for (int r = col; r <= pr; ++r) {
            if (r == mid || red.g.at(r, col).is_zero()) continue;
            if (piv < 0 || red.g.at(r, col).val < red.g.at(piv, col).val) piv = r;
        }
        bool mid_better = !red.g.at(mid, col).is_zero() &&
                          (piv < 0 || red.g.at(mid, col).val < red.g.at(piv, col).val);
        if (mid_better) {
            red.short_op_from_mid(col, RingTraits<PAdicScalar>::one(c));
            piv = col;
        }
        if (piv < 0) throw std::domain_error("singular column in SO Iwasawa reduction");
        red.move_pivot(col, piv);
        PAdicScalar d = red.g.at(col, col);
        for (int r = col + 1; r <= pr; ++r) {
            if (r == mid || r == pr || red.g.at(r, col).is_zero()) continue;
            PAdicScalar a = -(red.g.at(r, col) / d);
            if (a.val < 0) throw std::logic_error("non-integral coefficient in SO reduction");
            red.long_op(r, col, a);
        }
        if (!red.g.at(mid, col).is_zero()) {
            PAdicScalar b = -(red.g.at(mid, col) / d);
            if (b.val < 0) throw std::logic_error("non-integral coefficient in SO reduction");
            red.short_op_to_mid(col, b);
        }
        // the paired entry vanishes by isotropy of the column
        if (!red.g.at(pr, col).is_zero())
            throw std::domain_error("isotropy relation failed: not in SO or precision lost");
    }
    // the right half is forced upper triangular by the form
    for (int col = n; col < N; ++col)
        for (int r = col + 1; r < N; ++r)
            if (!red.g.at(r, col).is_zero())
                throw std::domain_error("residual lower entry: not in SO or precision lost");

    // g was h^{-1}; now k0 * h^{-1} = T upper triangular, so h = T^{-1} k0
    Mat<PAdicScalar> binv = red.g;            // T
    Mat<PAdicScalar> b = binv.inverse(c);     // upper triangular, in H
    IwasawaH<PAdicScalar> out;
    out.t.resize(N, PAdicScalar::zero_at(c.p));
    out.tval.resize(n);
    for (int i = 0; i < N; ++i) out.t[i] = b.at(i, i);
    for (int i = 0; i < n; ++i) out.tval[i] = b.at(i, i).val;
    Mat<PAdicScalar> u = Mat<PAdicScalar>::identity(N, c);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) u.at(i, j) = b.at(i, j) / b.at(j, j);
    out.u = u;
    out.k = red.k;
    return out;
}

// ---------------------------------------------------------------------------
// SO3 closed forms

/** n(c) = [[1,c,-c^2/2],[0,1,-c],[0,0,1]]. */
template <class S>
Mat<S> so3_n(const S& cc, const typename Mat<S>::Ctx& ctx) {
    Mat<S> m = Mat<S>::identity(3, ctx);
    m.at(0, 1) = cc;
    m.at(0, 2) = RingTraits<S>::zero(ctx) -
                 cc * cc / RingTraits<S>::from_rational(ctx, 2);
    m.at(1, 2) = RingTraits<S>::zero(ctx) - cc;
    return m;
}

/**
 * The middle SO3 block of the torus image: eigenvalues {b, 1, b^{-1}},
 * preserves the antidiagonal form, R(b)R(b') = R(bb').
 */
template <class S>
Mat<S> so3_R(const S& b, const typename Mat<S>::Ctx& ctx) {
    S one = RingTraits<S>::one(ctx);
    auto q = [&](const Rational& r) { return RingTraits<S>::from_rational(ctx, r); };
    S bi = one / b;
    Mat<S> m(3, RingTraits<S>::zero(ctx));
    S bp1 = b + one, bm1 = b - one;
    S b2 = b * b;
    m.at(0, 0) = bp1 * bp1 * bi * q(Rational(1, 4));
    m.at(0, 1) = (one - b2) * bi * q(Rational(1, 2));
    m.at(0, 2) = RingTraits<S>::zero(ctx) - bm1 * bm1 * bi * q(Rational(1, 2));
    m.at(1, 0) = (one - b2) * bi * q(Rational(1, 4));
    m.at(1, 1) = (b2 + one) * bi * q(Rational(1, 2));
    m.at(1, 2) = (b2 - one) * bi * q(Rational(1, 2));
    m.at(2, 0) = RingTraits<S>::zero(ctx) - bm1 * bm1 * bi * q(Rational(1, 8));
    m.at(2, 1) = (b2 - one) * bi * q(Rational(1, 4));
    m.at(2, 2) = bp1 * bp1 * bi * q(Rational(1, 4));
    return m;
}

struct SO3Closed {
    int cconst;          // +2 or -2
    PAdicScalar t;       // floor bracket of b
};

/** R(b) = n(c) diag(t,1,t^{-1}) k' with k' integral; c = 2 iff |b| <= 1. */
inline SO3Closed so3_iwasawa_closed(const PAdicScalar& b) {
    SO3Closed out;
    out.cconst = (b.is_zero() || b.val >= 0) ? 2 : -2;
    out.t = floor_bracket(b);
    return out;
}

} // namespace lfactor
