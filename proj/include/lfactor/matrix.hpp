#pragma once

#include <vector>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "rational.hpp"
#include "ratfunc.hpp"
#include "padic.hpp"

namespace lfactor {

// Uniform construction/predicates for the scalar rings matrices range over.
template <class S> struct RingTraits;

template <> struct RingTraits<Rational> {
    struct Ctx {};
    static Rational zero(const Ctx&) { return 0; }
    static Rational one(const Ctx&) { return 1; }
    static Rational from_rational(const Ctx&, const Rational& r) { return r; }
    static bool is_zero(const Rational& x) { return x == 0; }
};

template <> struct RingTraits<RationalFunction> {
    struct Ctx {};
    static RationalFunction zero(const Ctx&) { return RationalFunction(Rational(0)); }
    static RationalFunction one(const Ctx&) { return RationalFunction(Rational(1)); }
    static RationalFunction from_rational(const Ctx&, const Rational& r) {
        return RationalFunction(r);
    }
    static bool is_zero(const RationalFunction& x) { return x.is_zero(); }
};

template <> struct RingTraits<PAdicScalar> {
    struct Ctx { int64_t p = 3; int prec = 8; };
    static PAdicScalar zero(const Ctx& c) { return PAdicScalar::zero_at(c.p); }
    static PAdicScalar one(const Ctx& c) { return PAdicScalar::from_integer(c.p, 1, c.prec); }
    static PAdicScalar from_rational(const Ctx& c, const Rational& r) {
        return PAdicScalar::from_rational(c.p, r, c.prec);
    }
    static bool is_zero(const PAdicScalar& x) { return x.is_zero(); }
};

/**
 * Dense square matrix over a commutative-ring scalar.
 */
template <class S>
class Mat {
public:
    int n = 0;
    std::vector<S> a;

    Mat() = default;
    Mat(int n_, const S& fill) : n(n_), a(n_ * n_, fill) {}

    S& at(int i, int j) { return a[i * n + j]; }
    const S& at(int i, int j) const { return a[i * n + j]; }

    using Ctx = typename RingTraits<S>::Ctx;

    static Mat identity(int n_, const Ctx& c) {
        Mat m(n_, RingTraits<S>::zero(c));
        for (int i = 0; i < n_; ++i) m.at(i, i) = RingTraits<S>::one(c);
        return m;
    }

    Mat operator*(const Mat& o) const {
        if (n != o.n) throw std::invalid_argument("size mismatch");
        Mat out(n, a[0]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                S acc = a[i * n] * o.a[j];   // k = 0
                for (int k = 1; k < n; ++k) acc = acc + at(i, k) * o.at(k, j);
                out.at(i, j) = acc;
            }
        return out;
    }

    Mat operator+(const Mat& o) const {
        Mat out = *this;
        for (size_t i = 0; i < a.size(); ++i) out.a[i] = out.a[i] + o.a[i];
        return out;
    }
    Mat operator-(const Mat& o) const {
        Mat out = *this;
        for (size_t i = 0; i < a.size(); ++i) out.a[i] = out.a[i] - o.a[i];
        return out;
    }

    Mat transpose() const {
        Mat out = *this;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(i, j) = at(j, i);
        return out;
    }

    bool operator==(const Mat& o) const {
        if (n != o.n) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == o.a[i])) return false;
        return true;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    // Gaussian-elimination inverse; scalars must form a field (or the pivots
    // must be invertible, as with p-adic units after row swaps).
    Mat inverse(const Ctx& c) const {
        Mat m = *this;
        Mat inv = identity(n, c);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!RingTraits<S>::is_zero(m.at(r, col))) { piv = r; break; }
            if (piv < 0) throw std::domain_error("singular matrix");
            if constexpr (std::is_same_v<S, PAdicScalar>) {
                // pick the minimal-valuation pivot for numerical robustness
                for (int r = col; r < n; ++r)
                    if (!m.at(r, col).is_zero() &&
                        m.at(r, col).val < m.at(piv, col).val) piv = r;
            }
            if (piv != col) {
                for (int j = 0; j < n; ++j) {
                    std::swap(m.at(col, j), m.at(piv, j));
                    std::swap(inv.at(col, j), inv.at(piv, j));
                }
            }
            S d = m.at(col, col);
            for (int j = 0; j < n; ++j) {
                m.at(col, j) = m.at(col, j) / d;
                inv.at(col, j) = inv.at(col, j) / d;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || RingTraits<S>::is_zero(m.at(r, col))) continue;
                S f = m.at(r, col);
                for (int j = 0; j < n; ++j) {
                    m.at(r, j) = m.at(r, j) - f * m.at(col, j);
                    inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    S det(const Ctx& c) const {
        Mat m = *this;
        S out = RingTraits<S>::one(c);
        bool neg = false;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!RingTraits<S>::is_zero(m.at(r, col))) { piv = r; break; }
            if (piv < 0) return RingTraits<S>::zero(c);
            if constexpr (std::is_same_v<S, PAdicScalar>) {
                for (int r = col; r < n; ++r)
                    if (!m.at(r, col).is_zero() &&
                        m.at(r, col).val < m.at(piv, col).val) piv = r;
            }
            if (piv != col) {
                for (int j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
                neg = !neg;
            }
            S d = m.at(col, col);
            out = out * d;
            for (int r = col + 1; r < n; ++r) {
                if (RingTraits<S>::is_zero(m.at(r, col))) continue;
                S f = m.at(r, col) / d;
                for (int j = col; j < n; ++j)
                    m.at(r, j) = m.at(r, j) - f * m.at(col, j);
            }
        }
        if (neg) out = RingTraits<S>::zero(c) - out;
        return out;
    }

    // Build from a table of small rationals.
    static Mat from_rationals(const std::vector<std::vector<Rational>>& rows, const Ctx& c) {
        int n_ = static_cast<int>(rows.size());
        Mat m(n_, RingTraits<S>::zero(c));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                m.at(i, j) = RingTraits<S>::from_rational(c, rows[i][j]);
        return m;
    }
};

} // namespace lfactor
