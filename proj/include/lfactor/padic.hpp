#pragma once

#include <cstdint>
#include <stdexcept>
#include <complex>
#include <cmath>
#include <algorithm>

#include "rational.hpp"

namespace lfactor {

/**
 * Truncated p-adic scalar for an odd prime p, with an absolute error bound:
 * the value is known modulo p^abs. A nonzero value is p^val * unit with
 * 0 < unit < p^{abs-val} coprime to p; unit == 0 means the value is
 * indistinguishable from 0 modulo p^abs. Bounds propagate conservatively,
 * so a claimed digit is always a true digit; total cancellation keeps its
 * bound instead of collapsing to an exact zero.
 */
class PAdicScalar {
public:
    static constexpr int64_t EXACT = int64_t(1) << 50;

    int64_t p = 3;
    int64_t val = EXACT;   // valuation; == abs when unit == 0
    int64_t unit = 0;      // unit part mod p^{abs-val}; 0 encodes "0 mod p^abs"
    int64_t abs = EXACT;   // value known modulo p^abs

    PAdicScalar() = default;

    static int64_t pow_i(int64_t b, int e) {
        int64_t out = 1;
        while (e-- > 0) {
            if (out > (int64_t(1) << 61) / b) throw std::overflow_error("p^N overflow");
            out *= b;
        }
        return out;
    }

    // largest d with p^d representable for modular arithmetic
    static int max_digits(int64_t p) {
        int d = 0;
        int64_t out = 1;
        while (out <= (int64_t(1) << 61) / p) { out *= p; ++d; }
        return d - 1;
    }

    static PAdicScalar zero_at(int64_t p) {
        PAdicScalar x; x.p = p; return x;
    }

    static PAdicScalar from_integer(int64_t p, int64_t n, int prec) {
        PAdicScalar x; x.p = p;
        if (n == 0) return x;
        x.val = 0;
        while (n % p == 0) { n /= p; ++x.val; }
        int digits = std::min(prec, max_digits(p));
        x.abs = x.val + digits;
        int64_t mod = pow_i(p, digits);
        int64_t u = n % mod;
        if (u < 0) u += mod;
        x.unit = u;
        if (x.unit == 0) x.val = x.abs;
        return x;
    }

    static PAdicScalar from_rational(int64_t p, const Rational& r, int prec) {
        if (r == 0) return zero_at(p);
        Int num = boost::multiprecision::numerator(r);
        Int den = boost::multiprecision::denominator(r);
        int64_t v = 0;
        while (num % p == 0) { num /= p; ++v; }
        while (den % p == 0) { den /= p; --v; }
        int digits = std::min(prec, max_digits(p));
        Int mod = pow_i(p, digits);
        Int nu = num % mod; if (nu < 0) nu += mod;
        Int de = den % mod; if (de < 0) de += mod;
        // modular inverse of de by extended Euclid
        Int a = de, b = mod, x0 = 1, x1 = 0;
        while (b != 0) {
            Int q = a / b, t = a - q * b;
            a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        Int inv = x0 % mod; if (inv < 0) inv += mod;
        PAdicScalar out; out.p = p; out.val = v; out.abs = v + digits;
        out.unit = static_cast<int64_t>((nu * inv) % mod);
        if (out.unit == 0) out.val = out.abs;
        return out;
    }

    // p^k * this
    PAdicScalar shifted(int64_t k) const {
        PAdicScalar x = *this;
        if (x.val != EXACT) x.val += k;
        if (x.abs != EXACT) x.abs += k;
        return x;
    }

    bool is_zero() const { return unit == 0; }

    int64_t valuation() const {
        if (unit == 0) throw std::domain_error("valuation of (indistinguishable from) zero");
        return val;
    }

    // |x| = q^{-val} as an exact rational (q = p here, absolutely unramified)
    Rational norm() const {
        if (unit == 0) return 0;
        return pow_rat(Rational(p), static_cast<long>(-val));
    }

    static int64_t mulmod(int64_t a, int64_t b, int64_t m) {
        return static_cast<int64_t>((__int128)a * b % m);
    }

    PAdicScalar operator*(const PAdicScalar& o) const {
        check_same(o);
        // this = p^v u + O(p^abs); errors scale by the other factor's valuation
        int64_t ea = unit ? val : abs, eb = o.unit ? o.val : o.abs;
        int64_t bound = std::min(cap_add(abs, eb), cap_add(o.abs, ea));
        if (unit == 0 || o.unit == 0) return zero_mod(p, bound);
        PAdicScalar x; x.p = p;
        x.val = val + o.val;
        int digits = clamp_digits(bound - x.val);
        if (digits <= 0) return zero_mod(p, bound);
        x.abs = x.val + digits;
        int64_t mod = pow_i(p, digits);
        x.unit = mulmod(unit % mod, o.unit % mod, mod);
        return x;
    }

    PAdicScalar operator+(const PAdicScalar& o) const {
        check_same(o);
        int64_t bound = std::min(abs, o.abs);
        int64_t ea = unit ? val : abs, eb = o.unit ? o.val : o.abs;
        int64_t m = std::min(ea, eb);
        if (m >= bound) return zero_mod(p, bound);
        int digits = clamp_digits(bound - m);
        bound = m + digits;
        int64_t mod = pow_i(p, digits);
        int64_t s = 0;
        if (unit && val < bound)
            s = mulmod(unit % mod, pow_i(p, (int)(val - m)), mod);
        if (o.unit && o.val < bound)
            s = (s + mulmod(o.unit % mod, pow_i(p, (int)(o.val - m)), mod)) % mod;
        if (s == 0) return zero_mod(p, bound);
        PAdicScalar x; x.p = p; x.val = m; x.abs = bound;
        while (s % p == 0) { s /= p; ++x.val; }
        x.unit = s % pow_i(p, (int)(x.abs - x.val));
        if (x.unit == 0) return zero_mod(p, bound);
        return x;
    }

    PAdicScalar operator-() const {
        if (unit == 0) return *this;
        PAdicScalar x = *this;
        int64_t mod = pow_i(p, (int)(abs - val));
        x.unit = (mod - unit % mod) % mod;
        return x;
    }
    PAdicScalar operator-(const PAdicScalar& o) const { return *this + (-o); }

    PAdicScalar inv() const {
        if (unit == 0) throw std::domain_error("inverting (indistinguishable from) zero");
        int digits = (int)(abs - val);
        int64_t mod = pow_i(p, digits);
        // extended Euclid on (unit, mod)
        int64_t a = unit % mod, b = mod, x0 = 1, x1 = 0;
        while (b != 0) {
            int64_t q = a / b, t = a - q * b;
            a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        int64_t iu = x0 % mod; if (iu < 0) iu += mod;
        PAdicScalar x; x.p = p;
        x.val = -val;
        x.abs = -val + digits;
        x.unit = iu;
        return x;
    }
    PAdicScalar operator/(const PAdicScalar& o) const { return *this * o.inv(); }

    // agreement modulo p^{min(abs, o.abs)}
    bool operator==(const PAdicScalar& o) const { return (*this - o).is_zero(); }
    bool operator!=(const PAdicScalar& o) const { return !(*this == o); }

    bool is_integral() const { return unit == 0 ? abs >= 0 : val >= 0; }
    bool is_unit() const { return unit != 0 && val == 0; }

    // Exact rational representative of the stored truncation.
    Rational to_rational() const {
        if (unit == 0) return 0;
        return Rational(unit) * pow_rat(Rational(p), static_cast<long>(val));
    }

private:
    static PAdicScalar zero_mod(int64_t p, int64_t bound) {
        PAdicScalar x; x.p = p;
        x.abs = std::min(bound, EXACT);
        x.val = x.abs;
        x.unit = 0;
        return x;
    }
    static int64_t cap_add(int64_t a, int64_t b) {
        return (a >= EXACT || b >= EXACT) ? EXACT : a + b;
    }
    int clamp_digits(int64_t d) const {
        return (int)std::min<int64_t>(d, max_digits(p));
    }
    void check_same(const PAdicScalar& o) const {
        if (p != o.p) throw std::invalid_argument("mixed primes");
    }
};

/**
 * Unramified additive character: psi(x) = e^{2 pi i {x}} with {x} the
 * p-power fractional part. Exactly 1 on integers.
 */
inline std::complex<double> additive_character(const PAdicScalar& x) {
    if (x.abs < 0)
        throw std::domain_error("insufficient precision for fractional part");
    if (x.is_zero() || x.val >= 0) return {1.0, 0.0};
    int k = static_cast<int>(-x.val);
    int64_t den = PAdicScalar::pow_i(x.p, k);
    int64_t numr = x.unit % den;
    double theta = 2.0 * M_PI * static_cast<double>(numr) / static_cast<double>(den);
    return {std::cos(theta), std::sin(theta)};
}

} // namespace lfactor
