#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>

namespace lfactor {

using Int = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long n, long d = 1) { return Rational(n, d); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

inline std::complex<double> to_complex(const Rational& r) {
    return {to_double(r), 0.0};
}

// Exact integer power with negative exponents allowed.
inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = base;
    long n = e;
    if (n < 0) { b = Rational(1) / b; n = -n; }
    Rational out(1);
    while (n > 0) {
        if (n & 1) out *= b;
        b *= b;
        n >>= 1;
    }
    return out;
}

} // namespace lfactor
