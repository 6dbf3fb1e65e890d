#pragma once

#include "laurent.hpp"

namespace lfactor {

/**
 * Ratio of Laurent polynomials. Equality is decided by cross-multiplication,
 * so no canonical gcd form is maintained; a light monomial/leading-coefficient
 * normalization keeps intermediate sizes and serialization stable.
 */
class RationalFunction {
public:
    LaurentPoly num, den;

    RationalFunction() : num(), den(Rational(1)) {}
    RationalFunction(const Rational& c) : num(c), den(Rational(1)) {}
    RationalFunction(const LaurentPoly& n) : num(n), den(Rational(1)) {}
    RationalFunction(const LaurentPoly& n, const LaurentPoly& d) : num(n), den(d) {
        if (den.is_zero()) throw std::invalid_argument("zero denominator");
        normalize();
    }

    bool is_zero() const { return num.is_zero(); }

    // Divide num and den by their common monomial content and scale so the
    // denominator's first stored term has coefficient 1. Value-preserving.
    void normalize() {
        if (num.is_zero()) { den = LaurentPoly(Rational(1)); return; }
        std::map<VarId, int> lo;   // min exponent per var, absent term counts as 0
        std::map<VarId, bool> everywhere;
        for (auto* p : {&num, &den}) {
            for (auto& [mon, c] : p->terms) {
                for (auto& [v, e] : mon) {
                    auto it = lo.find(v);
                    if (it == lo.end()) { lo[v] = e; everywhere[v] = true; }
                    else it->second = std::min(it->second, e);
                }
            }
        }
        for (auto* p : {&num, &den})
            for (auto& [mon, c] : p->terms)
                for (auto& [v, seen] : everywhere)
                    if (!mon.count(v)) seen = false;
        Monomial shift;
        for (auto& [v, e] : lo) {
            int m = everywhere[v] ? e : std::min(e, 0);
            if (m != 0) shift[v] = m;
        }
        if (!shift.empty()) {
            LaurentPoly inv = LaurentPoly::monomial(mono_inv(shift), 1);
            num = inv * num;
            den = inv * den;
        }
        Rational lead = den.terms.begin()->second;
        if (lead != 1) {
            Rational ic = Rational(1) / lead;
            num = num * ic;
            den = den * ic;
        }
    }

    RationalFunction operator+(const RationalFunction& o) const {
        if (den == o.den) return RationalFunction(num + o.num, den);
        return RationalFunction(num * o.den + o.num * den, den * o.den);
    }
    RationalFunction operator-(const RationalFunction& o) const {
        if (den == o.den) return RationalFunction(num - o.num, den);
        return RationalFunction(num * o.den - o.num * den, den * o.den);
    }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num * o.num, den * o.den);
    }
    RationalFunction operator/(const RationalFunction& o) const {
        if (o.num.is_zero()) throw std::invalid_argument("division by zero");
        return RationalFunction(num * o.den, den * o.num);
    }
    RationalFunction operator-() const {
        RationalFunction out = *this;
        out.num = -out.num;
        return out;
    }
    RationalFunction& operator+=(const RationalFunction& o) { *this = *this + o; return *this; }
    RationalFunction& operator-=(const RationalFunction& o) { *this = *this - o; return *this; }
    RationalFunction& operator*=(const RationalFunction& o) { *this = *this * o; return *this; }
    RationalFunction& operator/=(const RationalFunction& o) { *this = *this / o; return *this; }

    bool operator==(const RationalFunction& o) const {
        return num * o.den == o.num * den;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    std::complex<double> eval(const std::map<VarId, std::complex<double>>& vals) const {
        return num.eval(vals) / den.eval(vals);
    }
    Rational eval_rational(const std::map<VarId, Rational>& vals) const {
        Rational d = den.eval_rational(vals);
        if (d == 0) throw std::domain_error("evaluation at a pole");
        return num.eval_rational(vals) / d;
    }

    // Reduce to a Laurent polynomial when the division is exact.
    LaurentPoly as_poly() const { return divexact(num, den); }

    std::string str() const {
        if (den == LaurentPoly(Rational(1))) return num.str();
        return "(" + num.str() + ") / (" + den.str() + ")";
    }
};

inline RationalFunction operator*(const Rational& c, const RationalFunction& f) {
    return RationalFunction(LaurentPoly(c)) * f;
}

// zeta_v applied to an exponent e: returns 1/(1 - z) where z = q^{-e} is
// supplied by the caller as a (monomial) Laurent polynomial.
inline RationalFunction zeta_v(const LaurentPoly& q_minus_exponent) {
    return RationalFunction(LaurentPoly(Rational(1)),
                            LaurentPoly(Rational(1)) - q_minus_exponent);
}

enum class Expand { AtZero, AtInfinity };

/**
 * Exact coefficient of var^k in the Laurent expansion of f, either around 0
 * or around infinity, as a rational function of the remaining variables.
 *
 * Around 0 the recurrence sum_j D_j c_{m-j} = N_m is solved upward from the
 * lowest order; around infinity we substitute var -> 1/var and flip k.
 */
inline RationalFunction coeff_extract(const RationalFunction& f, VarId var, int k,
                                      Expand dir) {
    if (dir == Expand::AtInfinity) {
        RationalFunction g(f.num.invert_var(var), f.den.invert_var(var));
        return coeff_extract(g, var, -k, Expand::AtZero);
    }
    auto N = f.num.collect(var);
    auto D = f.den.collect(var);
    if (N.empty()) return RationalFunction(Rational(0));
    int j0 = D.begin()->first;
    RationalFunction d0(D.begin()->second);
    int m0 = N.begin()->first - j0;   // lowest order of the expansion
    if (k < m0) return RationalFunction(Rational(0));

    std::map<int, RationalFunction> c;
    for (int m = m0; m <= k; ++m) {
        RationalFunction acc(Rational(0));
        auto nit = N.find(m + j0);
        if (nit != N.end()) acc = RationalFunction(nit->second);
        for (auto& [j, dj] : D) {
            if (j == j0) continue;
            int idx = m + j0 - j;
            auto cit = c.find(idx);
            if (cit != c.end())
                acc -= RationalFunction(dj) * cit->second;
        }
        c[m] = acc / d0;
    }
    return c[k];
}

} // namespace lfactor
