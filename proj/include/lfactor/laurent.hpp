#pragma once

#include <map>
#include <vector>
#include <complex>
#include <stdexcept>
#include <sstream>
#include <algorithm>

#include "rational.hpp"
#include "varid.hpp"

namespace lfactor {

// Sparse exponent vector; zero exponents are never stored.
using Monomial = std::map<VarId, int>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (auto& [v, e] : b) {
        int ne = (out.count(v) ? out[v] : 0) + e;
        if (ne == 0) out.erase(v); else out[v] = ne;
    }
    return out;
}

inline Monomial mono_inv(const Monomial& a) {
    Monomial out;
    for (auto& [v, e] : a) out[v] = -e;
    return out;
}

/**
 * Multivariate Laurent polynomial over Q.
 *
 * Exponents may be negative; the zero polynomial has an empty term map.
 * All arithmetic is exact. Term order is the std::map order on the sparse
 * exponent vectors, which makes serialization canonical.
 */
class LaurentPoly {
public:
    std::map<Monomial, Rational> terms;

    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& c) {
        if (c != 0) terms[Monomial{}] = c;
    }
    static LaurentPoly var(VarId v, int e = 1) {
        LaurentPoly p;
        if (e == 0) return LaurentPoly(Rational(1));
        p.terms[Monomial{{v, e}}] = 1;
        return p;
    }
    static LaurentPoly monomial(const Monomial& m, const Rational& c) {
        LaurentPoly p;
        if (c != 0) p.terms[m] = c;
        return p;
    }
    // q^k as SQRT_Q^{2k}
    static LaurentPoly q_pow(int k) { return var(SQRT_Q, 2 * k); }

    bool is_zero() const { return terms.empty(); }

    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms.empty()) return 0;
        if (!is_constant()) throw std::logic_error("not a constant");
        return terms.begin()->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly out;
        for (auto& [m, c] : terms) out.terms[m] = -c;
        return out;
    }
    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly out = *this;
        for (auto& [m, c] : o.terms) out.add_term(m, c);
        return out;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly out = *this;
        for (auto& [m, c] : o.terms) out.add_term(m, -c);
        return out;
    }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly out;
        for (auto& [m1, c1] : terms)
            for (auto& [m2, c2] : o.terms)
                out.add_term(mono_mul(m1, m2), c1 * c2);
        return out;
    }
    LaurentPoly operator*(const Rational& c) const {
        LaurentPoly out;
        if (c == 0) return out;
        for (auto& [m, k] : terms) out.terms[m] = k * c;
        return out;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    bool operator==(const LaurentPoly& o) const { return terms == o.terms; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Exponent range of a variable across all terms.
    int min_exp(VarId v) const {
        int m = 0; bool first = true;
        for (auto& [mon, c] : terms) {
            auto it = mon.find(v);
            int e = it == mon.end() ? 0 : it->second;
            if (first || e < m) { m = e; first = false; }
        }
        return m;
    }
    int max_exp(VarId v) const {
        int m = 0; bool first = true;
        for (auto& [mon, c] : terms) {
            auto it = mon.find(v);
            int e = it == mon.end() ? 0 : it->second;
            if (first || e > m) { m = e; first = false; }
        }
        return m;
    }

    bool depends_on(VarId v) const {
        for (auto& [mon, c] : terms)
            if (mon.count(v)) return true;
        return false;
    }

    // Coefficients of powers of one variable, as polynomials in the rest.
    std::map<int, LaurentPoly> collect(VarId v) const {
        std::map<int, LaurentPoly> out;
        for (auto& [mon, c] : terms) {
            Monomial rest = mon;
            int e = 0;
            auto it = rest.find(v);
            if (it != rest.end()) { e = it->second; rest.erase(it); }
            out[e].add_term(rest, c);
        }
        return out;
    }

    // v^k -> v^{-k} in every term.
    LaurentPoly invert_var(VarId v) const {
        LaurentPoly out;
        for (auto& [mon, c] : terms) {
            Monomial m = mon;
            auto it = m.find(v);
            if (it != m.end()) it->second = -it->second;
            out.terms[m] = c;
        }
        return out;
    }

    // Substitute one variable by a whole Laurent polynomial.
    // The exponent of v must be nonnegative unless rep is a unit monomial.
    LaurentPoly subst(VarId v, const LaurentPoly& rep) const {
        LaurentPoly out;
        for (auto& [mon, c] : terms) {
            Monomial rest = mon;
            int e = 0;
            auto it = rest.find(v);
            if (it != rest.end()) { e = it->second; rest.erase(it); }
            LaurentPoly term = LaurentPoly::monomial(rest, c);
            if (e != 0) {
                LaurentPoly base = rep;
                int n = e;
                if (n < 0) {
                    if (rep.terms.size() != 1)
                        throw std::invalid_argument("negative power of non-monomial substitution");
                    base = LaurentPoly::monomial(mono_inv(rep.terms.begin()->first),
                                                 Rational(1) / rep.terms.begin()->second);
                    n = -n;
                }
                for (int i = 0; i < n; ++i) term *= base;
            }
            out += term;
        }
        return out;
    }

    std::complex<double> eval(const std::map<VarId, std::complex<double>>& vals) const {
        std::complex<double> out = 0;
        for (auto& [mon, c] : terms) {
            std::complex<double> t = to_complex(c);
            for (auto& [v, e] : mon) {
                auto it = vals.find(v);
                if (it == vals.end())
                    throw std::invalid_argument("missing value for variable " + var_name(v));
                t *= std::pow(it->second, e);
            }
            out += t;
        }
        return out;
    }

    // Exact evaluation at rational points; requires every variable assigned.
    Rational eval_rational(const std::map<VarId, Rational>& vals) const {
        Rational out = 0;
        for (auto& [mon, c] : terms) {
            Rational t = c;
            for (auto& [v, e] : mon) {
                auto it = vals.find(v);
                if (it == vals.end())
                    throw std::invalid_argument("missing value for variable " + var_name(v));
                t *= pow_rat(it->second, e);
            }
            out += t;
        }
        return out;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [mon, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << c.str();
            for (auto& [v, e] : mon) os << "*" << var_name(v) << "^" << e;
        }
        return os.str();
    }
};

inline LaurentPoly operator*(const Rational& c, const LaurentPoly& p) { return p * c; }

/**
 * Exact division of Laurent polynomials: returns q with a = q*b, or throws
 * if the quotient does not exist. Both are shifted to ordinary polynomials
 * first; division then proceeds by leading terms in the map order.
 */
inline LaurentPoly divexact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (a.is_zero()) return LaurentPoly();

    // collect every variable appearing
    std::vector<VarId> vars;
    for (auto* p : {&a, &b})
        for (auto& [mon, c] : p->terms)
            for (auto& [v, e] : mon)
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

    // shift to nonnegative exponents
    Monomial shift_a, shift_b;
    for (VarId v : vars) {
        int ma = a.min_exp(v), mb = b.min_exp(v);
        if (ma < 0) shift_a[v] = -ma;
        if (mb < 0) shift_b[v] = -mb;
    }
    LaurentPoly A = LaurentPoly::monomial(shift_a, 1) * a;
    LaurentPoly B = LaurentPoly::monomial(shift_b, 1) * b;

    // dense exponent vectors under graded lex (a genuine monomial order)
    using Expo = std::vector<int>;
    struct GrLex {
        bool operator()(const Expo& x, const Expo& y) const {
            long dx = 0, dy = 0;
            for (int e : x) dx += e;
            for (int e : y) dy += e;
            if (dx != dy) return dx < dy;
            return x < y;
        }
    };
    auto densify = [&](const LaurentPoly& p) {
        std::map<Expo, Rational, GrLex> out;
        for (auto& [mon, c] : p.terms) {
            Expo e(vars.size(), 0);
            for (size_t i = 0; i < vars.size(); ++i) {
                auto it = mon.find(vars[i]);
                if (it != mon.end()) e[i] = it->second;
            }
            out[e] = c;
        }
        return out;
    };
    auto db = densify(B);
    auto dr = densify(A);
    std::map<Expo, Rational, GrLex> dq;
    const auto& lbm = std::prev(db.end())->first;
    const Rational& lbc = std::prev(db.end())->second;
    long guard = 0;
    const long max_steps = 2000000;
    while (!dr.empty()) {
        if (++guard > max_steps) throw std::runtime_error("exact division step cap exceeded");
        auto lr = std::prev(dr.end());
        Expo mq(vars.size());
        for (size_t i = 0; i < vars.size(); ++i) {
            mq[i] = lr->first[i] - lbm[i];
            if (mq[i] < 0) throw std::runtime_error("not exactly divisible");
        }
        Rational cq = lr->second / lbc;
        dq[mq] = cq;
        for (auto& [m, c] : db) {
            Expo prod(vars.size());
            for (size_t i = 0; i < vars.size(); ++i) prod[i] = mq[i] + m[i];
            auto it = dr.find(prod);
            Rational nc = (it == dr.end() ? Rational(0) : it->second) - cq * c;
            if (nc == 0) { if (it != dr.end()) dr.erase(it); }
            else dr[prod] = nc;
        }
    }
    LaurentPoly q;
    for (auto& [e, c] : dq) {
        Monomial m;
        for (size_t i = 0; i < vars.size(); ++i)
            if (e[i] != 0) m[vars[i]] = e[i];
        q.add_term(m, c);
    }
    // undo shifts: q corresponds to (shift_a * a) / (shift_b * b)
    return LaurentPoly::monomial(mono_mul(mono_inv(shift_a), shift_b), 1) * q;
}

} // namespace lfactor
