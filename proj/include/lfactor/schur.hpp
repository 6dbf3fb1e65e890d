#pragma once

#include <vector>
#include <numeric>

#include "ratfunc.hpp"

namespace lfactor {

namespace detail {

// Leibniz determinant; fine for the small sizes used here.
inline LaurentPoly poly_det(const std::vector<std::vector<LaurentPoly>>& m) {
    size_t n = m.size();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    LaurentPoly out;
    int sign;
    // iterate permutations with parity tracking
    std::vector<size_t> p = perm;
    auto parity = [&](const std::vector<size_t>& s) {
        int inv = 0;
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (s[i] > s[j]) ++inv;
        return inv % 2 == 0 ? 1 : -1;
    };
    do {
        sign = parity(p);
        LaurentPoly term{Rational(sign)};
        for (size_t i = 0; i < n; ++i) term *= m[i][p[i]];
        out += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace detail

inline bool is_dominant(const std::vector<int>& lambda) {
    for (size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i - 1] < lambda[i]) return false;
    return true;
}

/**
 * Laurent-Schur polynomial in X_1..X_n by the bialternant formula
 * det(X_i^{lambda_j + n - j}) / det(X_i^{n - j}). Entries of lambda may be
 * negative; lambda must be weakly decreasing.
 */
inline LaurentPoly schur_poly(const std::vector<int>& lambda) {
    int n = static_cast<int>(lambda.size());
    if (!is_dominant(lambda))
        throw std::invalid_argument("schur_poly requires a weakly decreasing weight");
    if (n == 0) return LaurentPoly(Rational(1));
    std::vector<std::vector<LaurentPoly>> numm(n, std::vector<LaurentPoly>(n));
    std::vector<std::vector<LaurentPoly>> denm(n, std::vector<LaurentPoly>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            numm[i][j] = LaurentPoly::var(X(i + 1), lambda[j] + n - 1 - j);
            denm[i][j] = LaurentPoly::var(X(i + 1), n - 1 - j);
        }
    }
    return divexact(detail::poly_det(numm), detail::poly_det(denm));
}

} // namespace lfactor
