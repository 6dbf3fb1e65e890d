#pragma once

#include <string>
#include <stdexcept>

namespace lfactor {

/**
 * Formal variables of the symbolic layer.
 *
 * SQRT_Q is a square root of the residue cardinality: q is always written
 * as SQRT_Q^2, so half-integral powers of q stay exact and substituting a
 * numeric value for SQRT_Q commutes with all arithmetic.
 *
 * Z_S  = q^{-s}, Z_S1 = q^{s_1}, Z_S2 = q^{s_2}: one variable per complex
 * parameter, chosen so that the series expansions used downstream are
 * expansions around 0 or infinity in a single variable.
 *
 * X(i) are the Satake coordinates, MU the auxiliary character value.
 */
using VarId = int;

constexpr VarId SQRT_Q = 0;
constexpr VarId MU     = 1;
constexpr VarId Z_S    = 2;
constexpr VarId Z_S1   = 3;
constexpr VarId Z_S2   = 4;
constexpr VarId X_BASE = 5;

inline VarId X(int i) { return X_BASE + i; }  // i is 1-based

inline std::string var_name(VarId v) {
    switch (v) {
        case SQRT_Q: return "r";   // r^2 = q
        case MU:     return "mu";
        case Z_S:    return "zs";  // q^{-s}
        case Z_S1:   return "z1";  // q^{s1}
        case Z_S2:   return "z2";  // q^{s2}
        default:
            if (v >= X_BASE) return "x" + std::to_string(v - X_BASE);
            throw std::invalid_argument("unknown variable id");
    }
}

} // namespace lfactor
