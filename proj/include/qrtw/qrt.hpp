#pragma once

#include "qrtw/rational_map.hpp"

namespace qrtw {

// Invariant h(u,v) that is biquadratic after clearing denominators: both the
// numerator and denominator have degree <= 2 in each of the two phase
// variables (indices u_var, v_var of the ring).
struct BiquadraticInvariant {
    RationalFunction h;
    size_t u_var = 0, v_var = 1;
    Polynomial num, den; // the cleared pair (jointly normalized)
};

// Throws NotBiquadratic if a degree exceeds 2 or h does not depend on both
// variables.
BiquadraticInvariant validate_biquadratic(const RationalFunction& h,
                                          size_t u_var, size_t v_var);

// The switch involution in `var`: sends var to the conjugate root of
// h(., other) = h(var, other), other variable fixed. Root separation is exact
// division of P(t) = num(t) den(var) − num(var) den(t) by (t − var); the
// linear quotient gives the second root by Vieta. Throws DegenerateSwitch when
// the quadratic coefficient vanishes identically.
RationalMap qrt_switch(const BiquadraticInvariant& h, size_t var);

// horizontal switch (in u) first, then the vertical switch applied after it
RationalMap build_qrt(const BiquadraticInvariant& h);

} // namespace qrtw
