#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qrtw/rational_map.hpp"

namespace qrtw {

struct VectorField {
    std::string name;
    SymbolsPtr syms;
    size_t nphase = 0;
    std::vector<RationalFunction> comps; // one per phase variable
};

// Degree-k form sum over wedge basis elements of the phase variables. A basis
// element is the increasing index subset encoded as a bitmask over the symbol
// list; coefficients are rational functions. Top-degree weighted volume forms
// dx_1∧…∧dy_n/σ carry the single coefficient 1/σ.
struct WeightedVolumeForm {
    SymbolsPtr syms;
    size_t nphase = 0;
    int degree = 0;
    std::map<uint32_t, RationalFunction> coeffs; // popcount(key) == degree, nonzero

    static WeightedVolumeForm top(SymbolsPtr syms, size_t nphase,
                                  const RationalFunction& sigma_inverse_coeff);

    bool is_zero() const { return coeffs.empty(); }
    std::string str() const;
};

// equality of forms as exact identities, coefficient by coefficient
bool forms_equal(const WeightedVolumeForm& a, const WeightedVolumeForm& b);

// --- operations ---------------------------------------------------------------

RationalFunction partial(const RationalFunction& f, size_t var);

// sum_i d/dx_i (X^i / sigma); identically zero certifies d(X ⌟ Ω) = 0 for the
// weighted volume Ω = dx_1∧…∧dy_n/σ
RationalFunction divergence(const VectorField& X, const RationalFunction& sigma);

// interior product in the first wedge slot:
// X ⌟ (dz_{i_1}∧…∧dz_{i_k}) = sum_j (-1)^(j-1) X^{i_j} dz_{i_1}∧…(omit i_j)…∧dz_{i_k}
WeightedVolumeForm contract(const VectorField& X, const WeightedVolumeForm& omega);

// pullback m*(omega): coefficient at dz_S is sum over subsets T of
// coeff_T∘m times the minor det(dm_T/dz_S)
WeightedVolumeForm pullback(const RationalMap& m, const WeightedVolumeForm& omega);

// det(J(m)) * sigma / (sigma∘m) == +1 (preserved) or -1 (anti-preserved);
// works for any dimension (the 2d case is the symplectic density check)
CheckResult weighted_volume_sign(const RationalMap& m, const RationalFunction& sigma,
                                 const ModePolicy& mp = {});

inline CheckResult symplectic_check_2d(const RationalMap& m, const RationalFunction& sigma,
                                       const ModePolicy& mp = {}) {
    return weighted_volume_sign(m, sigma, mp);
}

// Solves sigma·∇h_i = 0 for the last |h| phase components, one basis field per
// free slot (unit there, zero in the other free slots). Throws SingularSystem
// if the genericity assumption fails.
std::vector<VectorField> symmetry_basis(const std::vector<RationalFunction>& h,
                                        SymbolsPtr syms, size_t nphase);

// [X,Y]^i = X·∇Y^i − Y·∇X^i
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

} // namespace qrtw
