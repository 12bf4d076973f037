#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qrtw/calculus.hpp"
#include "qrtw/parser.hpp"
#include "qrtw/rational_map.hpp"

namespace qrtw {

// parameter name -> value, substituted into every stored object at
// instantiation time; names that are phase variables of a ring are left alone
struct ParameterAssignment {
    std::map<std::string, Rational> values;
};

struct GammaConstraint {
    std::string desc; // e.g. "gamma3*gamma4 == gamma1*gamma2"
    RationalFunction lhs, rhs;
};

// pi ∘ phi == psi ∘ pi, one pi component per symbol of psi's ring
struct SquareInfo {
    RationalMap psi;
    std::vector<RationalFunction> pi;
    // fiber variable of psi (only for the full invariant-coordinate maps)
    std::optional<size_t> fiber_var;
};

struct ContractionStep {
    VectorField X;
    // every listed form must equal the contraction (the 6d chain has both the
    // two-term display and the -dr∧du2∧dv2∧du3 version)
    std::vector<WeightedVolumeForm> expected;
};

struct ContractionChain {
    WeightedVolumeForm start;
    std::vector<ContractionStep> steps;
};

// one exact identity between stored quantities, e.g. h1 = u2*r + 1
struct Identity {
    std::string desc;
    RationalFunction lhs, rhs;
    Mode mode = Mode::Exact;
};

// One map/vector-field pair of an example (phi, phihat, ...): the ambient data
// and its reduction to the plane.
struct SystemData {
    std::string tag;
    VectorField X;
    std::vector<RationalFunction> gammas;
    std::vector<GammaConstraint> gamma_constraints;
    std::vector<std::pair<std::string, RationalFunction>> invariants;
    // the same invariants rebuilt from the gammas (checked against the above)
    std::vector<RationalFunction> invariants_from_gammas;
    RationalFunction sigma; // ambient volume density
    std::optional<RationalMap> ambient;
    std::vector<RationalMap> involutions;
    // ambient == first ∘ second, when the factors are on record
    std::optional<std::pair<RationalMap, RationalMap>> composition;
    int volume_sign = 0; // expected weighted-determinant sign; 0 = record only
    int push_sign = 0;   // expected pushforward sign of X; 0 = record only
    // additional symmetry fields with expected pushforward sign (6d X1)
    std::vector<std::tuple<std::string, VectorField, int>> extra_fields;
    std::optional<VectorField> S1; // 6d rescaled field, tied to the basis
    std::optional<ContractionChain> chain;
    std::optional<SquareInfo> square;
    // other forms on record (e.g. the ambient symplectic form in uv coordinates)
    std::vector<std::pair<std::string, WeightedVolumeForm>> named_forms;
    RationalMap reduced; // planar map on the reduced ring
};

struct SymmetryConfig {
    bool enabled = false;
    size_t basis_system = 0;
    // X == sum_i recovery[i] * sigma_i when non-empty
    std::vector<RationalFunction> recovery;
};

struct ExampleBundle {
    std::string name;
    std::string summary;
    size_t ambient_dim = 4;
    SymbolsPtr amb_syms;
    size_t amb_nphase = 4;
    SymbolsPtr red_syms;
    size_t red_nphase = 2;
    std::vector<std::string> levels; // level parameter names (k, or k1 k3)
    std::vector<SystemData> systems;
    std::string reduced_invariant_name;
    RationalFunction reduced_invariant;
    RationalFunction omega_sigma; // reduced symplectic density
    // printed QRT map when it differs from every reduced system map
    std::optional<RationalMap> qrt_display;
    // index of the system whose reduced map the QRT construction reproduces
    std::optional<size_t> qrt_matches_system;
    // pairs of systems whose ambient maps commute already in the full space
    std::vector<std::pair<size_t, size_t>> ambient_commuting_pairs;
    SymmetryConfig symmetry;
    std::vector<Identity> identities;
    Mode preferred_mode = Mode::Exact; // for the expensive symbolic checks
    ParameterAssignment params;
};

struct ExampleInfo {
    std::string name;
    std::string summary;
};

std::vector<ExampleInfo> list_examples();

// Directory holding the .def files: $QRTW_DATA_DIR if set, else the
// compiled-in location.
std::string data_dir();

// Parses the example's definition file, assembles the bundle, verifies the
// gamma constraints, and substitutes the assigned parameter values. `mutate`
// optionally names one definition whose value gets +1 before assembly, to
// exercise the failure paths. Throws UnknownExample for unrecognized names.
ExampleBundle instantiate(const std::string& name,
                          const ParameterAssignment& params = {},
                          const std::string& mutate = {});

// all definition names of an example's data file, in file order
std::vector<std::string> definition_names(const std::string& name);

// the planar reduction alone: maps, invariant, and symplectic density
struct ReducedSystem {
    SymbolsPtr syms;
    size_t nphase = 2;
    std::vector<std::pair<std::string, RationalMap>> maps;
    std::string invariant_name;
    RationalFunction invariant;
    RationalFunction omega_sigma;
};

ReducedSystem reduced(const std::string& name,
                      const ParameterAssignment& params = {});

// rewrite f over a different ring, matching symbols by name (every symbol of
// f's ring must exist in the target)
RationalFunction transport(const RationalFunction& f, const SymbolsPtr& target);

} // namespace qrtw
