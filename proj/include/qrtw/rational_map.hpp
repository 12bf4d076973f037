#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrtw/linalg.hpp"
#include "qrtw/rational_function.hpp"

namespace qrtw {

// Named rational map on the phase variables of a ring. The symbol table is
// phase variables first, parameters last; only the nphase phase components are
// stored, parameters are implicitly fixed. Composition and Jacobians treat
// parameters as inert ring constants throughout.
struct RationalMap {
    std::string name;
    SymbolsPtr syms;
    size_t nphase = 0;
    std::vector<RationalFunction> comps; // comps.size() == nphase

    size_t nparams() const { return syms->size() - nphase; }

    // components extended with the identity on parameters, as substitution args
    std::vector<RationalFunction> full_args() const;

    static RationalMap identity(std::string name, SymbolsPtr syms, size_t nphase);
};

// equality and identity checks

enum class Mode { Exact, Randomized };

struct ModePolicy {
    Mode mode = Mode::Exact;
    int trials = 200;
    uint64_t seed = 0;
};

// point covering all symbols (phase variables then parameters)
using Point = std::vector<Rational>;

struct CheckResult {
    bool ok = true;
    std::string detail;                      // e.g. the sign found
    std::optional<Point> witness;
    std::optional<Rational> lhs, rhs;        // both sides at the witness
    Mode mode = Mode::Exact;
    int trials = 0;
    double sz_bound = 0.0;                   // per-trial Schwartz-Zippel bound

    static CheckResult pass(Mode m) { CheckResult r; r.mode = m; return r; }
};

// --- maps-core operations ---------------------------------------------------

// exact image of a full point (phase values followed by parameter values);
// parameter entries are passed through unchanged
Point apply(const RationalMap& m, const Point& p);

// f after g
RationalMap compose(const RationalMap& f, const RationalMap& g);

RFMatrix jacobian(const RationalMap& m); // nphase x nphase, phase partials only

CheckResult check_involution(const RationalMap& m, const ModePolicy& mp = {});

CheckResult check_invariant(const RationalMap& m, const RationalFunction& h,
                            const ModePolicy& mp = {});

// data for a vector field lives in calculus.hpp; pushforward only needs the
// component list, which is what this takes
CheckResult check_pushforward_sign(const RationalMap& m,
                                   const std::vector<RationalFunction>& X,
                                   const ModePolicy& mp = {});

// pi: one rational function over phi's ring per symbol of psi's ring
// (parameters of psi typically map to the matching ambient parameters);
// verifies pi∘phi == psi∘pi componentwise
CheckResult check_commuting_square(const RationalMap& phi, const RationalMap& psi,
                                   const std::vector<RationalFunction>& pi,
                                   const ModePolicy& mp = {});

CheckResult check_commutativity(const RationalMap& f, const RationalMap& g,
                                const ModePolicy& mp = {});

// confirms the fiber component has the shape alpha * v^{sign} with alpha
// independent of v (v = the fiber variable, sign from the pushforward of X)
CheckResult fiber_structure_check(const RationalMap& m, size_t fiber_var, int sign);

// lhs == rhs under the policy; failures carry a witness point and both values
CheckResult check_identity(const RationalFunction& lhs, const RationalFunction& rhs,
                           const ModePolicy& mp = {});

// samples a point separating lhs and rhs and records it on the result
void attach_witness(CheckResult& res, const RationalFunction& lhs,
                    const RationalFunction& rhs, uint64_t seed);

// exact componentwise identity with a witness search on the first mismatch
CheckResult compare_components_exact(const std::vector<RationalFunction>& lhs,
                                     const std::vector<RationalFunction>& rhs,
                                     uint64_t seed = 0);

// --- orbits ------------------------------------------------------------------

struct OrbitArithmetic {
    bool use_float = false;
    size_t bitcap = 1u << 16; // exact mode: max bits per numerator/denominator
    double tol = 1e-9;        // float mode: relative invariant drift flag
};

struct OrbitRecord {
    std::vector<std::string> columns;            // variables then invariant names
    Point start;
    std::vector<Point> steps;                    // exact mode (includes start)
    std::vector<std::vector<Rational>> invariant_values;
    std::vector<std::vector<double>> float_steps; // float mode
    std::vector<std::vector<double>> float_invariants;
    bool float_drift_flagged = false;
    bool is_float = false;

    std::string to_csv() const;
};

OrbitRecord iterate_orbit(const RationalMap& m, const Point& p, int steps,
                          const std::vector<std::pair<std::string, RationalFunction>>& hs,
                          const OrbitArithmetic& arith = {});

} // namespace qrtw
