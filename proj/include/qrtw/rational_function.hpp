#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrtw/polynomial.hpp"

namespace qrtw {

// A rational function c * num / prod(factor_i ^ exp_i).
//
// The denominator is kept as a multiset of irreducible-enough factors instead
// of one expanded polynomial. The point is cancellation without a multivariate
// gcd: after every operation each denominator factor is peeled off the
// numerator by exact trial division for as long as it divides. Compositions
// of the catalogued maps stay small under this scheme where the naive expanded
// representation blows up to ~10^5-term numerators.
//
// Normal form (canonical; construction enforces it):
//   - num is integer-coefficient, content-free, with positive leading
//     coefficient under graded lex (the zero function stores num = 0);
//   - every factor is nonconstant, integer-coefficient, content-free, with
//     positive leading coefficient, and does not divide num;
//   - factors are sorted by Polynomial::compare; equal factors are merged
//     into the exponent;
//   - the scalar coef carries the sign and all rational content (coef = 1 for
//     the zero function).
//
// The flattened view (normalized_pair) then satisfies: den expanded has
// positive leading coefficient, and integer content is removed jointly from
// num and den.
class RationalFunction {
public:
    struct Factor {
        Polynomial base;
        unsigned exp;
    };

    // zero over a symbol table
    explicit RationalFunction(SymbolsPtr syms)
        : coef_(1), num_(Polynomial::zero(std::move(syms))) {}

    // zero over the empty ring; placeholder state for containers
    RationalFunction() : RationalFunction(empty_symbols()) {}

    explicit RationalFunction(const Polynomial& num);
    RationalFunction(const Polynomial& num, const Polynomial& den); // throws DivisionByZero

    static RationalFunction constant(SymbolsPtr syms, const Rational& c);
    static RationalFunction variable(SymbolsPtr syms, size_t idx);

    // internal constructor used by the arithmetic: value = c * num / prod(den)
    static RationalFunction make(const Rational& c, Polynomial num,
                                 std::vector<Factor> den);

    const SymbolsPtr& symbols() const { return num_.symbols(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant(); }
    const Rational& coef() const { return coef_; }
    const Polynomial& num_primitive() const { return num_; }
    const std::vector<Factor>& den_factors() const { return den_; }

    Polynomial den_expanded() const;

    // Jointly normalized (num, den) pair per the documented invariants.
    std::pair<Polynomial, Polynomial> normalized_pair() const;

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const; // throws DivisionByZero
    RationalFunction operator*(const Rational& c) const;

    RationalFunction inverse() const; // throws DivisionByZero
    RationalFunction pow_int(long e) const;

    bool identical(const RationalFunction& o) const; // representation equality

    RationalFunction derivative(size_t var) const;

    int max_total_degree() const; // max(deg num, deg den), for SZ bounds

    Rational eval(const std::vector<Rational>& point) const; // throws DenominatorVanishes
    double eval_double(const std::vector<double>& point) const;

    // many-term sum with a single normalization pass at the end
    static RationalFunction sum(const std::vector<RationalFunction>& parts);

    // Polynomial p evaluated at rational-function arguments (args indexed by
    // p's symbols; results live over the args' symbol table).
    static RationalFunction substitute(const Polynomial& p,
                                       const std::vector<RationalFunction>& args);

    // Full composition f(args); every symbol of f gets an argument.
    RationalFunction substitute(const std::vector<RationalFunction>& args) const;

    std::string str() const;

private:
    Rational coef_;
    Polynomial num_;
    std::vector<Factor> den_;

    void reduce();        // peel denominator factors off the numerator
    void sort_factors();
};

inline RationalFunction operator*(const Rational& c, const RationalFunction& f) {
    return f * c;
}

// --- equality -------------------------------------------------------------

struct EqualityResult {
    bool equal;
    // filled on randomized-mode mismatch: the witness point and both values
    std::vector<Rational> witness_point;
    Rational lhs, rhs;
    // randomized mode metadata
    int trials = 0;
    double sz_bound_per_trial = 0.0;
};

// exact: cross-multiplied expansion to zero (common denominator factors are
// cancelled first, so the products stay small)
bool rf_equal_exact(const RationalFunction& f, const RationalFunction& g);

// randomized: Schwartz-Zippel sampling at `trials` random rational points,
// rejecting denominator zeros
EqualityResult rf_equal_randomized(const RationalFunction& f, const RationalFunction& g,
                                   uint64_t seed, int trials);

} // namespace qrtw
