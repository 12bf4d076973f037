#pragma once

#include <stdexcept>
#include <string>

namespace qrtw {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// den(point) = 0 during evaluation, or a map hit its singular locus.
struct DenominatorVanishes : Error {
    explicit DenominatorVanishes(const std::string& where)
        : Error("denominator vanishes: " + where) {}
};

// division by the zero rational function
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by the zero rational function") {}
};

// a composed denominator is identically the zero polynomial
struct IdenticallySingular : Error {
    explicit IdenticallySingular(const std::string& where)
        : Error("identically singular composition: " + where) {}
};

struct SingularSystem : Error {
    SingularSystem() : Error("linear system is singular over the rational-function field") {}
};

struct NotBiquadratic : Error {
    NotBiquadratic(const std::string& var, int degree)
        : Error("invariant is not biquadratic: degree " + std::to_string(degree) +
                " in " + var),
          variable(var), deg(degree) {}
    std::string variable;
    int deg;
};

struct DegenerateSwitch : Error {
    explicit DegenerateSwitch(const std::string& var)
        : Error("degenerate switch: invariant effectively linear in " + var) {}
};

// a gamma constraint failed at load; carries a sampled counterexample
struct ConstraintViolation : Error {
    ConstraintViolation(const std::string& msg, std::string witness_text)
        : Error(msg), witness(std::move(witness_text)) {}
    std::string witness;
};

struct UnknownExample : Error {
    explicit UnknownExample(const std::string& name)
        : Error("unknown example: " + name) {}
};

struct BitCapExceeded : Error {
    explicit BitCapExceeded(int step)
        : Error("orbit entry exceeded the bit-size cap at step " + std::to_string(step)),
          step(step) {}
    int step;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

} // namespace qrtw
