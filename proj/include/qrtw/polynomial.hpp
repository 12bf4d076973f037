#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrtw/rational.hpp"
#include "qrtw/symbols.hpp"

namespace qrtw {

// Sparse multivariate polynomial over Rational with a canonical graded-lex
// term order. No zero coefficients are ever stored, so equal polynomials have
// identical representations.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit Polynomial(SymbolsPtr syms) : syms_(std::move(syms)) {}

    static Polynomial zero(SymbolsPtr syms) { return Polynomial(std::move(syms)); }
    static Polynomial constant(SymbolsPtr syms, const Rational& c);
    static Polynomial variable(SymbolsPtr syms, size_t idx);

    const SymbolsPtr& symbols() const { return syms_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // 0 for the zero polynomial

    int total_degree() const;       // -1 for zero
    int degree_in(size_t var) const; // -1 for zero
    bool depends_on(size_t var) const { return degree_in(var) > 0; }

    // leading term under graded lex; polynomial must be nonzero
    const Monomial& leading_monomial() const;
    const Rational& leading_coeff() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned e) const;

    // Adds c * m * o to *this in place (workhorse of exact division).
    void add_scaled(const Rational& c, const Monomial& m, const Polynomial& o);
    void add_term(const Monomial& m, const Rational& c);

    Polynomial derivative(size_t var) const;

    // coefficient of var^power, as a polynomial in the remaining variables
    Polynomial coeff_of(size_t var, unsigned power) const;

    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;

    // Exact division: returns the quotient iff divisor divides exactly.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

    // Positive rational c with (*this)/c integer-coefficient and content-free;
    // zero polynomial has content 1.
    Rational content() const;

    // *this == scale * primitive_part(), where the primitive part has integer
    // content-free coefficients and positive leading coefficient.
    Polynomial primitive_part(Rational* scale = nullptr) const;

    // deterministic three-way order, for canonical denominator factor lists
    static int compare(const Polynomial& a, const Polynomial& b);

    std::string str() const;

private:
    SymbolsPtr syms_;
    TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

} // namespace qrtw
