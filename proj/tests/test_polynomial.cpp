#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qrtw/parser.hpp"
#include "qrtw/polynomial.hpp"

using namespace qrtw;

namespace {
SymbolsPtr xy() { return make_symbols({"x1", "x2", "y1", "y2", "a"}); }

Polynomial poly(const SymbolsPtr& s, const std::string& text) {
    RationalFunction f = parse_expression(text, s);
    REQUIRE(f.den_factors().empty());
    return f.num_primitive() * f.coef();
}
} // namespace

TEST_CASE("constants and variables") {
    auto s = xy();
    Polynomial z = Polynomial::zero(s);
    CHECK(z.is_zero());
    CHECK(z.total_degree() == -1);
    CHECK(z.content() == 1);

    Polynomial c = Polynomial::constant(s, Rational(-7, 2));
    CHECK(c.is_constant());
    CHECK(c.constant_value() == Rational(-7, 2));

    Polynomial x = Polynomial::variable(s, 0);
    CHECK(x.degree_in(0) == 1);
    CHECK(x.degree_in(1) == 0);
    CHECK_FALSE(x.is_constant());
}

TEST_CASE("canonical representation: equal polynomials have identical terms") {
    auto s = xy();
    Polynomial p = poly(s, "x1*y1 - x2*y2 + x1*y1");
    Polynomial q = poly(s, "2*x1*y1 - x2*y2");
    CHECK(p == q);
    CHECK(p.terms() == q.terms());
    // zero coefficients are dropped
    Polynomial r = poly(s, "x1*y1 - x1*y1");
    CHECK(r.is_zero());
    CHECK(r.term_count() == 0);
}

TEST_CASE("graded lex order: leading term by total degree, then lexicographic") {
    auto s = xy();
    Polynomial p = poly(s, "x2^3 + x1*y1 + x1");
    // x2^3 has degree 3, beats the degree-2 and degree-1 terms
    CHECK(p.leading_monomial().total_degree() == 3);
    Polynomial q = poly(s, "x1*x2 + x2*y1");
    // same total degree: x1*x2 > x2*y1 lexicographically (x1 earlier)
    CHECK(q.leading_monomial().e[0] == 1);
}

TEST_CASE("arithmetic") {
    auto s = xy();
    Polynomial g3 = poly(s, "x1*x2"), g4 = poly(s, "y1*y2");
    Polynomial g1 = poly(s, "x1*y1"), g2 = poly(s, "x2*y2");
    CHECK(g3 * g4 == g1 * g2); // the gamma constraint as polynomials
    CHECK((g1 - g1).is_zero());
    CHECK(-(-g1) == g1);
    Polynomial h = poly(s, "(1-x1*x2)*(1-y1*y2)-2*a*x1*y1");
    CHECK(h.total_degree() == 4);
    CHECK(h.pow(2) == h * h);
    CHECK(h.pow(0).constant_value() == 1);
}

TEST_CASE("coeff_of and derivative") {
    auto s = make_symbols({"u", "v", "k"});
    Polynomial p = poly(s, "u^2*v + 3*u*v - k*v^2 + 5");
    Polynomial c2 = p.coeff_of(0, 2);
    CHECK(c2 == poly(s, "v"));
    CHECK(p.coeff_of(0, 1) == poly(s, "3*v"));
    CHECK(p.coeff_of(0, 0) == poly(s, "5 - k*v^2"));
    CHECK(p.derivative(0) == poly(s, "2*u*v + 3*v"));
    CHECK(p.derivative(2) == poly(s, "-v^2"));
}

TEST_CASE("exact division") {
    auto s = xy();
    Polynomial p = poly(s, "x1^2 - y1^2"), d = poly(s, "x1 - y1");
    auto q = p.divide_exact(d);
    REQUIRE(q.has_value());
    CHECK(*q == poly(s, "x1 + y1"));
    CHECK(*q * d == p);
    CHECK_FALSE(poly(s, "x1^2 + y1^2").divide_exact(d).has_value());
    CHECK_FALSE(poly(s, "x1 + 1").divide_exact(poly(s, "x1*x2")).has_value());
}

TEST_CASE("content and primitive part") {
    auto s = xy();
    Polynomial p = poly(s, "4*x1 - 6*y1");
    CHECK(p.content() == 2);
    Rational scale;
    Polynomial pp = p.primitive_part(&scale);
    CHECK(scale == 2);
    CHECK(pp == poly(s, "2*x1 - 3*y1"));
    CHECK(pp.content() == 1);

    // negative leading coefficient moves into the scale
    Polynomial n = poly(s, "-x1 + y1");
    Rational ns;
    Polynomial np = n.primitive_part(&ns);
    CHECK(ns == -1);
    CHECK(np.leading_coeff() > 0);
}

TEST_CASE("evaluation") {
    auto s = xy();
    Polynomial h2 = poly(s, "x1*y1 - x2*y2");
    std::vector<Rational> pt{1, 2, 3, Rational(1, 2), 1};
    CHECK(h2.eval(pt) == 2);
    Polynomial h1 = poly(s, "(1-x1*x2)*(1-y1*y2)-2*a*x1*y1");
    CHECK(h1.eval(pt) == Rational(-11, 2));
    // evaluation is a ring homomorphism
    CHECK((h1 * h2).eval(pt) == h1.eval(pt) * h2.eval(pt));
    CHECK((h1 + h2).eval(pt) == h1.eval(pt) + h2.eval(pt));
}

TEST_CASE("compare is a deterministic total order") {
    auto s = xy();
    Polynomial p = poly(s, "x1 + 1"), q = poly(s, "y1 + 1");
    CHECK(Polynomial::compare(p, p) == 0);
    CHECK(Polynomial::compare(p, q) == -Polynomial::compare(q, p));
}
