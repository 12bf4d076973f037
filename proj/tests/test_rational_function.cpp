#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qrtw/parser.hpp"
#include "qrtw/registry.hpp"

using namespace qrtw;

namespace {
SymbolsPtr xy() { return make_symbols({"x1", "x2", "y1", "y2", "a"}); }

RationalFunction rf(const SymbolsPtr& s, const std::string& text) {
    return parse_expression(text, s);
}
} // namespace

TEST_CASE("normal form invariants") {
    auto s = xy();
    RationalFunction f = rf(s, "(4*x1 - 6*y1)/(2*x2 - 2)");
    // numerator primitive, denominator factors primitive with positive lead,
    // rational content in the scalar
    CHECK(f.num_primitive().content() == 1);
    for (const auto& fac : f.den_factors()) {
        CHECK(fac.base.content() == 1);
        CHECK(fac.base.leading_coeff() > 0);
        CHECK_FALSE(fac.base.is_constant());
    }
    auto [num, den] = f.normalized_pair();
    CHECK(den.leading_coeff() > 0);

    // normalization is idempotent on the representation
    RationalFunction g = RationalFunction::make(f.coef(), f.num_primitive(),
                                                f.den_factors());
    CHECK(f.identical(g));
}

TEST_CASE("denominator factors cancel without a multivariate gcd") {
    auto s = xy();
    RationalFunction f = rf(s, "(x1^2 - y1^2)/(x1 - y1)");
    CHECK(f.den_factors().empty()); // peeled off by exact trial division
    CHECK(rf_equal_exact(f, rf(s, "x1 + y1")));

    RationalFunction g = rf(s, "x1/(1 - y1*y2)") * rf(s, "(1 - y1*y2)/x2");
    CHECK(g.den_factors().size() == 1);
    CHECK(rf_equal_exact(g, rf(s, "x1/x2")));
}

TEST_CASE("arithmetic identities") {
    auto s = xy();
    RationalFunction f = rf(s, "(1-x1*x2)*(1-y1*y2)-2*a*x1*y1");
    CHECK((f - f).is_zero());
    CHECK(rf_equal_exact(rf(s, "x1*x2") * rf(s, "y1*y2"),
                         rf(s, "x1*y1") * rf(s, "x2*y2")));
    RationalFunction g = rf(s, "x2/(1 - y1*y2)");
    CHECK(rf_equal_exact(f * g / g, f));
    CHECK(rf_equal_exact(g.inverse() * g, rf(s, "1")));
    CHECK(rf_equal_exact(g.pow_int(-2), (g * g).inverse()));
    CHECK_THROWS_AS(f / RationalFunction(s), DivisionByZero);
    CHECK_THROWS_AS(RationalFunction(s).inverse(), DivisionByZero);
}

TEST_CASE("evaluation is a field homomorphism") {
    auto s = xy();
    std::vector<Rational> pt{1, 2, 3, Rational(1, 2), 1};
    RationalFunction h2 = rf(s, "x1*y1 - x2*y2");
    CHECK(h2.eval(pt) == 2);
    RationalFunction h1 = rf(s, "(1-x1*x2)*(1-y1*y2)-2*a*x1*y1");
    CHECK(h1.eval(pt) == Rational(-11, 2));
    RationalFunction g = rf(s, "(x1 + y2)/(x2*y1 - 1)");
    CHECK((h1 * g).eval(pt) == h1.eval(pt) * g.eval(pt));
    CHECK((h1 + g).eval(pt) == h1.eval(pt) + g.eval(pt));
    CHECK((h1 / g).eval(pt) == h1.eval(pt) / g.eval(pt));

    // den(point) = 0 is an error, never a silent wrong value
    RationalFunction f = rf(s, "x1/(1 - y1*y2)");
    std::vector<Rational> sing{1, 2, 2, Rational(1, 2), 1};
    CHECK_THROWS_AS(f.eval(sing), DenominatorVanishes);
}

TEST_CASE("exact equality with witness for the randomized mode") {
    auto s = xy();
    RationalFunction f = rf(s, "x1*y1/(x2 + 1)");
    CHECK(rf_equal_exact(f, f));
    CHECK_FALSE(rf_equal_exact(f, f + rf(s, "1")));
    EqualityResult er = rf_equal_randomized(f, f + rf(s, "1"), 0, 10);
    CHECK_FALSE(er.equal);
    CHECK(er.witness_point.size() == s->size());
    CHECK(er.lhs + 1 == er.rhs);
    EqualityResult ok = rf_equal_randomized(f, f, 0, 10);
    CHECK(ok.equal);
    CHECK(ok.trials == 10);
    CHECK(ok.sz_bound_per_trial > 0.0);
}

TEST_CASE("exact and randomized equality agree on registry expression pairs") {
    // 1000 (f, g) pairs assembled from stored formulas of two examples
    std::vector<RationalFunction> pool;
    for (const char* name : {"mcm4d", "adler-yamilov", "yb38"}) {
        ExampleBundle B = instantiate(name);
        for (const SystemData& sys : B.systems) {
            for (const auto& g : sys.gammas) pool.push_back(g);
            for (const auto& [n, h] : sys.invariants) pool.push_back(h);
        }
    }
    size_t checked = 0;
    for (size_t i = 0; i < pool.size() && checked < 1000; ++i)
        for (size_t j = 0; j < pool.size() && checked < 1000; ++j) {
            if (!same_symbols(pool[i].symbols(), pool[j].symbols())) continue;
            // also exercise derived combinations, not just the raw entries
            RationalFunction f = pool[i] / (pool[j] + RationalFunction::constant(
                                                          pool[j].symbols(), 1));
            RationalFunction g = pool[j] - pool[i];
            bool e1 = rf_equal_exact(pool[i], pool[j]);
            bool r1 = rf_equal_randomized(pool[i], pool[j], 0, 8).equal;
            CHECK(e1 == r1);
            bool e2 = rf_equal_exact(f, g);
            bool r2 = rf_equal_randomized(f, g, checked, 8).equal;
            CHECK(e2 == r2);
            checked += 2;
        }
    CHECK(checked >= 1000);
}

TEST_CASE("substitution composes") {
    auto s = xy();
    RationalFunction f = rf(s, "x1*y1 - x2*y2");
    std::vector<RationalFunction> args = {rf(s, "y1"), rf(s, "y2"), rf(s, "x1"),
                                          rf(s, "x2"), rf(s, "a")};
    RationalFunction g = f.substitute(args); // swap x and y
    CHECK(rf_equal_exact(g, rf(s, "y1*x1 - y2*x2")));
    std::vector<Rational> pt{1, 2, 3, Rational(1, 2), 1};
    CHECK(g.eval(pt) == f.eval({3, Rational(1, 2), 1, 2, 1}));
}

TEST_CASE("derivative uses the quotient rule exactly") {
    auto s = make_symbols({"u", "v", "k"});
    RationalFunction f = rf(s, "v*(v-k)/u");
    CHECK(rf_equal_exact(f.derivative(0), rf(s, "-v*(v-k)/u^2")));
    CHECK(rf_equal_exact(f.derivative(1), rf(s, "(2*v-k)/u")));
}

TEST_CASE("sum normalizes once at the end") {
    auto s = xy();
    std::vector<RationalFunction> parts = {rf(s, "x1/(x2+1)"), rf(s, "-x1/(x2+1)"),
                                           rf(s, "y1")};
    CHECK(rf_equal_exact(RationalFunction::sum(parts), rf(s, "y1")));
    CHECK_THROWS_AS(RationalFunction::sum({}), Error);
}
