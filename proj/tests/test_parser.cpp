#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qrtw/parser.hpp"

using namespace qrtw;

namespace {
SymbolsPtr uvk() { return make_symbols({"u", "v", "k"}); }
} // namespace

TEST_CASE("precedence and associativity") {
    auto s = uvk();
    CHECK(parse_expression("1 + 2*3", s).eval({0, 0, 0}) == 7);
    CHECK(parse_expression("6/3/2", s).eval({0, 0, 0}) == 1);
    CHECK(parse_expression("2 - 3 - 4", s).eval({0, 0, 0}) == -5);
    CHECK(parse_expression("2*u + v", s).eval({3, 1, 0}) == 7);
    CHECK(rf_equal_exact(parse_expression("u + v*k", s),
                         parse_expression("(v*k) + u", s)));
}

TEST_CASE("unary signs and powers") {
    auto s = uvk();
    CHECK(parse_expression("-u^2", s).eval({3, 0, 0}) == -9);
    CHECK(parse_expression("(-u)^2", s).eval({3, 0, 0}) == 9);
    CHECK(parse_expression("+-+u", s).eval({5, 0, 0}) == -5);
    CHECK(rf_equal_exact(parse_expression("u^-1", s), parse_expression("1/u", s)));
    CHECK(rf_equal_exact(parse_expression("2*u^-2", s), parse_expression("2/u^2", s)));
    CHECK(parse_expression("u^0", s).eval({7, 0, 0}) == 1);
}

TEST_CASE("rational literals") {
    auto s = uvk();
    CHECK(parse_expression("3/2", s).eval({0, 0, 0}) == Rational(3, 2));
    CHECK(parse_expression("1/2 + 1/3", s).eval({0, 0, 0}) == Rational(5, 6));
    // '/' is ordinary division, so p/q literals need no special lexing
    CHECK(parse_expression("3/2*u", s).eval({4, 0, 0}) == 6);
}

TEST_CASE("a realistically sized expression round-trips through eval") {
    auto s = make_symbols({"u1", "v1", "a", "k"});
    RationalFunction f = parse_expression(
        "(k-v1)*(u1+(2*a+k-v1)*v1)/(u1+(k-v1)*v1)", s);
    CHECK(f.eval({1, 3, 1, 2}) == 2);
    CHECK(f.eval({3, 2, 1, 2}) == 0);
}

TEST_CASE("errors carry positions of a sort") {
    auto s = uvk();
    CHECK_THROWS_AS(parse_expression("u +", s), ParseError);
    CHECK_THROWS_AS(parse_expression("(u", s), ParseError);
    CHECK_THROWS_AS(parse_expression("u ** v", s), ParseError);
    CHECK_THROWS_AS(parse_expression("w + 1", s), Error); // unknown symbol
    CHECK_THROWS_AS(parse_expression("u^v", s), ParseError); // integer exponents only
    CHECK_THROWS_AS(parse_expression("", s), ParseError);
}

TEST_CASE("definition files") {
    std::string text =
        "# comment line\n"
        "@vars u v k\n"
        "first := u + v\n"
        "\n"
        "second := v*(v-k)/u\n"
        "@vars x y\n"
        "third := x*y\n";
    std::vector<Definition> defs = parse_definitions(text);
    REQUIRE(defs.size() == 3);
    CHECK(defs[0].name == "first");
    CHECK(defs[0].syms->names() == std::vector<std::string>{"u", "v", "k"});
    CHECK(defs[1].value.eval({1, 3, 2}) == 3);
    CHECK(defs[2].syms->names() == std::vector<std::string>{"x", "y"});

    CHECK_THROWS_AS(parse_definitions("u + v\n"), ParseError); // no :=
    CHECK_THROWS_AS(parse_definitions("x := 1\n"), ParseError); // before any @vars
}
