#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "qrtw/parser.hpp"
#include "qrtw/registry.hpp"

using namespace qrtw;

namespace {
RationalFunction rf(const SymbolsPtr& s, const std::string& text) {
    return parse_expression(text, s);
}
} // namespace

TEST_CASE("apply: hand-checked image and parameter passthrough") {
    ExampleBundle B = instantiate("mcm4d", {{{"a", 1}}});
    const RationalMap& phi = *B.systems[0].ambient;
    Point img = qrtw::apply(phi, {1, 2, 3, Rational(1, 2), 1});
    CHECK(img == Point{3, Rational(1, 2), Rational(5, 3), 6, 1});

    // singular locus: the 1 - y1*y2 denominator
    CHECK_THROWS_AS(qrtw::apply(phi, {1, 2, 2, Rational(1, 2), 1}), DenominatorVanishes);
}

TEST_CASE("involutions") {
    ExampleBundle B = instantiate("mcm4d");
    const RationalMap& iota = B.systems[0].involutions[0];
    Point p{1, 2, 3, Rational(1, 2), 1};
    Point q = qrtw::apply(iota, p);
    CHECK(q == Point{3, Rational(1, 2), 1, 2, 1}); // coordinates swapped
    CHECK(qrtw::apply(iota, q) == p);
    CHECK(check_involution(iota).ok);

    const RationalMap& rho = B.systems[0].involutions[1];
    CHECK(check_involution(rho).ok);

    // phi itself is not an involution; the failure names a witness
    CheckResult r = check_involution(*B.systems[0].ambient);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.has_value());
    Point w = *r.witness;
    Point ww = qrtw::apply(*B.systems[0].ambient, qrtw::apply(*B.systems[0].ambient, w));
    CHECK(ww != w);
}

TEST_CASE("compose recovers the displayed maps from their factors") {
    ExampleBundle B = instantiate("mcm4d");
    const RationalMap& phi = *B.systems[0].ambient;
    const RationalMap& iota = B.systems[0].involutions[0];
    const RationalMap& rho = B.systems[0].involutions[1];
    RationalMap c = compose(iota, rho);
    for (size_t i = 0; i < 4; ++i)
        CHECK(rf_equal_exact(c.comps[i], phi.comps[i]));

    RationalMap id = RationalMap::identity("id", phi.syms, 4);
    RationalMap ci = compose(phi, id);
    for (size_t i = 0; i < 4; ++i)
        CHECK(rf_equal_exact(ci.comps[i], phi.comps[i]));

    // Adler-Yamilov: the stored composition pair multiplies out to the map
    ExampleBundle AY = instantiate("adler-yamilov");
    REQUIRE(AY.systems[0].composition.has_value());
    RationalMap ay = compose(AY.systems[0].composition->first,
                             AY.systems[0].composition->second);
    for (size_t i = 0; i < 4; ++i)
        CHECK(rf_equal_exact(ay.comps[i], AY.systems[0].ambient->comps[i]));
}

TEST_CASE("invariants under the ambient maps") {
    ExampleBundle B = instantiate("mcm4d", {{{"a", 1}}});
    const RationalMap& phi = *B.systems[0].ambient;
    const RationalFunction& h1 = B.systems[0].invariants[0].second;
    CHECK(check_invariant(phi, h1).ok);
    Point p{1, 2, 3, Rational(1, 2), 1};
    CHECK(h1.eval(p) == Rational(-11, 2));
    CHECK(h1.eval(qrtw::apply(phi, p)) == Rational(-11, 2));

    RationalMap id = RationalMap::identity("id", B.amb_syms, 4);
    CHECK(check_invariant(id, h1).ok);

    ExampleBundle Y = instantiate("yb38");
    CHECK(check_invariant(*Y.systems[0].ambient,
                          Y.systems[0].invariants[1].second).ok);
}

TEST_CASE("pushforward signs") {
    ExampleBundle B = instantiate("mcm4d");
    CheckResult r = check_pushforward_sign(*B.systems[0].ambient,
                                           B.systems[0].X.comps);
    CHECK(r.ok);
    CHECK(r.detail == "-");

    RationalMap id = RationalMap::identity("id", B.amb_syms, 4);
    CHECK(check_pushforward_sign(id, B.systems[0].X.comps).detail == "+");

    ExampleBundle B6 = instantiate("mcm6d");
    ModePolicy mp;
    mp.mode = Mode::Randomized;
    mp.trials = 40;
    const auto& [name, X1, sign] = B6.systems[0].extra_fields.at(0);
    CheckResult r6 = check_pushforward_sign(*B6.systems[0].ambient, X1.comps, mp);
    CHECK(r6.ok);
    CHECK(r6.detail == "-");
}

TEST_CASE("commuting squares") {
    ExampleBundle B = instantiate("mcm4d");
    const SystemData& phi = B.systems[0];
    CHECK(check_commuting_square(*phi.ambient, phi.square->psi, phi.square->pi).ok);

    RationalMap id = RationalMap::identity("id", B.amb_syms, 4);
    std::vector<RationalFunction> pi;
    for (size_t i = 0; i < B.amb_syms->size(); ++i)
        pi.push_back(RationalFunction::variable(B.amb_syms, i));
    CHECK(check_commuting_square(id, id, pi).ok);

    ExampleBundle AY = instantiate("adler-yamilov");
    const SystemData& ay = AY.systems[0];
    CHECK(check_commuting_square(*ay.ambient, ay.square->psi, ay.square->pi).ok);
}

TEST_CASE("commutativity of the planar reductions") {
    ReducedSystem rs = reduced("mcm4d", {{{"a", 1}}});
    const RationalMap& f = rs.maps[0].second; // phi reduction
    const RationalMap& g = rs.maps[1].second; // phihat reduction
    CHECK(check_commutativity(f, g).ok);
    CHECK(check_commutativity(f, f).ok);

    // both orders give first component 13/9 at (1,3), a=1, k=2
    Point p{1, 3, 1, 2};
    CHECK(qrtw::apply(f, qrtw::apply(g, p)).at(0) == Rational(13, 9));
    CHECK(qrtw::apply(g, qrtw::apply(f, p)).at(0) == Rational(13, 9));

    // the yb38 hatted and barred maps commute already in 4d
    ExampleBundle Y = instantiate("yb38");
    REQUIRE(Y.ambient_commuting_pairs.size() == 1);
    auto [i, j] = Y.ambient_commuting_pairs[0];
    CHECK(check_commutativity(*Y.systems[i].ambient, *Y.systems[j].ambient).ok);
}

TEST_CASE("fiber structure of the invariant-coordinate maps") {
    ExampleBundle B = instantiate("mcm4d");
    CheckResult r = fiber_structure_check(B.systems[0].square->psi, 3, -1);
    CHECK(r.ok);
    CHECK(r.detail == "alpha/v");

    ExampleBundle AY = instantiate("adler-yamilov");
    CheckResult ra = fiber_structure_check(AY.systems[0].square->psi, 3, +1);
    CHECK(ra.ok);
    CHECK(ra.detail == "alpha*v");

    // an additive term breaks the alpha * v^sign shape
    auto uv = make_symbols({"u1", "v1", "u2", "v2"});
    RationalMap bad;
    bad.name = "bad";
    bad.syms = uv;
    bad.nphase = 4;
    bad.comps = {rf(uv, "u1"), rf(uv, "v1"), rf(uv, "u2"), rf(uv, "v2 + u1")};
    CHECK_FALSE(fiber_structure_check(bad, 3, +1).ok);
    CHECK_FALSE(fiber_structure_check(bad, 3, -1).ok);
}

TEST_CASE("orbits: exact iteration, bit-exact invariants, and the singular locus") {
    ReducedSystem rs = reduced("mcm4d", {{{"a", 1}}});
    const RationalMap& f = rs.maps[0].second;
    std::vector<std::pair<std::string, RationalFunction>> hs = {
        {rs.invariant_name, rs.invariant}};

    // hand-checked prefix: (1,3) -> (3,2), h1 = -6 at both points
    OrbitRecord two = iterate_orbit(f, {1, 3, 1, 2}, 1, hs);
    CHECK(two.steps[1].at(0) == 3);
    CHECK(two.steps[1].at(1) == 2);
    CHECK(two.invariant_values[0][0] == -6);
    CHECK(two.invariant_values[1][0] == -6);

    // (3,2) sits on v1 = k, so the orbit meets the singular locus two steps on
    CHECK_THROWS_AS(iterate_orbit(f, {1, 3, 1, 2}, 5, hs), DenominatorVanishes);

    // a generic start runs 20 exact steps with the invariant frozen bit-exactly
    OrbitRecord rec = iterate_orbit(f, {1, 4, 1, 2}, 20, hs);
    REQUIRE(rec.steps.size() == 21);
    for (const auto& hv : rec.invariant_values) CHECK(hv[0] == -8);

    RationalMap id = RationalMap::identity("id", rs.syms, 2);
    OrbitRecord still = iterate_orbit(id, {1, 4, 1, 2}, 5, hs);
    for (const Point& p : still.steps) CHECK(p == still.start);

    // CSV round-trip: header plus one line per point
    std::string csv = rec.to_csv();
    CHECK(csv.find("u1,v1,a,k,h1") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);
}

TEST_CASE("orbits: float mode tracks exact mode") {
    ReducedSystem rs6 = reduced("mcm6d", {{{"a", 1}, {"k1", 3}, {"k3", 2}}});
    const RationalMap& f = rs6.maps[0].second;
    std::vector<std::pair<std::string, RationalFunction>> hs = {
        {rs6.invariant_name, rs6.invariant}};
    Point start{2, Rational(1, 2), 1, 3, 2};

    OrbitArithmetic fl;
    fl.use_float = true;
    fl.tol = 1e-9;
    OrbitRecord frec = iterate_orbit(f, start, 10, hs, fl);
    CHECK(frec.is_float);
    CHECK_FALSE(frec.float_drift_flagged);
    double h0 = frec.float_invariants[0][0];
    for (const auto& hv : frec.float_invariants)
        CHECK(std::fabs(hv[0] - h0) < 1e-9 * std::max(1.0, std::fabs(h0)));

    OrbitRecord erec = iterate_orbit(f, start, 10, hs);
    for (size_t i = 0; i < erec.steps.size(); ++i)
        for (size_t j = 0; j < 2; ++j) {
            double ev = erec.steps[i][j].get_d();
            double fv = frec.float_steps[i][j];
            CHECK(std::fabs(ev - fv) <= 1e-9 * std::max(1.0, std::fabs(ev)));
        }
}
