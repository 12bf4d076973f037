#include "qrtw/registry.hpp"

#include <cstdlib>
#include <initializer_list>

namespace qrtw {

namespace {

struct DefMap {
    std::vector<Definition> defs;
    std::map<std::string, size_t> index;

    DefMap(std::vector<Definition> d, const std::string& mutate) : defs(std::move(d)) {
        for (size_t i = 0; i < defs.size(); ++i)
            if (!index.emplace(defs[i].name, i).second)
                throw Error("duplicate definition '" + defs[i].name + "'");
        if (!mutate.empty()) {
            auto it = index.find(mutate);
            if (it == index.end())
                throw Error("no definition named '" + mutate + "' to mutate");
            RationalFunction& v = defs[it->second].value;
            v = v + RationalFunction::constant(v.symbols(), 1);
        }
    }

    const RationalFunction& get(const std::string& name, const SymbolsPtr& expect) const {
        auto it = index.find(name);
        if (it == index.end()) throw Error("missing definition '" + name + "'");
        const Definition& d = defs[it->second];
        if (!same_symbols(d.syms, expect))
            throw Error("definition '" + name + "' is over the wrong ring");
        return d.value;
    }

    // trivial densities are not stored; absence means sigma = 1
    RationalFunction get_or_one(const std::string& name, const SymbolsPtr& expect) const {
        if (!index.count(name)) return RationalFunction::constant(expect, 1);
        return get(name, expect);
    }

    // name1, name2, ... (callers include any trailing '.' in the prefix)
    std::vector<RationalFunction> series(const std::string& prefix, size_t n,
                                         const SymbolsPtr& expect) const {
        std::vector<RationalFunction> out;
        for (size_t i = 1; i <= n; ++i)
            out.push_back(get(prefix + std::to_string(i), expect));
        return out;
    }
};

RationalFunction var(const SymbolsPtr& s, const std::string& n) {
    return RationalFunction::variable(s, s->require(n));
}

RationalFunction cst(const SymbolsPtr& s, long v) {
    return RationalFunction::constant(s, Rational(v));
}

VectorField field_of(const DefMap& D, std::string name, const std::string& prefix,
                     const SymbolsPtr& syms, size_t nphase) {
    VectorField f;
    f.name = std::move(name);
    f.syms = syms;
    f.nphase = nphase;
    f.comps = D.series(prefix, nphase, syms);
    return f;
}

RationalMap map_of(const DefMap& D, std::string name, const std::string& prefix,
                   const SymbolsPtr& syms, size_t nphase) {
    RationalMap m;
    m.name = std::move(name);
    m.syms = syms;
    m.nphase = nphase;
    m.comps = D.series(prefix, nphase, syms);
    return m;
}

void add_term(WeightedVolumeForm& w, std::initializer_list<size_t> idxs,
              const RationalFunction& coeff) {
    uint32_t mask = 0;
    for (size_t i : idxs) mask |= 1u << i;
    if (!coeff.is_zero()) w.coeffs.emplace(mask, coeff);
}

WeightedVolumeForm single_form(const SymbolsPtr& syms, size_t nphase,
                               std::initializer_list<size_t> idxs,
                               const RationalFunction& coeff) {
    WeightedVolumeForm w;
    w.syms = syms;
    w.nphase = nphase;
    w.degree = static_cast<int>(idxs.size());
    add_term(w, idxs, coeff);
    return w;
}

// Reduced map with the level parameters promoted to identity phase components,
// so the level surfaces are certified without eliminating anything: the ring
// becomes (phase..., levels..., remaining params).
RationalMap extend_with_levels(const RationalMap& red,
                               const std::vector<std::string>& levels) {
    std::vector<std::string> names;
    for (size_t i = 0; i < red.nphase; ++i) names.push_back(red.syms->name(i));
    for (const auto& l : levels) names.push_back(l);
    for (size_t i = red.nphase; i < red.syms->size(); ++i) {
        const std::string& n = red.syms->name(i);
        bool is_level = false;
        for (const auto& l : levels) is_level = is_level || l == n;
        if (!is_level) names.push_back(n);
    }
    SymbolsPtr ext = make_symbols(std::move(names));
    RationalMap m;
    m.name = red.name + "_ext";
    m.syms = ext;
    m.nphase = red.nphase + levels.size();
    for (const auto& c : red.comps) m.comps.push_back(transport(c, ext));
    for (const auto& l : levels)
        m.comps.push_back(RationalFunction::variable(ext, ext->require(l)));
    return m;
}

// pi components for a square: the listed ambient expressions for the phase
// symbols of psi, then the ambient variable of the same name for each of
// psi's parameters
SquareInfo make_square(const DefMap& D, const std::string& prefix,
                       const SymbolsPtr& amb, RationalMap psi) {
    SquareInfo s;
    s.pi = D.series(prefix, psi.nphase, amb);
    for (size_t i = psi.nphase; i < psi.syms->size(); ++i)
        s.pi.push_back(var(amb, psi.syms->name(i)));
    s.psi = std::move(psi);
    return s;
}

// ---- the six examples ------------------------------------------------------

ExampleBundle build_mcm4d(const DefMap& D) {
    ExampleBundle B;
    B.name = "mcm4d";
    B.ambient_dim = 4;
    SymbolsPtr amb = make_symbols({"x1", "x2", "y1", "y2", "a"});
    SymbolsPtr uv = make_symbols({"u1", "v1", "u2", "v2", "a"});
    SymbolsPtr red = make_symbols({"u1", "v1", "a", "k"});
    B.amb_syms = amb;
    B.amb_nphase = 4;
    B.red_syms = red;
    B.red_nphase = 2;
    B.levels = {"k"};

    RationalFunction a = var(amb, "a");
    RationalFunction one = cst(amb, 1), two = cst(amb, 2);

    RationalMap iota = map_of(D, "iota_xy", "phi.iota.", amb, 4);

    for (std::string tag : {"phi", "phihat"}) {
        SystemData s;
        s.tag = tag;
        s.X = field_of(D, "X_" + tag, tag + ".X.", amb, 4);
        s.gammas = D.series(tag + ".gamma", 4, amb);
        s.gamma_constraints = {{"gamma3*gamma4 == gamma1*gamma2",
                                s.gammas[2] * s.gammas[3], s.gammas[0] * s.gammas[1]}};
        s.invariants = {{"h1", D.get(tag + ".h1", amb)}, {"h2", D.get(tag + ".h2", amb)}};
        s.invariants_from_gammas = {
            (one - s.gammas[2]) * (one - s.gammas[3]) - two * a * s.gammas[0],
            s.gammas[0] - s.gammas[1]};
        s.sigma = D.get_or_one(tag + ".sigma", amb);
        s.ambient = map_of(D, tag, tag + ".map.", amb, 4);
        RationalMap rho = compose(iota, *s.ambient); // phi == iota ∘ rho
        rho.name = tag == "phi" ? "rho_x" : "rho_x_hat";
        s.involutions = {iota, rho};
        s.volume_sign = -1;
        s.push_sign = -1;
        s.reduced = map_of(D, tag, "reduced." + tag + ".", red, 2);
        B.systems.push_back(std::move(s));
    }

    // phi carries the full invariant-coordinate map: its commuting square and
    // the contraction chain
    {
        SystemData& phi = B.systems[0];
        RationalMap uvmap = map_of(D, "phi_uv", "phi.uv.", uv, 4);
        phi.square = make_square(D, "phi.pi.", amb, std::move(uvmap));
        phi.square->fiber_var = 3;
        ContractionChain ch;
        ch.start = WeightedVolumeForm::top(uv, 4, D.get("phi.uv_omega4", uv));
        ch.steps.push_back({field_of(D, "X_uv", "phi.uvX.", uv, 4),
                            {single_form(uv, 4, {0, 1, 2}, D.get("phi.uv_omega3", uv))}});
        phi.chain = std::move(ch);
    }
    B.systems[1].square = make_square(
        D, "phihat.pi.", amb, extend_with_levels(B.systems[1].reduced, B.levels));

    B.reduced_invariant_name = "h1";
    B.reduced_invariant = D.get("reduced.h1", red);
    B.omega_sigma = D.get("reduced.omega_sigma", red);
    B.qrt_matches_system = 0;
    B.symmetry.enabled = true;
    B.symmetry.recovery = {var(amb, "x1"), -var(amb, "x2")};
    for (const SystemData& s : B.systems) {
        // u1 = gamma3, v1 = gamma1, k = h2
        std::vector<RationalFunction> args = {s.gammas[2], s.gammas[0], a,
                                              s.invariants[1].second};
        B.identities.push_back({"reduced h1 composed with (gamma3, gamma1, h2) "
                                "equals the ambient h1 (" + s.tag + ")",
                                B.reduced_invariant.substitute(args),
                                s.invariants[0].second});
    }
    return B;
}

ExampleBundle build_mcm4d_alt_gamma(const DefMap& D) {
    ExampleBundle B;
    B.name = "mcm4d-alt-gamma";
    B.ambient_dim = 4;
    SymbolsPtr amb = make_symbols({"x1", "x2", "y1", "y2", "a"});
    SymbolsPtr red = make_symbols({"u1", "v1", "a", "k"});
    B.amb_syms = amb;
    B.amb_nphase = 4;
    B.red_syms = red;
    B.red_nphase = 2;
    B.levels = {"k"};

    RationalFunction a = var(amb, "a");
    RationalFunction one = cst(amb, 1), two = cst(amb, 2);

    for (std::string tag : {"phi1", "phi2"}) {
        SystemData s;
        s.tag = tag;
        s.X = field_of(D, "X_" + tag, tag + ".X.", amb, 4);
        s.gammas = D.series(tag + ".gamma", 4, amb);
        s.gamma_constraints = {{"gamma3*gamma4 == gamma2/gamma1",
                                s.gammas[2] * s.gammas[3], s.gammas[1] / s.gammas[0]}};
        s.invariants = {{"h1", D.get(tag + ".h1", amb)}, {"h2", D.get(tag + ".h2", amb)}};
        s.invariants_from_gammas = {
            (one - s.gammas[2]) * (one - s.gammas[3]) - two * a * s.gammas[0],
            s.gammas[0] - s.gammas[1]};
        s.sigma = D.get_or_one(tag + ".sigma", amb);
        s.reduced = map_of(D, tag, "reduced." + tag + ".", red, 2);
        B.systems.push_back(std::move(s));
    }

    B.reduced_invariant_name = "h1";
    B.reduced_invariant = D.get("reduced.h1", red);
    B.omega_sigma = D.get("reduced.omega_sigma", red);
    B.qrt_display = map_of(D, "Q", "reduced.Q.", red, 2);
    for (const SystemData& s : B.systems) {
        std::vector<RationalFunction> args = {s.gammas[2], s.gammas[0], a,
                                              s.invariants[1].second};
        B.identities.push_back({"reduced h1 composed with (gamma3, gamma1, h2) "
                                "equals the ambient h1 (" + s.tag + ")",
                                B.reduced_invariant.substitute(args),
                                s.invariants[0].second});
    }
    return B;
}

ExampleBundle build_mcm4d_alt_h2(const DefMap& D) {
    ExampleBundle B;
    B.name = "mcm4d-alt-h2";
    B.ambient_dim = 4;
    SymbolsPtr amb = make_symbols({"x1", "x2", "y1", "y2", "a"});
    SymbolsPtr red = make_symbols({"u1", "v1", "a", "k"});
    B.amb_syms = amb;
    B.amb_nphase = 4;
    B.red_syms = red;
    B.red_nphase = 2;
    B.levels = {"k"};

    RationalFunction a = var(amb, "a");
    RationalFunction one = cst(amb, 1), two = cst(amb, 2);

    for (std::string tag : {"phi1", "phi2"}) {
        SystemData s;
        s.tag = tag;
        s.X = field_of(D, "X_" + tag, tag + ".X.", amb, 4);
        s.gammas = D.series(tag + ".gamma", 4, amb);
        s.gamma_constraints = {{"gamma3*gamma4 == gamma1*gamma2",
                                s.gammas[2] * s.gammas[3], s.gammas[0] * s.gammas[1]}};
        s.invariants = {{"h1", D.get(tag + ".h1", amb)}, {"h2", D.get(tag + ".h2", amb)}};
        s.invariants_from_gammas = {
            (one - s.gammas[2]) * (one - s.gammas[3]) - two * a * s.gammas[0],
            s.gammas[0] / s.gammas[1]};
        s.sigma = D.get_or_one(tag + ".sigma", amb);
        s.reduced = map_of(D, tag, "reduced." + tag + ".", red, 2);
        B.systems.push_back(std::move(s));
    }

    B.reduced_invariant_name = "h1";
    B.reduced_invariant = D.get("reduced.h1", red);
    B.omega_sigma = D.get("reduced.omega_sigma", red);
    B.qrt_matches_system = 0;
    for (const SystemData& s : B.systems) {
        std::vector<RationalFunction> args = {s.gammas[2], s.gammas[0], a,
                                              s.invariants[1].second};
        B.identities.push_back({"reduced h1 composed with (gamma3, gamma1, h2) "
                                "equals the ambient h1 (" + s.tag + ")",
                                B.reduced_invariant.substitute(args),
                                s.invariants[0].second});
    }
    return B;
}

ExampleBundle build_adler_yamilov(const DefMap& D) {
    ExampleBundle B;
    B.name = "adler-yamilov";
    B.ambient_dim = 4;
    SymbolsPtr amb = make_symbols({"x1", "x2", "y1", "y2", "a", "b"});
    SymbolsPtr uv = make_symbols({"u1", "v1", "u2", "v2", "a", "b"});
    SymbolsPtr red = make_symbols({"u1", "v1", "a", "b", "k"});
    B.amb_syms = amb;
    B.amb_nphase = 4;
    B.red_syms = red;
    B.red_nphase = 2;
    B.levels = {"k"};

    RationalFunction a = var(amb, "a"), b = var(amb, "b");

    RationalMap iota = map_of(D, "iota_12", "phi.iota.", amb, 4);

    for (std::string tag : {"phi", "phihat"}) {
        SystemData s;
        s.tag = tag;
        s.X = field_of(D, "X_" + tag, tag + ".X.", amb, 4);
        s.gammas = D.series(tag + ".gamma", 4, amb);
        s.gamma_constraints = {{"gamma3*gamma4 == gamma1*gamma2",
                                s.gammas[2] * s.gammas[3], s.gammas[0] * s.gammas[1]}};
        s.invariants = {{"h1", D.get(tag + ".h1", amb)}, {"h2", D.get(tag + ".h2", amb)}};
        s.invariants_from_gammas = {
            s.gammas[0] + s.gammas[1],
            a * s.gammas[1] + b * s.gammas[0] + s.gammas[2] + s.gammas[3] +
                s.gammas[0] * s.gammas[1]};
        s.sigma = D.get_or_one(tag + ".sigma", amb);
        s.ambient = map_of(D, tag, tag + ".map.", amb, 4);
        s.reduced = map_of(D, tag, "reduced." + tag + ".", red, 2);
        B.systems.push_back(std::move(s));
    }

    {
        SystemData& phi = B.systems[0];
        RationalMap rho = map_of(D, "rho_x1y2", "phi.rho.", amb, 4);
        phi.involutions = {iota, rho};
        phi.composition = std::make_pair(rho, iota); // phi == rho ∘ iota_12
        phi.volume_sign = 1;
        phi.push_sign = 1;
        RationalMap uvmap = map_of(D, "phi_uv", "phi.uv.", uv, 4);
        phi.square = make_square(D, "phi.pi.", amb, std::move(uvmap));
        phi.square->fiber_var = 3;
        ContractionChain ch;
        ch.start = WeightedVolumeForm::top(uv, 4, D.get("phi.uv_omega4", uv));
        ch.steps.push_back({field_of(D, "X_uv", "phi.uvX.", uv, 4),
                            {single_form(uv, 4, {0, 1, 2}, D.get("phi.uv_omega3", uv))}});
        phi.chain = std::move(ch);
        WeightedVolumeForm w2;
        w2.syms = uv;
        w2.nphase = 4;
        w2.degree = 2;
        add_term(w2, {0, 1}, D.get("phi.uv_omega2_u1v1", uv));
        add_term(w2, {2, 3}, D.get("phi.uv_omega2_u2v2", uv));
        phi.named_forms.emplace_back("omega_uv", std::move(w2));
    }
    {
        SystemData& hat = B.systems[1];
        RationalMap rho = compose(*hat.ambient, iota); // phihat == rho ∘ iota_12
        rho.name = "rho_x1y2_hat";
        hat.involutions = {iota, rho};
        hat.volume_sign = -1;
        hat.push_sign = -1;
        hat.square = make_square(D, "phihat.pi.", amb,
                                 extend_with_levels(hat.reduced, B.levels));
    }

    B.reduced_invariant_name = "h2";
    B.reduced_invariant = D.get("reduced.h2", red);
    B.omega_sigma = D.get("reduced.omega_sigma", red);
    B.qrt_matches_system = 0;
    for (const SystemData& s : B.systems) {
        // u1 = gamma1, v1 = gamma3, k = h1
        std::vector<RationalFunction> args = {s.gammas[0], s.gammas[2], a, b,
                                              s.invariants[0].second};
        B.identities.push_back({"reduced h2 composed with (gamma1, gamma3, h1) "
                                "equals the ambient h2 (" + s.tag + ")",
                                B.reduced_invariant.substitute(args),
                                s.invariants[1].second});
    }
    return B;
}

ExampleBundle build_yb38(const DefMap& D) {
    ExampleBundle B;
    B.name = "yb38";
    B.ambient_dim = 4;
    SymbolsPtr amb = make_symbols({"x1", "x2", "y1", "y2", "a", "b"});
    SymbolsPtr uv = make_symbols({"u1", "v1", "u2", "v2", "a", "b"});
    SymbolsPtr red = make_symbols({"u1", "v1", "a", "b", "k"});
    B.amb_syms = amb;
    B.amb_nphase = 4;
    B.red_syms = red;
    B.red_nphase = 2;
    B.levels = {"k"};

    RationalFunction a = var(amb, "a"), b = var(amb, "b");

    RationalMap iota = map_of(D, "iota_12", "phi.iota.", amb, 4);

    for (std::string tag : {"phi", "phihat", "phibar"}) {
        SystemData s;
        s.tag = tag;
        s.X = field_of(D, "X_" + tag, tag + ".X.", amb, 4);
        s.gammas = D.series(tag + ".gamma", 4, amb);
        s.gamma_constraints = {{"gamma3*gamma4 == gamma1*gamma2",
                                s.gammas[2] * s.gammas[3], s.gammas[0] * s.gammas[1]}};
        s.invariants = {{"h1", D.get(tag + ".h1", amb)}, {"h2", D.get(tag + ".h2", amb)}};
        s.invariants_from_gammas = {
            s.gammas[0] + s.gammas[1] + s.gammas[2] + s.gammas[3],
            a * s.gammas[1] + b * s.gammas[0] + s.gammas[0] * s.gammas[1]};
        s.sigma = D.get_or_one(tag + ".sigma", amb);
        s.ambient = map_of(D, tag, tag + ".map.", amb, 4);
        if (tag == "phi") {
            RationalMap rho = map_of(D, "rho_x2y1", "phi.rho.", amb, 4);
            s.involutions = {iota, rho};
            s.composition = std::make_pair(iota, rho); // phi == iota_12 ∘ rho
            s.volume_sign = 1;
            s.push_sign = 1;
        } else {
            RationalMap rho = compose(iota, *s.ambient); // map == iota_12 ∘ rho
            rho.name = "rho_" + tag;
            s.involutions = {iota, rho};
        }
        s.reduced = map_of(D, tag, "reduced." + tag + ".", red, 2);
        s.square = make_square(D, tag + ".pi.", amb,
                               extend_with_levels(s.reduced, B.levels));
        B.systems.push_back(std::move(s));
    }

    {
        SymbolsPtr uvs = uv;
        ContractionChain ch;
        ch.start = WeightedVolumeForm::top(uvs, 4, D.get("phi.uv_omega4", uvs));
        ch.steps.push_back({field_of(D, "X_uv", "phi.uvX.", uvs, 4),
                            {single_form(uvs, 4, {0, 1, 2}, D.get("phi.uv_omega3", uvs))}});
        B.systems[0].chain = std::move(ch);
    }

    B.reduced_invariant_name = "h2";
    B.reduced_invariant = D.get("reduced.h2", red);
    B.omega_sigma = D.get("reduced.omega_sigma", red);
    B.qrt_matches_system = 0;
    B.ambient_commuting_pairs = {{1, 2}}; // phihat and phibar commute in 4d
    for (const SystemData& s : B.systems) {
        std::vector<RationalFunction> args = {s.gammas[0], s.gammas[2], a, b,
                                              s.invariants[0].second};
        B.identities.push_back({"reduced h2 composed with (gamma1, gamma3, h1) "
                                "equals the ambient h2 (" + s.tag + ")",
                                B.reduced_invariant.substitute(args),
                                s.invariants[1].second});
    }
    return B;
}

ExampleBundle build_mcm6d(const DefMap& D) {
    ExampleBundle B;
    B.name = "mcm6d";
    B.ambient_dim = 6;
    SymbolsPtr amb = make_symbols({"x1", "x2", "x3", "y1", "y2", "y3", "a"});
    SymbolsPtr uv = make_symbols({"u1", "u2", "v1", "v2", "u3", "v3", "a"});
    SymbolsPtr red = make_symbols({"r", "s", "a", "k1", "k3"});
    B.amb_syms = amb;
    B.amb_nphase = 6;
    B.red_syms = red;
    B.red_nphase = 2;
    B.levels = {"k1", "k3"};
    B.preferred_mode = Mode::Randomized;

    RationalFunction a = var(amb, "a");
    RationalFunction one = cst(amb, 1), two = cst(amb, 2);

    RationalMap iota = map_of(D, "iota_xy", "phi.iota.", amb, 6);

    for (std::string tag : {"phi", "phihat"}) {
        SystemData s;
        s.tag = tag;
        s.X = field_of(D, "X_" + tag, tag + ".X.", amb, 6);
        s.gammas = D.series(tag + ".gamma", 7, amb);
        s.gamma_constraints = {
            {"gamma1*gamma2 == gamma4*gamma5",
             s.gammas[0] * s.gammas[1], s.gammas[3] * s.gammas[4]},
            {"gamma2*gamma3 == gamma6*gamma7",
             s.gammas[1] * s.gammas[2], s.gammas[5] * s.gammas[6]}};
        s.invariants = {{"h1", D.get(tag + ".h1", amb)},
                        {"h2", D.get(tag + ".h2", amb)},
                        {"h3", D.get(tag + ".h3", amb)}};
        s.invariants_from_gammas = {
            (one - s.gammas[3]) * (one - s.gammas[4]) - two * a * s.gammas[0],
            (one - s.gammas[5]) * (one - s.gammas[6]) - two * a * s.gammas[1],
            s.gammas[1] - s.gammas[2]};
        s.sigma = D.get_or_one(tag + ".sigma", amb);
        s.ambient = map_of(D, tag, tag + ".map.", amb, 6);
        RationalMap rho = compose(iota, *s.ambient); // map == iota_xy ∘ rho
        rho.name = tag == "phi" ? "rho_x" : "rho_x_hat";
        s.involutions = {iota, rho};
        s.volume_sign = 1; // x1*y1 is an invariant volume density for both
        s.reduced = map_of(D, tag, "reduced." + tag + ".", red, 2);
        s.square = make_square(D, tag + ".pi_rs.", amb,
                               extend_with_levels(s.reduced, B.levels));
        B.systems.push_back(std::move(s));
    }

    VectorField X1 = field_of(D, "X1", "phi.X1.", amb, 6);
    VectorField S1 = field_of(D, "S1", "phi.S1.", amb, 6);
    B.systems[0].extra_fields.emplace_back("X1", X1, -1);
    B.systems[0].S1 = S1;
    B.systems[1].extra_fields.emplace_back("X1", X1, 0);

    // contraction chain Omega6 -> Omega5 -> Omega4 on the uv ring
    {
        ContractionChain ch;
        ch.start = WeightedVolumeForm::top(uv, 6, D.get("phi.uv_omega6", uv));
        ch.steps.push_back(
            {field_of(D, "X_uv", "phi.uvX.", uv, 6),
             {single_form(uv, 6, {0, 1, 2, 3, 4}, D.get("phi.uv_omega5", uv))}});
        // the printed two-term Omega4 and its -dr∧du2∧dv2∧du3 version; the
        // basis reordering dv1∧du2 = -du2∧dv1 flips the dv1 coefficient
        WeightedVolumeForm printed;
        printed.syms = uv;
        printed.nphase = 6;
        printed.degree = 4;
        add_term(printed, {0, 1, 3, 4}, D.get("phi.uv_omega4_du1", uv));
        add_term(printed, {1, 2, 3, 4}, -D.get("phi.uv_omega4_dv1", uv));
        RationalFunction r = D.get("phi.r", uv);
        WeightedVolumeForm drform;
        drform.syms = uv;
        drform.nphase = 6;
        drform.degree = 4;
        add_term(drform, {0, 1, 3, 4}, -r.derivative(0));
        add_term(drform, {1, 2, 3, 4}, r.derivative(2));
        ch.steps.push_back({field_of(D, "X1_uv", "phi.uvX1.", uv, 6),
                            {std::move(printed), std::move(drform)}});
        B.systems[0].chain = std::move(ch);
    }

    B.reduced_invariant_name = "h2";
    B.reduced_invariant = D.get("reduced.h2", red);
    B.omega_sigma = D.get("reduced.omega_sigma", red);
    B.qrt_matches_system = 0;
    B.symmetry.enabled = true;
    B.symmetry.recovery = {var(amb, "x1"), -var(amb, "x2"), var(amb, "x3")};

    // identities tying the stored layers together
    {
        const SystemData& phi = B.systems[0];
        RationalFunction f = var(amb, "y1") *
            (var(amb, "y2") + two * a * var(amb, "x1") -
             var(amb, "x1") * var(amb, "x2") * var(amb, "y2"));
        B.identities.push_back({"X1 == y1*(y2+2a*x1-x1*x2*y2) * S1, component 1",
                                X1.comps[0], f * S1.comps[0]});
        B.identities.push_back({"X1 == y1*(y2+2a*x1-x1*x2*y2) * S1, component 4",
                                X1.comps[3], f * S1.comps[3]});

        RationalFunction r = D.get("phi.r", uv);
        B.identities.push_back({"h1 == u2*r + 1 in uv coordinates",
                                D.get("phi.h1_uv", uv),
                                var(uv, "u2") * r + cst(uv, 1)});

        // (u1,u2,v1,v2,u3,v3) = (gamma4,gamma6,gamma1,gamma2,h3,y3)
        std::vector<RationalFunction> coords = {
            phi.gammas[3], phi.gammas[5], phi.gammas[0], phi.gammas[1],
            phi.invariants[2].second, var(amb, "y3"), a};
        B.identities.push_back({"h1 in uv coordinates pulls back to the ambient h1",
                                D.get("phi.h1_uv", uv).substitute(coords),
                                phi.invariants[0].second});
        B.identities.push_back({"h2 in uv coordinates pulls back to the ambient h2",
                                D.get("phi.h2_uv", uv).substitute(coords),
                                phi.invariants[1].second});
        B.identities.push_back({"r pulls back to the stored r-s projection",
                                r.substitute(coords), phi.square->pi[0]});

        // r = pi1, s = pi2, k1 = pi3, k3 = pi4
        std::vector<RationalFunction> args = {
            phi.square->pi[0], phi.square->pi[1], a,
            phi.square->pi[2], phi.square->pi[3]};
        B.identities.push_back({"reduced h2 composed with the r-s projection "
                                "equals the ambient h2",
                                B.reduced_invariant.substitute(args),
                                phi.invariants[1].second, Mode::Randomized});
    }
    return B;
}

struct Entry {
    const char* name;
    const char* file;
    const char* summary;
    ExampleBundle (*build)(const DefMap&);
};

const Entry kExamples[] = {
    {"mcm4d", "mcm4d.def",
     "4d McMillan map (Example 1): two planar reductions sharing an invariant "
     "and symplectic form; the first coincides with the QRT map",
     build_mcm4d},
    {"mcm4d-alt-gamma", "mcm4d_alt_gamma.def",
     "4d McMillan map with an alternative invariant set (Example 2): the "
     "reductions differ from the QRT map; all three commute",
     build_mcm4d_alt_gamma},
    {"mcm4d-alt-h2", "mcm4d_alt_h2.def",
     "4d McMillan map with h2 = gamma1/gamma2 (Example 3): two commuting "
     "planar reductions",
     build_mcm4d_alt_h2},
    {"adler-yamilov", "adler_yamilov.def",
     "Adler-Yamilov Yang-Baxter map and a modification (Example 4): commuting "
     "reductions on the level surface h1 = k",
     build_adler_yamilov},
    {"yb38", "yb38.def",
     "Yang-Baxter map (38) (Example 5): three commuting planar reductions; "
     "two of the ambient maps commute already in 4d",
     build_yb38},
    {"mcm6d", "mcm6d.def",
     "6d McMillan map (Example 6): reduction to the r-s plane through the "
     "second symmetry field X1",
     build_mcm6d},
};

const Entry& find_entry(const std::string& name) {
    for (const Entry& e : kExamples)
        if (name == e.name) return e;
    throw UnknownExample(name);
}

DefMap load_defs(const Entry& e, const std::string& mutate) {
    return DefMap(parse_definition_file(data_dir() + "/" + e.file), mutate);
}

// parameter substitution: assigned names are replaced by constants wherever
// they sit in the non-phase section of a ring
RationalFunction spec_rf(const RationalFunction& f, const ParameterAssignment& pa,
                         size_t nphase) {
    const SymbolsPtr& syms = f.symbols();
    bool any = false;
    std::vector<RationalFunction> args;
    for (size_t i = 0; i < syms->size(); ++i) {
        auto it = i >= nphase ? pa.values.find(syms->name(i)) : pa.values.end();
        if (it != pa.values.end()) {
            args.push_back(RationalFunction::constant(syms, it->second));
            any = true;
        } else {
            args.push_back(RationalFunction::variable(syms, i));
        }
    }
    return any ? f.substitute(args) : f;
}

void specialize(ExampleBundle& B, const ParameterAssignment& pa) {
    if (pa.values.empty()) return;
    for (const auto& [name, value] : pa.values) {
        for (size_t i = 0; i < B.amb_nphase; ++i)
            if (B.amb_syms->name(i) == name)
                throw Error("cannot assign a value to phase variable '" + name + "'");
        for (size_t i = 0; i < B.red_nphase; ++i)
            if (B.red_syms->name(i) == name)
                throw Error("cannot assign a value to phase variable '" + name + "'");
    }
    auto rf = [&](RationalFunction& f, size_t nphase) { f = spec_rf(f, pa, nphase); };
    auto map = [&](RationalMap& m) { for (auto& c : m.comps) rf(c, m.nphase); };
    auto fld = [&](VectorField& X) { for (auto& c : X.comps) rf(c, X.nphase); };
    auto frm = [&](WeightedVolumeForm& w) {
        for (auto& [mask, c] : w.coeffs) rf(c, w.nphase);
    };
    size_t na = B.amb_nphase, nr = B.red_nphase;
    for (SystemData& s : B.systems) {
        fld(s.X);
        for (auto& g : s.gammas) rf(g, na);
        for (auto& c : s.gamma_constraints) { rf(c.lhs, na); rf(c.rhs, na); }
        for (auto& [n, h] : s.invariants) rf(h, na);
        for (auto& h : s.invariants_from_gammas) rf(h, na);
        rf(s.sigma, na);
        if (s.ambient) map(*s.ambient);
        for (auto& m : s.involutions) map(m);
        if (s.composition) { map(s.composition->first); map(s.composition->second); }
        for (auto& [n, X, sign] : s.extra_fields) fld(X);
        if (s.S1) fld(*s.S1);
        if (s.chain) {
            frm(s.chain->start);
            for (auto& st : s.chain->steps) {
                fld(st.X);
                for (auto& w : st.expected) frm(w);
            }
        }
        if (s.square) {
            map(s.square->psi);
            for (auto& p : s.square->pi) rf(p, na);
        }
        for (auto& [n, w] : s.named_forms) frm(w);
        map(s.reduced);
    }
    rf(B.reduced_invariant, nr);
    rf(B.omega_sigma, nr);
    if (B.qrt_display) map(*B.qrt_display);
    for (auto& r : B.symmetry.recovery) rf(r, na);
    // identities live over several rings; every assigned name is a parameter
    // on all of them, so substitute wherever the name appears
    for (auto& id : B.identities) { rf(id.lhs, 0); rf(id.rhs, 0); }
}

} // namespace

std::string data_dir() {
    if (const char* env = std::getenv("QRTW_DATA_DIR")) return env;
    return QRTW_DATA_DIR;
}

std::vector<ExampleInfo> list_examples() {
    std::vector<ExampleInfo> out;
    for (const Entry& e : kExamples) out.push_back({e.name, e.summary});
    return out;
}

std::vector<std::string> definition_names(const std::string& name) {
    const Entry& e = find_entry(name);
    std::vector<std::string> out;
    for (const Definition& d : parse_definition_file(data_dir() + "/" + e.file))
        out.push_back(d.name);
    return out;
}

ExampleBundle instantiate(const std::string& name, const ParameterAssignment& params,
                          const std::string& mutate) {
    const Entry& e = find_entry(name);
    ExampleBundle B = e.build(load_defs(e, mutate));
    B.summary = e.summary;
    for (const SystemData& s : B.systems)
        for (const GammaConstraint& c : s.gamma_constraints)
            if (!rf_equal_exact(c.lhs, c.rhs)) {
                // sample a counterexample point so callers can report one
                std::string wit;
                RationalSampler sampler(0);
                const SymbolsPtr& syms = c.lhs.symbols();
                for (int attempt = 0; attempt < 256 && wit.empty(); ++attempt) {
                    std::vector<Rational> pt(syms->size());
                    for (auto& x : pt) x = sampler.next();
                    try {
                        Rational l = c.lhs.eval(pt), r = c.rhs.eval(pt);
                        if (l == r) continue;
                        for (size_t i = 0; i < pt.size(); ++i)
                            wit += (i ? ", " : "") + syms->name(i) + "=" +
                                   pt[i].get_str();
                        wit += "; lhs=" + l.get_str() + ", rhs=" + r.get_str();
                    } catch (const DenominatorVanishes&) {
                    }
                }
                throw ConstraintViolation("gamma constraint violated for " + name +
                                              "/" + s.tag + ": " + c.desc,
                                          wit);
            }
    specialize(B, params);
    B.params = params;
    return B;
}

ReducedSystem reduced(const std::string& name, const ParameterAssignment& params) {
    ExampleBundle B = instantiate(name, params);
    ReducedSystem r;
    r.syms = B.red_syms;
    r.nphase = B.red_nphase;
    for (const SystemData& s : B.systems) r.maps.emplace_back(s.tag, s.reduced);
    if (B.qrt_display) r.maps.emplace_back("Q", *B.qrt_display);
    r.invariant_name = B.reduced_invariant_name;
    r.invariant = B.reduced_invariant;
    r.omega_sigma = B.omega_sigma;
    return r;
}

RationalFunction transport(const RationalFunction& f, const SymbolsPtr& target) {
    const SymbolsPtr& src = f.symbols();
    std::vector<RationalFunction> args;
    for (size_t i = 0; i < src->size(); ++i)
        args.push_back(RationalFunction::variable(target, target->require(src->name(i))));
    return f.substitute(args);
}

} // namespace qrtw
