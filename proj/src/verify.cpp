#include "qrtw/verify.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "qrtw/qrt.hpp"

namespace qrtw {

namespace {

std::string q_str(const Rational& q) { return q.get_str(); }

std::string witness_text(const CheckResult& r, const SymbolsPtr& syms) {
    std::string s;
    if (r.witness) {
        const Point& pt = *r.witness;
        for (size_t i = 0; i < pt.size() && i < syms->size(); ++i)
            s += (i ? ", " : "") + syms->name(i) + "=" + q_str(pt[i]);
    }
    if (r.lhs && r.rhs)
        s += "; lhs=" + q_str(*r.lhs) + ", rhs=" + q_str(*r.rhs);
    return s;
}

// directional derivative X(f) = sum_i X^i df/dx_i
RationalFunction lie_deriv(const VectorField& X, const RationalFunction& f) {
    std::vector<RationalFunction> parts;
    for (size_t i = 0; i < X.nphase; ++i)
        if (!X.comps[i].is_zero())
            parts.push_back(X.comps[i] * f.derivative(i));
    if (parts.empty()) return RationalFunction(f.symbols());
    return RationalFunction::sum(parts);
}

struct Recorder {
    CheckReport& rep;
    bool timing;

    void add(const std::string& id, const std::string& target, const SymbolsPtr& syms,
             const std::function<CheckResult()>& run) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = std::string("exception: ") + e.what();
        }
        CheckEntry ent;
        ent.check_id = id;
        ent.target = target;
        ent.mode = r.mode == Mode::Exact ? "exact" : "randomized";
        ent.outcome = r.ok;
        ent.detail = r.detail;
        ent.trials = r.trials;
        ent.sz_bound = r.sz_bound;
        if (r.witness || (r.lhs && r.rhs)) ent.witness = witness_text(r, syms);
        if (timing) {
            auto t1 = std::chrono::steady_clock::now();
            ent.wall_time = std::chrono::duration<double>(t1 - t0).count();
        }
        rep.overall = rep.overall && r.ok;
        rep.checks.push_back(std::move(ent));
    }
};

CheckResult expect_sign(CheckResult r, int want) {
    if (r.ok && want != 0) {
        std::string w = want > 0 ? "+" : "-";
        if (r.detail != w) {
            r.ok = false;
            r.detail = "expected " + w + ", got " + r.detail;
        }
    }
    return r;
}

CheckResult bool_check(bool ok, const std::string& fail_detail) {
    CheckResult r = CheckResult::pass(Mode::Exact);
    if (!ok) {
        r.ok = false;
        r.detail = fail_detail;
    }
    return r;
}

std::string mask_str(const SymbolsPtr& syms, uint32_t mask) {
    std::string s = "d(";
    bool first = true;
    for (size_t v = 0; v < syms->size(); ++v)
        if (mask & (1u << v)) {
            if (!first) s += "^";
            s += syms->name(v);
            first = false;
        }
    return s + ")";
}

// form equality with a witness on the first differing wedge coefficient
CheckResult forms_check(const WeightedVolumeForm& got, const WeightedVolumeForm& want,
                        uint64_t seed) {
    CheckResult r = CheckResult::pass(Mode::Exact);
    if (forms_equal(got, want)) return r;
    r.ok = false;
    RationalFunction zero{got.syms};
    auto coeff_of = [&](const WeightedVolumeForm& f, uint32_t m) {
        auto it = f.coeffs.find(m);
        return it == f.coeffs.end() ? zero : it->second;
    };
    for (const WeightedVolumeForm* f : {&got, &want})
        for (const auto& [mask, c] : f->coeffs) {
            (void)c;
            RationalFunction a = coeff_of(got, mask), b = coeff_of(want, mask);
            if (!rf_equal_exact(a, b)) {
                r.detail = "coefficient of " + mask_str(got.syms, mask) +
                           " differs: got " + a.str() + ", expected " + b.str();
                attach_witness(r, a, b, seed);
                return r;
            }
        }
    r.detail = "forms differ";
    return r;
}

} // namespace

CheckReport run_suite(const ExampleBundle& B, const SuiteOptions& opt) {
    CheckReport rep;
    rep.example = B.name;
    Recorder rec{rep, opt.record_wall_time};

    // ambient-dimension-sensitive policy (default: randomized only in 6d);
    // volume, square, and reduced-plane checks stay exact by default
    ModePolicy amb{opt.mode_override.value_or(B.preferred_mode), opt.trials, opt.seed};
    ModePolicy ex{opt.mode_override.value_or(Mode::Exact), opt.trials, opt.seed};
    RationalFunction amb_zero{B.amb_syms};

    for (const SystemData& s : B.systems) {
        for (const GammaConstraint& c : s.gamma_constraints)
            rec.add("gamma-constraint", s.tag + "/" + c.desc, B.amb_syms,
                    [&] { return check_identity(c.lhs, c.rhs, ex); });
        for (size_t j = 0; j < s.gammas.size(); ++j)
            rec.add("gamma-annihilated", s.tag + "/gamma" + std::to_string(j + 1),
                    B.amb_syms,
                    [&] { return check_identity(lie_deriv(s.X, s.gammas[j]), amb_zero, ex); });
        for (size_t j = 0; j < s.invariants.size() && j < s.invariants_from_gammas.size(); ++j)
            rec.add("invariant-from-gammas", s.tag + "/" + s.invariants[j].first,
                    B.amb_syms, [&] {
                        return check_identity(s.invariants[j].second,
                                              s.invariants_from_gammas[j], ex);
                    });
        for (const auto& [hname, h] : s.invariants)
            rec.add("invariant-annihilated", s.tag + "/" + hname, B.amb_syms,
                    [&] { return check_identity(lie_deriv(s.X, h), amb_zero, ex); });

        if (s.ambient) {
            for (const auto& [hname, h] : s.invariants)
                rec.add("ambient-invariant", s.tag + "/" + hname, B.amb_syms,
                        [&] { return check_invariant(*s.ambient, h, amb); });
            for (const RationalMap& inv : s.involutions)
                rec.add("involution", s.tag + "/" + inv.name, B.amb_syms,
                        [&] { return check_involution(inv, amb); });
            if (s.composition)
                rec.add("composition", s.tag, B.amb_syms, [&] {
                    RationalMap c = compose(s.composition->first, s.composition->second);
                    return compare_components_exact(c.comps, s.ambient->comps, opt.seed);
                });
            rec.add("volume-sign", s.tag, B.amb_syms, [&] {
                return expect_sign(weighted_volume_sign(*s.ambient, s.sigma, ex),
                                   s.volume_sign);
            });
            rec.add("pushforward", s.tag + "/" + s.X.name, B.amb_syms, [&] {
                return expect_sign(check_pushforward_sign(*s.ambient, s.X.comps, amb),
                                   s.push_sign);
            });
            for (const auto& [fname, field, sign] : s.extra_fields)
                rec.add("pushforward", s.tag + "/" + fname, B.amb_syms, [&] {
                    return expect_sign(
                        check_pushforward_sign(*s.ambient, field.comps, amb), sign);
                });
        }

        rec.add("divergence", s.tag + "/" + s.X.name, B.amb_syms,
                [&] { return check_identity(divergence(s.X, s.sigma), amb_zero, ex); });
        for (const auto& [fname, field, sign] : s.extra_fields)
            rec.add("divergence", s.tag + "/" + fname, B.amb_syms,
                    [&] { return check_identity(divergence(field, s.sigma), amb_zero, ex); });

        if (s.square && s.ambient) {
            rec.add("commuting-square", s.tag, B.amb_syms, [&] {
                return check_commuting_square(*s.ambient, s.square->psi, s.square->pi, ex);
            });
            if (s.square->fiber_var)
                rec.add("fiber-structure", s.tag, B.amb_syms, [&] {
                    return fiber_structure_check(s.square->psi, *s.square->fiber_var,
                                                 s.push_sign);
                });
        }

        if (s.chain) {
            // the top form dz/sigma_uv also imposes the divergence condition on
            // every field that gets contracted into it
            const WeightedVolumeForm& start = s.chain->start;
            std::optional<RationalFunction> uv_sigma;
            if (start.degree == int(start.nphase) && start.coeffs.size() == 1)
                uv_sigma = start.coeffs.begin()->second.inverse();
            WeightedVolumeForm cur = start;
            for (size_t k = 0; k < s.chain->steps.size(); ++k) {
                const ContractionStep& step = s.chain->steps[k];
                if (uv_sigma) {
                    RationalFunction uv_zero{step.X.syms};
                    rec.add("divergence", s.tag + "/" + step.X.name, step.X.syms, [&] {
                        return check_identity(divergence(step.X, *uv_sigma), uv_zero, ex);
                    });
                }
                cur = contract(step.X, cur);
                for (size_t j = 0; j < step.expected.size(); ++j) {
                    const WeightedVolumeForm& want = step.expected[j];
                    std::string target = s.tag + "/step" + std::to_string(k + 1) +
                                         (j ? "-alt" : "");
                    rec.add("contraction", target, start.syms,
                            [&] { return forms_check(cur, want, opt.seed); });
                }
            }
        }

        // stored non-volume forms must be preserved by the coordinate map of
        // the commuting square (the ambient symplectic form in uv coordinates)
        if (s.square)
            for (const auto& [fname, form] : s.named_forms)
                rec.add("form-invariant", s.tag + "/" + fname, form.syms, [&] {
                    return forms_check(pullback(s.square->psi, form), form, opt.seed);
                });

        rec.add("reduced-invariant", s.tag, B.red_syms,
                [&] { return check_invariant(s.reduced, B.reduced_invariant, ex); });
        rec.add("symplectic", s.tag, B.red_syms, [&] {
            return expect_sign(weighted_volume_sign(s.reduced, B.omega_sigma, ex), +1);
        });
    }

    // QRT construction from the reduced invariant
    std::optional<RationalMap> qrt;
    rec.add("qrt-build", B.reduced_invariant_name, B.red_syms, [&] {
        CheckResult r = CheckResult::pass(Mode::Exact);
        try {
            BiquadraticInvariant bi = validate_biquadratic(B.reduced_invariant, 0, 1);
            qrt = build_qrt(bi);
            r.detail = "built";
        } catch (const Error& e) {
            r.ok = false;
            r.detail = e.what();
        }
        return r;
    });
    if (qrt) {
        rec.add("qrt-invariant", B.reduced_invariant_name, B.red_syms,
                [&] { return check_invariant(*qrt, B.reduced_invariant, ex); });
        if (B.qrt_matches_system) {
            const SystemData& s = B.systems[*B.qrt_matches_system];
            rec.add("qrt-coincides", s.tag, B.red_syms, [&] {
                return compare_components_exact(qrt->comps, s.reduced.comps, opt.seed);
            });
        }
        if (B.qrt_display) {
            rec.add("qrt-display", "Q", B.red_syms, [&] {
                return compare_components_exact(qrt->comps, B.qrt_display->comps, opt.seed);
            });
            // a displayed Q means the construction is distinct from every
            // reduced system map, not equal to one of them
            for (const SystemData& s : B.systems)
                rec.add("qrt-differs", s.tag, B.red_syms, [&] {
                    bool same = true;
                    for (size_t c = 0; c < qrt->comps.size() && same; ++c)
                        same = rf_equal_exact(qrt->comps[c], s.reduced.comps[c]);
                    return bool_check(!same, "coincides with " + s.tag);
                });
        }
    }

    // all reduced maps (plus the displayed Q) pairwise commute
    std::vector<std::pair<std::string, const RationalMap*>> planar;
    for (const SystemData& s : B.systems) planar.emplace_back(s.tag, &s.reduced);
    if (B.qrt_display) planar.emplace_back("Q", &*B.qrt_display);
    for (size_t i = 0; i < planar.size(); ++i)
        for (size_t j = i + 1; j < planar.size(); ++j)
            rec.add("commute", planar[i].first + "/" + planar[j].first, B.red_syms, [&] {
                return check_commutativity(*planar[i].second, *planar[j].second, ex);
            });
    for (const auto& [i, j] : B.ambient_commuting_pairs)
        rec.add("ambient-commute", B.systems[i].tag + "/" + B.systems[j].tag,
                B.amb_syms, [&] {
                    return check_commutativity(*B.systems[i].ambient,
                                               *B.systems[j].ambient, amb);
                });

    for (const Identity& id : B.identities) {
        ModePolicy mp{opt.mode_override.value_or(id.mode), opt.trials, opt.seed};
        rec.add("identity", id.desc, id.lhs.symbols(),
                [&] { return check_identity(id.lhs, id.rhs, mp); });
    }

    if (B.symmetry.enabled) {
        const SystemData& s = B.systems[B.symmetry.basis_system];
        std::vector<RationalFunction> hs;
        for (const auto& [hname, h] : s.invariants) hs.push_back(h);
        std::vector<VectorField> basis;
        rec.add("symmetry-basis", s.tag, B.amb_syms, [&] {
            CheckResult r = CheckResult::pass(Mode::Exact);
            try {
                basis = symmetry_basis(hs, B.amb_syms, B.amb_nphase);
                r.detail = std::to_string(basis.size()) + " fields";
            } catch (const Error& e) {
                r.ok = false;
                r.detail = e.what();
            }
            return r;
        });
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < hs.size(); ++j)
                rec.add("symmetry-annihilation",
                        basis[i].name + "/" + s.invariants[j].first, B.amb_syms, [&] {
                            return check_identity(lie_deriv(basis[i], hs[j]), amb_zero, ex);
                        });
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j)
                rec.add("symmetry-bracket", basis[i].name + "/" + basis[j].name,
                        B.amb_syms, [&] {
                            VectorField br = lie_bracket(basis[i], basis[j]);
                            std::vector<RationalFunction> zeros(br.comps.size(), amb_zero);
                            return compare_components_exact(br.comps, zeros, opt.seed);
                        });
        if (!B.symmetry.recovery.empty() && !basis.empty())
            rec.add("symmetry-recovery", s.tag + "/" + s.X.name, B.amb_syms, [&] {
                std::vector<RationalFunction> combo;
                for (size_t c = 0; c < s.X.nphase; ++c) {
                    std::vector<RationalFunction> parts;
                    for (size_t i = 0; i < basis.size() && i < B.symmetry.recovery.size(); ++i)
                        parts.push_back(B.symmetry.recovery[i] * basis[i].comps[c]);
                    combo.push_back(RationalFunction::sum(parts));
                }
                return compare_components_exact(s.X.comps, combo, opt.seed);
            });
        if (s.S1 && !basis.empty())
            rec.add("symmetry-rescaled", s.tag + "/" + s.S1->name, B.amb_syms, [&] {
                RationalFunction x1 = RationalFunction::variable(B.amb_syms, 0);
                std::vector<RationalFunction> scaled;
                for (const RationalFunction& c : basis[0].comps)
                    scaled.push_back(x1 * c);
                return compare_components_exact(s.S1->comps, scaled, opt.seed);
            });
    }

    return rep;
}

CheckReport run_suite(const std::string& name, const ParameterAssignment& params,
                      const SuiteOptions& opt, const std::string& mutate) {
    try {
        ExampleBundle B = instantiate(name, params, mutate);
        return run_suite(B, opt);
    } catch (const UnknownExample&) {
        throw;
    } catch (const ConstraintViolation& e) {
        CheckReport rep;
        rep.example = name;
        CheckEntry ent;
        ent.check_id = "load";
        ent.target = name;
        ent.mode = "exact";
        ent.outcome = false;
        ent.detail = e.what();
        if (!e.witness.empty()) ent.witness = e.witness;
        rep.checks.push_back(std::move(ent));
        rep.overall = false;
        return rep;
    } catch (const std::exception& e) {
        CheckReport rep;
        rep.example = name;
        CheckEntry ent;
        ent.check_id = "load";
        ent.target = name;
        ent.mode = "exact";
        ent.outcome = false;
        ent.detail = e.what();
        rep.checks.push_back(std::move(ent));
        rep.overall = false;
        return rep;
    }
}

std::string CheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = "1";
    j["example"] = example;
    j["overall"] = overall ? "pass" : "fail";
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckEntry& e : checks) {
        nlohmann::ordered_json c;
        c["check_id"] = e.check_id;
        c["target"] = e.target;
        c["mode"] = e.mode;
        c["outcome"] = e.outcome ? "pass" : "fail";
        c["detail"] = e.detail;
        c["trials"] = e.trials;
        c["sz_bound"] = e.sz_bound;
        if (e.witness)
            c["witness"] = *e.witness;
        else
            c["witness"] = nullptr;
        c["wall_time"] = e.wall_time;
        j["checks"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

std::string CheckReport::to_text() const {
    std::ostringstream out;
    for (const CheckEntry& e : checks) {
        out << (e.outcome ? "[pass] " : "[FAIL] ") << e.check_id << " " << e.target
            << " (" << e.mode << ")";
        if (!e.detail.empty()) out << " " << e.detail;
        if (e.witness) out << "\n       witness: " << *e.witness;
        out << "\n";
    }
    out << (overall ? "PASS" : "FAIL") << " " << example << " (" << checks.size()
        << " checks)\n";
    return out.str();
}

} // namespace qrtw
