#include "qrtw/rational_map.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace qrtw {

std::vector<RationalFunction> RationalMap::full_args() const {
    std::vector<RationalFunction> args = comps;
    for (size_t i = nphase; i < syms->size(); ++i)
        args.push_back(RationalFunction::variable(syms, i));
    return args;
}

RationalMap RationalMap::identity(std::string name, SymbolsPtr syms, size_t nphase) {
    RationalMap m{std::move(name), syms, nphase, {}};
    for (size_t i = 0; i < nphase; ++i)
        m.comps.push_back(RationalFunction::variable(syms, i));
    return m;
}

Point apply(const RationalMap& m, const Point& p) {
    if (p.size() != m.syms->size())
        throw Error("apply: point must assign every symbol of " + m.name);
    Point img;
    img.reserve(p.size());
    for (size_t i = 0; i < m.nphase; ++i) {
        try {
            img.push_back(m.comps[i].eval(p));
        } catch (const DenominatorVanishes&) {
            throw DenominatorVanishes(m.name + " component " + m.syms->name(i));
        }
    }
    for (size_t i = m.nphase; i < p.size(); ++i) img.push_back(p[i]);
    return img;
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
    if (!same_symbols(f.syms, g.syms) || f.nphase != g.nphase)
        throw Error("compose: variable lists differ");
    RationalMap r{f.name + "∘" + g.name, f.syms, f.nphase, {}};
    auto args = g.full_args();
    for (const auto& c : f.comps) r.comps.push_back(c.substitute(args));
    return r;
}

RFMatrix jacobian(const RationalMap& m) {
    RFMatrix j(m.nphase);
    for (size_t i = 0; i < m.nphase; ++i)
        for (size_t v = 0; v < m.nphase; ++v)
            j[i].push_back(m.comps[i].derivative(v));
    return j;
}

namespace {

// shared randomized-identity engine: ncomp exact value pairs per point
struct PointIdentity {
    SymbolsPtr syms;
    size_t ncomp;
    std::function<std::pair<Rational, Rational>(const Point&, size_t)> sides;
    int degree_estimate;
};

CheckResult run_randomized(const PointIdentity& id, const ModePolicy& mp) {
    CheckResult res = CheckResult::pass(Mode::Randomized);
    res.trials = mp.trials;
    res.sz_bound = double(id.degree_estimate) / RationalSampler::kSampleSpace;
    RationalSampler sampler(mp.seed);
    const size_t nv = id.syms->size();
    for (int t = 0; t < mp.trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 64) throw Error("could not sample off the singular locus");
            Point pt(nv);
            for (auto& x : pt) x = sampler.next();
            try {
                bool ok = true;
                for (size_t c = 0; c < id.ncomp && ok; ++c) {
                    auto [l, r] = id.sides(pt, c);
                    if (l != r) {
                        res.ok = false;
                        res.witness = pt;
                        res.lhs = l;
                        res.rhs = r;
                        return res;
                    }
                }
                (void)ok;
                break;
            } catch (const DenominatorVanishes&) {
                continue;
            }
        }
    }
    return res;
}

} // namespace

// witness search for a failed exact identity
void attach_witness(CheckResult& res, const RationalFunction& lhs,
                    const RationalFunction& rhs, uint64_t seed) {
    RationalSampler sampler(seed);
    const size_t nv = lhs.symbols()->size();
    for (int attempt = 0; attempt < 256; ++attempt) {
        Point pt(nv);
        for (auto& x : pt) x = sampler.next();
        try {
            Rational l = lhs.eval(pt), r = rhs.eval(pt);
            if (l != r) {
                res.witness = pt;
                res.lhs = l;
                res.rhs = r;
                return;
            }
        } catch (const DenominatorVanishes&) {
        }
    }
}

namespace {

CheckResult compare_exact(const std::vector<RationalFunction>& lhs,
                          const std::vector<RationalFunction>& rhs, uint64_t seed) {
    CheckResult res = CheckResult::pass(Mode::Exact);
    for (size_t i = 0; i < lhs.size(); ++i) {
        if (!rf_equal_exact(lhs[i], rhs[i])) {
            res.ok = false;
            res.detail = "component " + std::to_string(i + 1);
            attach_witness(res, lhs[i], rhs[i], seed);
            return res;
        }
    }
    return res;
}

int map_degree(const RationalMap& m) {
    int d = 1;
    for (const auto& c : m.comps) d = std::max(d, c.max_total_degree());
    return d;
}

} // namespace

CheckResult check_identity(const RationalFunction& lhs, const RationalFunction& rhs,
                           const ModePolicy& mp) {
    if (mp.mode == Mode::Exact) {
        CheckResult res = CheckResult::pass(Mode::Exact);
        if (!rf_equal_exact(lhs, rhs)) {
            res.ok = false;
            res.detail = "identity fails";
            attach_witness(res, lhs, rhs, mp.seed);
        }
        return res;
    }
    EqualityResult er = rf_equal_randomized(lhs, rhs, mp.seed, mp.trials);
    CheckResult res = CheckResult::pass(Mode::Randomized);
    res.trials = er.trials;
    res.sz_bound = er.sz_bound_per_trial;
    if (!er.equal) {
        res.ok = false;
        res.detail = "identity fails";
        res.witness = er.witness_point;
        res.lhs = er.lhs;
        res.rhs = er.rhs;
    }
    return res;
}

CheckResult compare_components_exact(const std::vector<RationalFunction>& lhs,
                                     const std::vector<RationalFunction>& rhs,
                                     uint64_t seed) {
    if (lhs.size() != rhs.size()) {
        CheckResult res = CheckResult::pass(Mode::Exact);
        res.ok = false;
        res.detail = "component counts differ";
        return res;
    }
    return compare_exact(lhs, rhs, seed);
}

CheckResult check_involution(const RationalMap& m, const ModePolicy& mp) {
    if (mp.mode == Mode::Exact) {
        RationalMap mm = compose(m, m);
        std::vector<RationalFunction> id;
        for (size_t i = 0; i < m.nphase; ++i)
            id.push_back(RationalFunction::variable(m.syms, i));
        return compare_exact(mm.comps, id, mp.seed);
    }
    PointIdentity id{m.syms, m.nphase,
                     [&](const Point& p, size_t c) {
                         Point q = qrtw::apply(m, qrtw::apply(m, p));
                         return std::make_pair(q[c], p[c]);
                     },
                     map_degree(m) * map_degree(m)};
    return run_randomized(id, mp);
}

CheckResult check_invariant(const RationalMap& m, const RationalFunction& h,
                            const ModePolicy& mp) {
    if (mp.mode == Mode::Exact) {
        RationalFunction hm = h.substitute(m.full_args());
        return compare_exact({hm}, {h}, mp.seed);
    }
    PointIdentity id{m.syms, 1,
                     [&](const Point& p, size_t) {
                         return std::make_pair(h.eval(qrtw::apply(m, p)), h.eval(p));
                     },
                     h.max_total_degree() * (1 + map_degree(m))};
    return run_randomized(id, mp);
}

CheckResult check_pushforward_sign(const RationalMap& m,
                                   const std::vector<RationalFunction>& X,
                                   const ModePolicy& mp) {
    const size_t n = m.nphase;
    if (X.size() != n) throw Error("pushforward: field/map dimension mismatch");
    if (mp.mode == Mode::Exact) {
        RFMatrix J = jacobian(m);
        auto args = m.full_args();
        std::vector<RationalFunction> jx, xm;
        for (size_t i = 0; i < n; ++i) {
            std::vector<RationalFunction> parts;
            for (size_t j = 0; j < n; ++j)
                if (!J[i][j].is_zero() && !X[j].is_zero()) parts.push_back(J[i][j] * X[j]);
            jx.push_back(parts.empty() ? RationalFunction(m.syms)
                                       : RationalFunction::sum(parts));
            xm.push_back(X[i].substitute(args));
        }
        CheckResult plus = CheckResult::pass(Mode::Exact);
        bool is_plus = true, is_minus = true;
        for (size_t i = 0; i < n && (is_plus || is_minus); ++i) {
            if (is_plus && !rf_equal_exact(jx[i], xm[i])) is_plus = false;
            if (is_minus && !rf_equal_exact(jx[i], -xm[i])) is_minus = false;
        }
        if (is_plus) { plus.detail = "+"; return plus; }
        if (is_minus) { plus.detail = "-"; return plus; }
        plus.ok = false;
        plus.detail = "neither";
        attach_witness(plus, jx[0], xm[0], mp.seed);
        return plus;
    }
    // randomized: determine the candidate sign at the first sample
    RFMatrix J = jacobian(m);
    int sign = 0;
    PointIdentity id{m.syms, n,
                     [&](const Point& p, size_t c) {
                         Point img = qrtw::apply(m, p);
                         Rational jx = 0;
                         for (size_t j = 0; j < n; ++j)
                             jx += J[c][j].eval(p) * X[j].eval(p);
                         Rational xm = X[c].eval(img);
                         if (sign == 0) sign = (jx == xm) ? 1 : -1;
                         return std::make_pair(jx, sign > 0 ? xm : Rational(-xm));
                     },
                     2 * map_degree(m) * (1 + map_degree(m))};
    CheckResult res = run_randomized(id, mp);
    res.detail = !res.ok ? "neither" : (sign >= 0 ? "+" : "-");
    return res;
}

CheckResult check_commuting_square(const RationalMap& phi, const RationalMap& psi,
                                   const std::vector<RationalFunction>& pi,
                                   const ModePolicy& mp) {
    if (pi.size() != psi.syms->size())
        throw Error("commuting square: pi must cover every symbol of " + psi.name);
    if (mp.mode == Mode::Exact) {
        auto phi_args = phi.full_args();
        std::vector<RationalFunction> lhs, rhs;
        for (size_t i = 0; i < psi.nphase; ++i) {
            lhs.push_back(pi[i].substitute(phi_args));
            rhs.push_back(psi.comps[i].substitute(pi));
        }
        return compare_exact(lhs, rhs, mp.seed);
    }
    PointIdentity id{phi.syms, psi.nphase,
                     [&](const Point& p, size_t c) {
                         Point img = qrtw::apply(phi, p);
                         Point down(pi.size());
                         for (size_t j = 0; j < pi.size(); ++j) down[j] = pi[j].eval(p);
                         return std::make_pair(pi[c].eval(img), psi.comps[c].eval(down));
                     },
                     2 * map_degree(phi) * map_degree(psi)};
    return run_randomized(id, mp);
}

CheckResult check_commutativity(const RationalMap& f, const RationalMap& g,
                                const ModePolicy& mp) {
    if (mp.mode == Mode::Exact) {
        RationalMap fg = compose(f, g), gf = compose(g, f);
        return compare_exact(fg.comps, gf.comps, mp.seed);
    }
    PointIdentity id{f.syms, f.nphase,
                     [&](const Point& p, size_t c) {
                         Point fg = qrtw::apply(f, qrtw::apply(g, p));
                         Point gf = qrtw::apply(g, qrtw::apply(f, p));
                         return std::make_pair(fg[c], gf[c]);
                     },
                     2 * map_degree(f) * map_degree(g)};
    return run_randomized(id, mp);
}

CheckResult fiber_structure_check(const RationalMap& m, size_t fiber_var, int sign) {
    const RationalFunction v = RationalFunction::variable(m.syms, fiber_var);
    RationalFunction alpha =
        sign > 0 ? m.comps[fiber_var] / v : m.comps[fiber_var] * v;
    RationalFunction d = alpha.derivative(fiber_var);
    CheckResult res = CheckResult::pass(Mode::Exact);
    res.detail = sign > 0 ? "alpha*v" : "alpha/v";
    if (!d.is_zero()) {
        res.ok = false;
        attach_witness(res, d, RationalFunction(m.syms), 0);
    }
    return res;
}

OrbitRecord iterate_orbit(const RationalMap& m, const Point& p, int steps,
                          const std::vector<std::pair<std::string, RationalFunction>>& hs,
                          const OrbitArithmetic& arith) {
    OrbitRecord rec;
    rec.start = p;
    for (size_t i = 0; i < m.syms->size(); ++i) rec.columns.push_back(m.syms->name(i));
    for (const auto& [n, h] : hs) rec.columns.push_back(n);

    if (!arith.use_float) {
        Point cur = p;
        for (int s = 0; s <= steps; ++s) {
            for (const auto& x : cur)
                if (bit_size(x) > arith.bitcap) throw BitCapExceeded(s);
            rec.steps.push_back(cur);
            std::vector<Rational> iv;
            for (const auto& [n, h] : hs) iv.push_back(h.eval(cur));
            rec.invariant_values.push_back(std::move(iv));
            if (s < steps) {
                try {
                    cur = qrtw::apply(m, cur);
                } catch (const DenominatorVanishes&) {
                    throw DenominatorVanishes("orbit step " + std::to_string(s + 1));
                }
            }
        }
        return rec;
    }

    rec.is_float = true;
    std::vector<double> cur;
    for (const auto& x : p) cur.push_back(x.get_d());
    std::vector<double> h0;
    for (int s = 0; s <= steps; ++s) {
        rec.float_steps.push_back(cur);
        std::vector<double> iv;
        for (const auto& [n, h] : hs) iv.push_back(h.eval_double(cur));
        if (s == 0) h0 = iv;
        for (size_t k = 0; k < iv.size(); ++k) {
            double scale = std::max(1.0, std::fabs(h0[k]));
            if (std::fabs(iv[k] - h0[k]) > arith.tol * scale)
                rec.float_drift_flagged = true;
        }
        rec.float_invariants.push_back(std::move(iv));
        if (s < steps) {
            std::vector<double> nxt;
            for (size_t i = 0; i < m.nphase; ++i)
                nxt.push_back(m.comps[i].eval_double(cur));
            for (size_t i = m.nphase; i < cur.size(); ++i) nxt.push_back(cur[i]);
            cur = std::move(nxt);
        }
    }
    return rec;
}

std::string OrbitRecord::to_csv() const {
    std::ostringstream os;
    for (size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << "\n";
    if (!is_float) {
        for (size_t s = 0; s < steps.size(); ++s) {
            bool first = true;
            for (const auto& x : steps[s]) {
                os << (first ? "" : ",") << to_string(x);
                first = false;
            }
            for (const auto& x : invariant_values[s]) os << "," << to_string(x);
            os << "\n";
        }
    } else {
        os.precision(17);
        for (size_t s = 0; s < float_steps.size(); ++s) {
            bool first = true;
            for (double x : float_steps[s]) {
                os << (first ? "" : ",") << x;
                first = false;
            }
            for (double x : float_invariants[s]) os << "," << x;
            os << "\n";
        }
    }
    return os.str();
}

} // namespace qrtw
