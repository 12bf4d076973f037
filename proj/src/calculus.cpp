#include "qrtw/calculus.hpp"

#include <bit>
#include <sstream>

namespace qrtw {

WeightedVolumeForm WeightedVolumeForm::top(SymbolsPtr syms, size_t nphase,
                                           const RationalFunction& coeff) {
    WeightedVolumeForm f;
    f.syms = std::move(syms);
    f.nphase = nphase;
    f.degree = static_cast<int>(nphase);
    uint32_t all = (1u << nphase) - 1;
    if (!coeff.is_zero()) f.coeffs.emplace(all, coeff);
    return f;
}

std::string WeightedVolumeForm::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : coeffs) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << " ";
        bool w = false;
        for (size_t v = 0; v < nphase; ++v) {
            if (!(mask & (1u << v))) continue;
            if (w) os << "∧";
            os << "d" << syms->name(v);
            w = true;
        }
    }
    return os.str();
}

bool forms_equal(const WeightedVolumeForm& a, const WeightedVolumeForm& b) {
    if (a.degree != b.degree) return false;
    for (const auto& [mask, c] : a.coeffs) {
        auto it = b.coeffs.find(mask);
        if (it == b.coeffs.end()) {
            if (!c.is_zero()) return false;
        } else if (!rf_equal_exact(c, it->second)) {
            return false;
        }
    }
    for (const auto& [mask, c] : b.coeffs)
        if (!a.coeffs.count(mask) && !c.is_zero()) return false;
    return true;
}

RationalFunction partial(const RationalFunction& f, size_t var) {
    return f.derivative(var);
}

RationalFunction divergence(const VectorField& X, const RationalFunction& sigma) {
    std::vector<RationalFunction> parts;
    for (size_t i = 0; i < X.nphase; ++i) {
        RationalFunction t = (X.comps[i] / sigma).derivative(i);
        if (!t.is_zero()) parts.push_back(t);
    }
    if (parts.empty()) return RationalFunction(X.syms);
    return RationalFunction::sum(parts);
}

WeightedVolumeForm contract(const VectorField& X, const WeightedVolumeForm& omega) {
    if (omega.degree < 1) throw Error("contract: form degree must be >= 1");
    WeightedVolumeForm out;
    out.syms = omega.syms;
    out.nphase = omega.nphase;
    out.degree = omega.degree - 1;
    for (const auto& [mask, c] : omega.coeffs) {
        int slot = 0; // position of the omitted index within the subset
        for (size_t v = 0; v < omega.nphase; ++v) {
            if (!(mask & (1u << v))) continue;
            if (!X.comps[v].is_zero()) {
                RationalFunction t = X.comps[v] * c;
                if (slot % 2 == 1) t = -t;
                uint32_t sub = mask & ~(1u << v);
                auto [it, inserted] = out.coeffs.try_emplace(sub, t);
                if (!inserted) it->second = it->second + t;
            }
            ++slot;
        }
    }
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = it->second.is_zero() ? out.coeffs.erase(it) : std::next(it);
    return out;
}

WeightedVolumeForm pullback(const RationalMap& m, const WeightedVolumeForm& omega) {
    if (!same_symbols(m.syms, omega.syms) || m.nphase != omega.nphase)
        throw Error("pullback: map and form live on different rings");
    WeightedVolumeForm out;
    out.syms = omega.syms;
    out.nphase = omega.nphase;
    out.degree = omega.degree;
    RFMatrix J = jacobian(m);
    std::vector<RationalFunction> args = m.full_args();

    // enumerate the degree-sized subsets S of the phase variables
    const uint32_t full = (1u << omega.nphase) - 1;
    for (uint32_t S = 0; S <= full; ++S) {
        if (std::popcount(S) != omega.degree) continue;
        std::vector<size_t> cols;
        for (size_t v = 0; v < omega.nphase; ++v)
            if (S & (1u << v)) cols.push_back(v);
        std::vector<RationalFunction> parts;
        for (const auto& [T, c] : omega.coeffs) {
            std::vector<size_t> rows;
            for (size_t v = 0; v < omega.nphase; ++v)
                if (T & (1u << v)) rows.push_back(v);
            RFMatrix minor(rows.size(), RFVector());
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = 0; j < cols.size(); ++j)
                    minor[i].push_back(J[rows[i]][cols[j]]);
            RationalFunction t = c.substitute(args) * det(minor);
            if (!t.is_zero()) parts.push_back(t);
        }
        if (parts.empty()) continue;
        RationalFunction coeff = RationalFunction::sum(parts);
        if (!coeff.is_zero()) out.coeffs.emplace(S, coeff);
    }
    return out;
}

CheckResult weighted_volume_sign(const RationalMap& m, const RationalFunction& sigma,
                                 const ModePolicy& mp) {
    if (mp.mode == Mode::Exact) {
        RationalFunction d = det(jacobian(m));
        RationalFunction sigma_m = sigma.substitute(m.full_args());
        RationalFunction e = d * sigma / sigma_m;
        CheckResult res = CheckResult::pass(Mode::Exact);
        RationalFunction one = RationalFunction::constant(m.syms, 1);
        if (rf_equal_exact(e, one)) { res.detail = "+"; return res; }
        if (rf_equal_exact(e, -one)) { res.detail = "-"; return res; }
        res.ok = false;
        res.detail = "violated";
        attach_witness(res, e, one, mp.seed);
        return res;
    }
    // randomized: numeric determinant at sample points
    RFMatrix J = jacobian(m);
    int sign = 0;
    CheckResult res = CheckResult::pass(Mode::Randomized);
    res.trials = mp.trials;
    int degree_estimate = 2 * (1 + sigma.max_total_degree());
    for (const auto& c : m.comps)
        degree_estimate += 2 * c.max_total_degree();
    res.sz_bound = double(degree_estimate) / RationalSampler::kSampleSpace;
    RationalSampler sampler(mp.seed);
    const size_t nv = m.syms->size();
    for (int t = 0; t < mp.trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 64) throw Error("could not sample off the singular locus");
            Point pt(nv);
            for (auto& x : pt) x = sampler.next();
            try {
                Point img = qrtw::apply(m, pt);
                Rational sg = sigma.eval(pt), sgm = sigma.eval(img);
                if (sg == 0 || sgm == 0) continue;
                // numeric determinant by fraction-free elimination is overkill
                // at this size; plain Gaussian elimination over Q
                size_t n = m.nphase;
                std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j) a[i][j] = J[i][j].eval(pt);
                Rational detv = 1;
                for (size_t col = 0; col < n; ++col) {
                    size_t piv = col;
                    while (piv < n && a[piv][col] == 0) ++piv;
                    if (piv == n) { detv = 0; break; }
                    if (piv != col) { std::swap(a[piv], a[col]); detv = -detv; }
                    detv *= a[col][col];
                    for (size_t i = col + 1; i < n; ++i) {
                        if (a[i][col] == 0) continue;
                        Rational f = a[i][col] / a[col][col];
                        for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
                    }
                }
                Rational e = detv * sg / sgm;
                if (e != 1 && e != -1) {
                    res.ok = false;
                    res.detail = "violated";
                    res.witness = pt;
                    res.lhs = e;
                    res.rhs = 1;
                    return res;
                }
                int s = e == 1 ? 1 : -1;
                if (sign == 0) sign = s;
                else if (sign != s) {
                    res.ok = false;
                    res.detail = "sign not constant";
                    res.witness = pt;
                    return res;
                }
                break;
            } catch (const DenominatorVanishes&) {
                continue;
            }
        }
    }
    res.detail = sign >= 0 ? "+" : "-";
    return res;
}

std::vector<VectorField> symmetry_basis(const std::vector<RationalFunction>& h,
                                        SymbolsPtr syms, size_t nphase) {
    const size_t nh = h.size();
    if (nh >= nphase) throw Error("symmetry_basis: need more variables than functions");
    const size_t nfree = nphase - nh;

    // gradients of h with respect to the solved-for (last nh) variables
    RFMatrix A(nh, RFVector());
    for (size_t i = 0; i < nh; ++i)
        for (size_t j = 0; j < nh; ++j)
            A[i].push_back(h[i].derivative(nfree + j));

    std::vector<VectorField> basis;
    for (size_t m = 0; m < nfree; ++m) {
        RFVector rhs;
        for (size_t i = 0; i < nh; ++i)
            rhs.push_back(-h[i].derivative(m));
        RFVector sol = solve_linear(A, rhs);
        VectorField f;
        f.name = "sigma" + std::to_string(m + 1);
        f.syms = syms;
        f.nphase = nphase;
        for (size_t j = 0; j < nfree; ++j)
            f.comps.push_back(RationalFunction::constant(syms, j == m ? 1 : 0));
        for (auto& s : sol) f.comps.push_back(std::move(s));
        basis.push_back(std::move(f));
    }
    return basis;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    VectorField r;
    r.name = "[" + X.name + "," + Y.name + "]";
    r.syms = X.syms;
    r.nphase = X.nphase;
    for (size_t i = 0; i < X.nphase; ++i) {
        std::vector<RationalFunction> parts;
        for (size_t j = 0; j < X.nphase; ++j) {
            if (!X.comps[j].is_zero()) {
                RationalFunction t = X.comps[j] * Y.comps[i].derivative(j);
                if (!t.is_zero()) parts.push_back(t);
            }
            if (!Y.comps[j].is_zero()) {
                RationalFunction t = Y.comps[j] * X.comps[i].derivative(j);
                if (!t.is_zero()) parts.push_back(-t);
            }
        }
        r.comps.push_back(parts.empty() ? RationalFunction(X.syms)
                                        : RationalFunction::sum(parts));
    }
    return r;
}

} // namespace qrtw
