#include "qrtw/rational_function.hpp"

#include <algorithm>
#include <sstream>

namespace qrtw {

namespace {

using Factor = RationalFunction::Factor;

bool factor_less(const Factor& a, const Factor& b) {
    int c = Polynomial::compare(a.base, b.base);
    return c < 0;
}

// merge of sorted factor lists, taking per-base the max exponent
std::vector<Factor> den_union(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    std::vector<Factor> out;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = Polynomial::compare(a[i].base, b[j].base);
        if (c < 0) out.push_back(a[i++]);
        else if (c > 0) out.push_back(b[j++]);
        else {
            out.push_back({a[i].base, std::max(a[i].exp, b[j].exp)});
            ++i; ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

// expanded product of (union / own) — the polynomial this side's numerator
// must be multiplied by to sit over the union denominator
Polynomial cofactor(SymbolsPtr syms, const std::vector<Factor>& uni,
                    const std::vector<Factor>& own) {
    Polynomial c = Polynomial::constant(syms, 1);
    size_t j = 0;
    for (const auto& f : uni) {
        unsigned have = 0;
        while (j < own.size() && Polynomial::compare(own[j].base, f.base) < 0) ++j;
        if (j < own.size() && Polynomial::compare(own[j].base, f.base) == 0)
            have = own[j].exp;
        if (f.exp > have) c = c * f.base.pow(f.exp - have);
    }
    return c;
}

} // namespace

RationalFunction::RationalFunction(const Polynomial& num)
    : coef_(1), num_(num.symbols()) {
    *this = make(1, num, {});
}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den)
    : coef_(1), num_(num.symbols()) {
    if (den.is_zero()) throw DivisionByZero();
    *this = make(1, num, {Factor{den, 1}});
}

RationalFunction RationalFunction::constant(SymbolsPtr syms, const Rational& c) {
    return RationalFunction(Polynomial::constant(std::move(syms), c));
}

RationalFunction RationalFunction::variable(SymbolsPtr syms, size_t idx) {
    return RationalFunction(Polynomial::variable(std::move(syms), idx));
}

RationalFunction RationalFunction::make(const Rational& c, Polynomial num,
                                        std::vector<Factor> den) {
    RationalFunction r(num.symbols());
    if (num.is_zero() || c == 0) return r; // zero normal form
    r.coef_ = c;
    r.num_ = std::move(num);

    // normalize the numerator: integer content-free, positive leading coeff
    Rational s;
    r.num_ = r.num_.primitive_part(&s);
    r.coef_ *= s;

    // normalize each factor; constants fold into the scalar
    for (auto& f : den) {
        if (f.base.is_zero()) throw DivisionByZero();
        if (f.exp == 0) continue;
        if (f.base.is_constant()) {
            Rational cv = f.base.constant_value();
            for (unsigned k = 0; k < f.exp; ++k) r.coef_ /= cv;
            continue;
        }
        Rational fs;
        Polynomial p = f.base.primitive_part(&fs);
        for (unsigned k = 0; k < f.exp; ++k) r.coef_ /= fs;
        r.den_.push_back({std::move(p), f.exp});
    }
    r.sort_factors();
    r.reduce();
    return r;
}

void RationalFunction::sort_factors() {
    std::sort(den_.begin(), den_.end(), factor_less);
    std::vector<Factor> merged;
    for (auto& f : den_) {
        if (!merged.empty() && Polynomial::compare(merged.back().base, f.base) == 0)
            merged.back().exp += f.exp;
        else
            merged.push_back(std::move(f));
    }
    den_ = std::move(merged);
}

void RationalFunction::reduce() {
    if (num_.is_zero()) { den_.clear(); coef_ = 1; return; }
    std::vector<Factor> kept;
    for (auto& f : den_) {
        while (f.exp > 0) {
            auto q = num_.divide_exact(f.base);
            if (!q) break;
            num_ = std::move(*q);
            --f.exp;
        }
        if (f.exp > 0) kept.push_back(std::move(f));
    }
    den_ = std::move(kept);
}

Polynomial RationalFunction::den_expanded() const {
    Polynomial d = Polynomial::constant(symbols(), 1);
    for (const auto& f : den_) d = d * f.base.pow(f.exp);
    return d;
}

std::pair<Polynomial, Polynomial> RationalFunction::normalized_pair() const {
    if (is_zero())
        return {Polynomial::zero(symbols()), Polynomial::constant(symbols(), 1)};
    Rational p(coef_.get_num()), q(coef_.get_den());
    return {num_ * p, den_expanded() * q};
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r(*this);
    if (!r.is_zero()) r.coef_ = -r.coef_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    std::vector<Factor> uni = den_union(den_, o.den_);
    Polynomial n = num_ * cofactor(symbols(), uni, den_) * coef_ +
                   o.num_ * cofactor(symbols(), uni, o.den_) * o.coef_;
    return make(1, std::move(n), std::move(uni));
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return *this + (-o);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return RationalFunction(symbols());
    std::vector<Factor> den = den_;
    den.insert(den.end(), o.den_.begin(), o.den_.end());
    return make(coef_ * o.coef_, num_ * o.num_, std::move(den));
}

RationalFunction RationalFunction::operator*(const Rational& c) const {
    if (is_zero() || c == 0) return RationalFunction(symbols());
    RationalFunction r(*this);
    r.coef_ *= c;
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZero();
    RationalFunction r(symbols());
    r.coef_ = 1 / coef_;
    r.num_ = den_expanded();
    if (!num_.is_constant()) r.den_ = {Factor{num_, 1}};
    // num_ is primitive with positive leading coefficient, so a constant
    // numerator is exactly 1 and contributes nothing.
    return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    return *this * o.inverse();
}

RationalFunction RationalFunction::pow_int(long e) const {
    if (e == 0) return constant(symbols(), 1);
    if (e < 0) return inverse().pow_int(-e);
    // direct power of a normalized value stays normalized (powers of
    // primitive polynomials are primitive)
    RationalFunction r(symbols());
    Rational c = 1;
    for (long k = 0; k < e; ++k) c *= coef_;
    r.coef_ = c;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    for (const auto& f : den_) r.den_.push_back({f.base, f.exp * static_cast<unsigned>(e)});
    return r;
}

bool RationalFunction::identical(const RationalFunction& o) const {
    if (coef_ != o.coef_ || num_ != o.num_ || den_.size() != o.den_.size()) return false;
    for (size_t i = 0; i < den_.size(); ++i)
        if (den_[i].exp != o.den_[i].exp ||
            Polynomial::compare(den_[i].base, o.den_[i].base) != 0)
            return false;
    return true;
}

RationalFunction RationalFunction::derivative(size_t var) const {
    if (is_zero()) return *this;
    // (n / prod f_i^{e_i})' = (n' prod f_i - n sum e_i f_i' prod_{j!=i} f_j)
    //                         / prod f_i^{e_i+1}
    Polynomial prod_all = Polynomial::constant(symbols(), 1);
    for (const auto& f : den_) prod_all = prod_all * f.base;
    Polynomial p = num_.derivative(var) * prod_all;
    for (size_t i = 0; i < den_.size(); ++i) {
        Polynomial rest = Polynomial::constant(symbols(), 1);
        for (size_t j = 0; j < den_.size(); ++j)
            if (j != i) rest = rest * den_[j].base;
        p -= num_ * den_[i].base.derivative(var) * rest *
             Rational(static_cast<long>(den_[i].exp));
    }
    std::vector<Factor> den;
    for (const auto& f : den_) den.push_back({f.base, f.exp + 1});
    return make(coef_, std::move(p), std::move(den));
}

int RationalFunction::max_total_degree() const {
    int dn = std::max(num_.total_degree(), 0);
    int dd = 0;
    for (const auto& f : den_) dd += f.base.total_degree() * static_cast<int>(f.exp);
    return std::max(dn, dd);
}

Rational RationalFunction::eval(const std::vector<Rational>& point) const {
    Rational d = 1;
    for (const auto& f : den_) {
        Rational b = f.base.eval(point);
        if (b == 0) throw DenominatorVanishes(f.base.str());
        for (unsigned k = 0; k < f.exp; ++k) d *= b;
    }
    return coef_ * num_.eval(point) / d;
}

double RationalFunction::eval_double(const std::vector<double>& point) const {
    double d = 1;
    for (const auto& f : den_) {
        double b = f.base.eval_double(point);
        if (b == 0) throw DenominatorVanishes(f.base.str());
        for (unsigned k = 0; k < f.exp; ++k) d *= b;
    }
    return coef_.get_d() * num_.eval_double(point) / d;
}

RationalFunction RationalFunction::sum(const std::vector<RationalFunction>& parts) {
    if (parts.empty()) throw Error("sum of no parts");
    SymbolsPtr syms = parts.front().symbols();
    std::vector<Factor> uni;
    for (const auto& p : parts) uni = den_union(uni, p.den_);
    Polynomial n = Polynomial::zero(syms);
    for (const auto& p : parts) {
        if (p.is_zero()) continue;
        n += p.num_ * cofactor(syms, uni, p.den_) * p.coef_;
    }
    return make(1, std::move(n), std::move(uni));
}

RationalFunction RationalFunction::substitute(const Polynomial& p,
                                              const std::vector<RationalFunction>& args) {
    const size_t nv = p.symbols()->size();
    if (args.size() != nv) throw Error("substitute: argument count mismatch");
    SymbolsPtr out_syms = args.empty() ? p.symbols() : args.front().symbols();
    if (p.is_zero()) return RationalFunction(out_syms);

    // cache argument powers (pow_int does no trial division)
    std::vector<std::vector<RationalFunction>> pows(nv);
    for (size_t v = 0; v < nv; ++v)
        pows[v].push_back(RationalFunction::constant(out_syms, 1));

    // one rational function per term, then a single common-denominator sum so
    // the expensive cancellation pass runs once
    std::vector<RationalFunction> parts;
    parts.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        Rational scale = c;
        Polynomial n = Polynomial::constant(out_syms, 1);
        std::vector<Factor> den;
        for (size_t v = 0; v < nv; ++v) {
            unsigned e = m.e[v];
            if (!e) continue;
            auto& pv = pows[v];
            while (pv.size() <= e)
                pv.push_back(pv.back() * args[v]);
            const RationalFunction& av = pv[e];
            scale *= av.coef();
            n = n * av.num_primitive();
            den.insert(den.end(), av.den_factors().begin(), av.den_factors().end());
        }
        // direct construction: products of normalized values are normalized
        RationalFunction part(out_syms);
        part.coef_ = scale;
        part.num_ = std::move(n);
        part.den_ = std::move(den);
        part.sort_factors();
        parts.push_back(std::move(part));
    }
    return sum(parts);
}

RationalFunction RationalFunction::substitute(const std::vector<RationalFunction>& args) const {
    RationalFunction r = substitute(num_, args) * coef_;
    for (const auto& f : den_) {
        RationalFunction fv = substitute(f.base, args);
        if (fv.is_zero()) throw IdenticallySingular(f.base.str());
        r = r * fv.pow_int(static_cast<long>(f.exp)).inverse();
    }
    return r;
}

std::string RationalFunction::str() const {
    auto [n, d] = normalized_pair();
    std::ostringstream os;
    os << "(" << n.str() << ")";
    if (!d.is_constant() || d.constant_value() != 1) os << "/(" << d.str() << ")";
    return os.str();
}

bool rf_equal_exact(const RationalFunction& f, const RationalFunction& g) {
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    if (f.coef() != g.coef()) return false;
    // cross-multiply over the union denominator so shared factors cancel
    std::vector<Factor> uni = den_union(f.den_factors(), g.den_factors());
    Polynomial lhs = f.num_primitive() * cofactor(f.symbols(), uni, f.den_factors());
    Polynomial rhs = g.num_primitive() * cofactor(g.symbols(), uni, g.den_factors());
    return lhs == rhs;
}

EqualityResult rf_equal_randomized(const RationalFunction& f, const RationalFunction& g,
                                   uint64_t seed, int trials) {
    EqualityResult res;
    res.equal = true;
    res.trials = trials;
    res.sz_bound_per_trial =
        double(f.max_total_degree() + g.max_total_degree()) / RationalSampler::kSampleSpace;
    RationalSampler sampler(seed);
    const size_t nv = f.symbols()->size();
    for (int t = 0; t < trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 64) throw Error("could not sample off the denominator locus");
            std::vector<Rational> pt(nv);
            for (auto& x : pt) x = sampler.next();
            try {
                Rational lv = f.eval(pt), rv = g.eval(pt);
                if (lv != rv) {
                    res.equal = false;
                    res.witness_point = pt;
                    res.lhs = lv;
                    res.rhs = rv;
                    return res;
                }
                break;
            } catch (const DenominatorVanishes&) {
                continue; // rejected sample, retry
            }
        }
    }
    return res;
}

} // namespace qrtw
