#include "qrtw/polynomial.hpp"

#include <sstream>

namespace qrtw {

Polynomial Polynomial::constant(SymbolsPtr syms, const Rational& c) {
    Polynomial p(std::move(syms));
    if (c != 0) p.terms_[Monomial{}] = c;
    return p;
}

Polynomial Polynomial::variable(SymbolsPtr syms, size_t idx) {
    Polynomial p(std::move(syms));
    Monomial m;
    m.e[idx] = 1;
    p.terms_[m] = 1;
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.total_degree(); // graded order: last term is top
}

int Polynomial::degree_in(size_t var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_)
        if (m.e[var] > d) d = m.e[var];
    return d;
}

const Monomial& Polynomial::leading_monomial() const { return terms_.rbegin()->first; }
const Rational& Polynomial::leading_coeff() const { return terms_.rbegin()->second; }

Polynomial Polynomial::operator-() const {
    Polynomial r(syms_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(*this);
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r(*this);
    r -= o;
    return r;
}

void Polynomial::add_scaled(const Rational& c, const Monomial& m, const Polynomial& o) {
    for (const auto& [mo, co] : o.terms_) add_term(m * mo, c * co);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(syms_);
    // iterate over the smaller factor's terms in the outer loop
    const Polynomial& small = terms_.size() <= o.terms_.size() ? *this : o;
    const Polynomial& big = terms_.size() <= o.terms_.size() ? o : *this;
    for (const auto& [m, c] : small.terms_) r.add_scaled(c, m, big);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(syms_);
    if (c == 0) return r;
    for (const auto& [m, co] : terms_) r.terms_.emplace(m, c * co);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const { return terms_ == o.terms_; }

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(syms_, 1);
    Polynomial base(*this);
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Polynomial Polynomial::derivative(size_t var) const {
    Polynomial r(syms_);
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial d = m;
        d.e[var] -= 1;
        r.add_term(d, c * static_cast<long>(m.e[var]));
    }
    return r;
}

Polynomial Polynomial::coeff_of(size_t var, unsigned power) const {
    Polynomial r(syms_);
    for (const auto& [m, c] : terms_) {
        if (m.e[var] != power) continue;
        Monomial d = m;
        d.e[var] = 0;
        r.terms_.emplace(d, c);
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    const size_t nv = syms_->size();
    // cache powers per variable
    std::vector<std::vector<Rational>> pows(nv);
    for (size_t v = 0; v < nv; ++v) pows[v].push_back(1);
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t v = 0; v < nv; ++v) {
            unsigned e = m.e[v];
            if (!e) continue;
            auto& pv = pows[v];
            while (pv.size() <= e) pv.push_back(pv.back() * point[v]);
            t *= pv[e];
        }
        acc += t;
    }
    return acc;
}

double Polynomial::eval_double(const std::vector<double>& point) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (size_t v = 0; v < syms_->size(); ++v)
            for (unsigned e = 0; e < m.e[v]; ++e) t *= point[v];
        acc += t;
    }
    return acc;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
    if (divisor.is_zero()) return std::nullopt;
    if (divisor.is_constant()) {
        Rational inv = 1 / divisor.constant_value();
        return *this * inv;
    }
    if (is_zero()) return Polynomial(syms_);
    // cheap rejections
    if (total_degree() < divisor.total_degree()) return std::nullopt;
    for (size_t v = 0; v < syms_->size(); ++v)
        if (degree_in(v) < divisor.degree_in(v)) return std::nullopt;

    Polynomial rem(*this);
    Polynomial quot(syms_);
    const Monomial& dlm = divisor.leading_monomial();
    const Rational& dlc = divisor.leading_coeff();
    while (!rem.is_zero()) {
        const Monomial& rlm = rem.leading_monomial();
        if (!dlm.divides(rlm)) return std::nullopt;
        Monomial qm = rlm / dlm;
        Rational qc = rem.leading_coeff() / dlc;
        quot.add_term(qm, qc);
        rem.add_scaled(-qc, qm, divisor);
    }
    return quot;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return 1;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational r(num_gcd, den_lcm);
    r.canonicalize();
    if (r < 0) r = -r;
    return r;
}

Polynomial Polynomial::primitive_part(Rational* scale) const {
    if (terms_.empty()) {
        if (scale) *scale = 1;
        return *this;
    }
    Rational c = content();
    if (leading_coeff() < 0) c = -c;
    if (scale) *scale = c;
    return *this * (1 / c);
}

int Polynomial::compare(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size())
        return a.terms_.size() < b.terms_.size() ? -1 : 1;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (ia->first < ib->first) return -1;
        if (ib->first < ia->first) return 1;
        int c = cmp(ia->second, ib->second);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest-degree terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = (ac == 1);
        bool any_var = m.total_degree() > 0;
        if (!unit || !any_var) os << to_string(ac);
        bool star = !unit || !any_var;
        for (size_t v = 0; v < syms_->size(); ++v) {
            if (!m.e[v]) continue;
            if (star) os << "*";
            os << syms_->name(v);
            if (m.e[v] > 1) os << "^" << m.e[v];
            star = true;
        }
    }
    return os.str();
}

} // namespace qrtw
