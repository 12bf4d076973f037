#include "qrtw/qrt.hpp"

namespace qrtw {

BiquadraticInvariant validate_biquadratic(const RationalFunction& h,
                                          size_t u_var, size_t v_var) {
    auto [num, den] = h.normalized_pair();
    SymbolsPtr syms = h.symbols();
    for (size_t var : {u_var, v_var}) {
        int dn = num.degree_in(var), dd = den.degree_in(var);
        int d = std::max(dn, dd);
        if (d > 2) throw NotBiquadratic(syms->name(var), d);
        if (d <= 0) throw NotBiquadratic(syms->name(var), std::max(d, 0));
    }
    return BiquadraticInvariant{h, u_var, v_var, std::move(num), std::move(den)};
}

RationalMap qrt_switch(const BiquadraticInvariant& h, size_t var) {
    SymbolsPtr syms = h.h.symbols();
    // P(t) = num(t)·den(u) − num(u)·den(t) is quadratic in t with root t = u;
    // in the basis t^i its coefficients are c_i = n_i·den − d_i·num where
    // n_i, d_i are the u-degree-i coefficients. Dividing by (t − u) leaves
    // q(t) = c2·t + (c1 + c2·u), so the conjugate root is −c1/c2 − u.
    RationalFunction u = RationalFunction::variable(syms, var);
    RationalFunction num(h.num), den(h.den);
    RationalFunction c2 = RationalFunction(h.num.coeff_of(var, 2)) * den -
                          RationalFunction(h.den.coeff_of(var, 2)) * num;
    if (c2.is_zero()) throw DegenerateSwitch(syms->name(var));
    RationalFunction c1 = RationalFunction(h.num.coeff_of(var, 1)) * den -
                          RationalFunction(h.den.coeff_of(var, 1)) * num;
    RationalFunction root = -(c1 / c2) - u;

    size_t nphase = std::max(h.u_var, h.v_var) + 1;
    RationalMap m = RationalMap::identity(
        "switch_" + syms->name(var), syms, nphase);
    m.comps[var] = root;
    return m;
}

RationalMap build_qrt(const BiquadraticInvariant& h) {
    RationalMap horizontal = qrt_switch(h, h.u_var);
    RationalMap vertical = qrt_switch(h, h.v_var);
    RationalMap q = compose(vertical, horizontal);
    q.name = "qrt";
    return q;
}

} // namespace qrtw
