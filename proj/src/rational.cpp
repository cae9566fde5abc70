#include "spectral/rational.hpp"

#include "spectral/errors.hpp"

namespace spectral {

namespace {

bool epoly_is_const(const EPoly& p) { return p.degree() <= 0; }

BigReal epoly_const_value(const EPoly& p) {
    return p.is_zero() ? BigReal() : p.c[0];
}

void require_e_free(const RPoly& den) {
    for (const auto& cf : den.c)
        if (!epoly_is_const(cf))
            throw DomainError("RationalFn: denominator must not depend on E");
}

size_t low_index(const RPoly& p) {
    for (size_t i = 0; i < p.c.size(); ++i)
        if (!coeff_is_zero(p.c[i])) return i;
    return p.c.size();
}

void shift_down(RPoly& p, size_t v) {
    if (v == 0 || p.is_zero()) return;
    p.c.erase(p.c.begin(), p.c.begin() + static_cast<long>(v));
    p.trim();
}

void canonicalize(RPoly& num, RPoly& den) {
    den.trim();
    num.trim();
    if (den.is_zero()) throw DomainError("RationalFn: zero denominator");
    require_e_free(den);
    if (num.is_zero()) {
        BigReal one(1, Precision::from_bits(epoly_const_value(den.c.back()).prec_bits()));
        den = RPoly::constant(EPoly::constant(one));
        return;
    }
    size_t v = low_index(num) < low_index(den) ? low_index(num) : low_index(den);
    shift_down(num, v);
    shift_down(den, v);
    BigReal lead = epoly_const_value(den.c.back());
    if (lead.is_zero()) throw DomainError("RationalFn: degenerate denominator");
    BigReal inv = 1 / lead;
    num = scale_coeff(num, inv);
    den = scale_coeff(den, inv);
}

}  // namespace

RationalFn::RationalFn() {
    den = RPoly::constant(EPoly::constant(BigReal(1, Precision(19))));
}

RationalFn::RationalFn(RPoly n, RPoly d) : num(std::move(n)), den(std::move(d)) {
    canonicalize(num, den);
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.den + b.num * a.den, a.den * b.den);
}
RationalFn operator-(const RationalFn& a) { return RationalFn(-a.num, a.den); }
RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.num, a.den * b.den);
}

RationalFn rational_derivative(const RationalFn& f) {
    return RationalFn(derivative(f.num) * f.den - f.num * derivative(f.den),
                      f.den * f.den);
}

BigReal rational_den_eval(const RationalFn& f, const BigReal& r0) {
    BigReal acc;
    for (size_t i = f.den.c.size(); i-- > 0;)
        acc = acc * r0 + (f.den.c[i].is_zero() ? BigReal::zero_like(r0) : f.den.c[i].c[0]);
    return acc;
}

EPoly rational_eval_r(const RationalFn& f, const BigReal& r0) {
    BigReal dv = rational_den_eval(f, r0);
    // Scale for the pole test: sum |den_i| max(1,|r0|)^i.
    BigReal m = max(abs(r0), BigReal(1, r0.precision()));
    BigReal scale, p(1, r0.precision());
    for (const auto& cf : f.den.c) {
        if (!cf.is_zero()) scale += abs(cf.c[0]) * p;
        p *= m;
    }
    mpfr_prec_t bits = r0.prec_bits();
    BigReal thr = mul_2si(scale, -(static_cast<long>(bits) - 24));
    if (abs(dv) <= thr)
        throw EvalAtPole("rational_eval_r: denominator vanishes at r0 = " + r0.str_sci(20));
    EPoly nv = eval(f.num, r0);
    return scale_coeff(nv, 1 / dv);
}

}  // namespace spectral
