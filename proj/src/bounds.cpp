#include "spectral/bounds.hpp"

#include <functional>

#include "spectral/errors.hpp"

namespace spectral {

namespace {

Precision bounds_prec(const SystemSpec& spec) {
    long d = spec.precision > 40 ? spec.precision : 40;
    return Precision(d);
}

using Fn = std::function<BigReal(const BigReal&)>;

// Golden-section minimization over [lo, hi] down to width rel_tol*max(1,|x|),
// then Newton on g (the derivative of the objective) with gp = g'.
BigReal minimize_1d(const Fn& g, const Fn& gp, BigReal lo, BigReal hi,
                    const Fn& objective, Precision wp) {
    const BigReal lo0 = lo, hi0 = hi;
    BigReal phi = (sqrt(BigReal(5, wp)) - 1) / 2;
    BigReal c = hi - phi * (hi - lo);
    BigReal d = lo + phi * (hi - lo);
    BigReal fc = objective(c), fd = objective(d);
    BigReal tol8 = pow(BigReal(10, wp), -8);
    while (hi - lo > tol8 * max(BigReal(1, wp), abs(hi))) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - phi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + phi * (hi - lo);
            fd = objective(d);
        }
    }
    BigReal x = (lo + hi) / 2;
    BigReal tol14 = pow(BigReal(10, wp), -14);
    for (int it = 0; it < 40; ++it) {
        BigReal gx = g(x);
        BigReal gpx = gp(x);
        if (gpx.is_zero()) break;
        BigReal step = gx / gpx;
        BigReal xn = x - step;
        if (xn <= lo0 || xn >= hi0) break;  // keep Newton inside the bracket
        x = xn;
        if (abs(step) <= tol14 * max(BigReal(1, wp), abs(x))) break;
    }
    return x;
}

void require_soft(const SystemSpec& spec, const char* who) {
    if (spec.R) throw DomainError(std::string(who) + ": defined for the unconfined problem only");
    if (!(spec.b > 0)) throw DomainError(std::string(who) + ": requires b > 0");
    if (spec.a.is_negative()) throw DomainError(std::string(who) + ": requires a >= 0");
}

}  // namespace

std::pair<BigReal, BigReal> envelope_tangent(const BigReal& a, const BigReal& t) {
    if (!(t > 0)) throw DomainError("envelope_tangent: t must be positive");
    return {a * t / 2, a / (2 * t)};
}

BigReal envelope_upper(const SystemSpec& spec, int n, BigReal* t_star) {
    require_soft(spec, "envelope_upper");
    if (n < 0) throw DomainError("envelope_upper: n must be >= 0");
    Precision wp = bounds_prec(spec);
    BigReal a = spec.a.at_precision(wp), b = spec.b.at_precision(wp);
    BigReal nu = BigReal(spec.k() - 2, wp) / 2;  // l + (d-2)/2
    BigReal base = (4 * n + 2) * b;
    if (a.is_zero()) {
        if (t_star) *t_star = BigReal(0, wp);
        return base + 2 * b * nu;
    }
    BigReal nu2 = nu * nu;
    auto rad = [&](const BigReal& t) { return sqrt(nu2 + a * t / 2); };
    auto obj = [&](const BigReal& t) { return base + 2 * b * rad(t) + a * b / (2 * t); };
    // stationarity: 1/sqrt(nu^2 + a t/2) = 1/t^2, independent of b
    auto g = [&](const BigReal& t) { return a * b / 2 * (1 / rad(t) - 1 / (t * t)); };
    auto gp = [&](const BigReal& t) {
        BigReal s = rad(t);
        return a * b / 2 * (-(a / 4) / (s * s * s) + 2 / (t * t * t));
    };
    BigReal lo = pow(BigReal(10, wp), -4);
    BigReal hi = max(BigReal(4, wp), (nu + a) * (nu + a));
    while (g(hi) < 0) hi *= 2;
    BigReal t = minimize_1d(g, gp, lo, hi, obj, wp);
    if (t_star) *t_star = t;
    return obj(t);
}

BigReal gauss_upper(const SystemSpec& spec, BigReal* alpha_out) {
    require_soft(spec, "gauss_upper");
    Precision wp = bounds_prec(spec);
    BigReal a = spec.a.at_precision(wp), b = spec.b.at_precision(wp);
    long d = spec.d;
    if (a.is_zero()) {
        if (alpha_out) *alpha_out = b;
        return spec.b * spec.d;
    }
    BigReal G = gamma_fn(BigReal(d - 1, wp) / 2) / gamma_fn(BigReal(d, wp) / 2);
    auto obj = [&](const BigReal& al) {
        return BigReal(d, wp) * al / 2 + a * sqrt(al) * G + b * b * d / (2 * al);
    };
    auto g = [&](const BigReal& al) {
        return BigReal(d, wp) / 2 + a * G / (2 * sqrt(al)) - b * b * d / (2 * al * al);
    };
    auto gp = [&](const BigReal& al) {
        return -a * G / (4 * al * sqrt(al)) + b * b * d / (al * al * al);
    };
    BigReal lo = b / 64, hi = 8 * (b + a + 1);
    while (g(lo) > 0) lo /= 2;
    while (g(hi) < 0) hi *= 2;
    BigReal al = minimize_1d(g, gp, lo, hi, obj, wp);
    if (alpha_out) *alpha_out = al;
    return obj(al);
}

BigReal local_energy_lower(const SystemSpec& spec, BigReal* alpha_out) {
    require_soft(spec, "local_energy_lower");
    Precision wp = bounds_prec(spec);
    BigReal a = spec.a.at_precision(wp), b = spec.b.at_precision(wp);
    long d = spec.d;
    if (a.is_zero()) {
        // The inner minimum degenerates; the supremum over alpha -> b is d*b.
        if (alpha_out) *alpha_out = b;
        return spec.b * spec.d;
    }
    BigReal q = cbrt(a * a / 4);  // (a^2/4)^(1/3)
    auto obj_neg = [&](const BigReal& al) {  // negated: we minimize
        return -(al * d + 3 * q * cbrt(b * b - al * al));
    };
    auto g = [&](const BigReal& al) {  // d/d(al) of the negated objective
        BigReal w = b * b - al * al;
        return -(BigReal(d, wp) - 2 * al * q / cbrt(w * w));
    };
    auto gp = [&](const BigReal& al) {
        BigReal w = b * b - al * al;
        return 2 * q * (w + 4 * al * al / 3) / (cbrt(w * w) * w);
    };
    BigReal eps = pow(BigReal(10, wp), -20);
    BigReal lo = b * eps, hi = b * (1 - eps);
    BigReal al = minimize_1d(g, gp, lo, hi, obj_neg, wp);
    if (al >= b) al = b * (1 - eps);
    if (al <= 0) al = b * eps;
    if (alpha_out) *alpha_out = al;
    return -obj_neg(al);
}

BigReal heisenberg_lower(const SystemSpec& spec, BigReal* r_min) {
    if (spec.d < 3) throw DomainError("heisenberg_lower: requires d >= 3");
    if (!(spec.b > 0)) throw DomainError("heisenberg_lower: requires b > 0");
    if (spec.a.is_negative()) throw DomainError("heisenberg_lower: requires a >= 0");
    Precision wp = bounds_prec(spec);
    BigReal a = spec.a.at_precision(wp), b = spec.b.at_precision(wp);
    BigReal c2 = BigReal((spec.d - 2) * (spec.d - 2), wp) / 8;
    auto obj = [&](const BigReal& r) { return c2 / (r * r) + a / r + b * b * r * r; };
    auto g = [&](const BigReal& r) {
        return -2 * c2 / (r * r * r) - a / (r * r) + 2 * b * b * r;
    };
    auto gp = [&](const BigReal& r) {
        BigReal r2 = r * r;
        return 6 * c2 / (r2 * r2) + 2 * a / (r * r2) + 2 * b * b;
    };
    BigReal lo = pow(BigReal(10, wp), -6), hi = 4 * (1 + (a + c2) / b);
    while (g(hi) < 0) hi *= 2;
    BigReal r = minimize_1d(g, gp, lo, hi, obj, wp);
    if (r_min) *r_min = r;
    return obj(r);
}

BoundsReport bounds_for_subspace(const SystemSpec& spec, int l, int n) {
    if (l < 0) throw DomainError("bounds_for_subspace: l must be >= 0");
    SystemSpec sub = spec;
    sub.d = spec.d + 2 * l;
    sub.l = 0;
    BoundsReport rep;
    rep.envelope_upper = envelope_upper(sub, n, &rep.t_star);
    rep.gauss_upper = gauss_upper(sub, &rep.alpha_gauss);
    rep.local_energy_lower = local_energy_lower(sub, &rep.alpha_let);
    if (sub.d >= 3) {
        BigReal r;
        rep.heisenberg_lower = heisenberg_lower(sub, &r);
        rep.r_heis = r;
    }
    return rep;
}

}  // namespace spectral
