#include "spectral/roots.hpp"

#include <algorithm>

#include "spectral/errors.hpp"

namespace spectral {

namespace {

constexpr int kScanDegreeLimit = 48;

mpfr_prec_t poly_prec(const EPoly& p) {
    mpfr_prec_t m = 64;
    for (const auto& c : p.c) m = std::max(m, c.prec_bits());
    return m;
}

// sum_i |c_i| max(1,|x|)^i -- magnitude scale for "is p(x) effectively zero".
BigReal eval_scale(const EPoly& p, const BigReal& x) {
    BigReal m = max(abs(x), BigReal(1, x.precision()));
    BigReal acc, pw(1, x.precision());
    for (const auto& c : p.c) {
        acc += abs(c) * pw;
        pw *= m;
    }
    return acc;
}

BigReal pow10(long e, Precision p) { return pow(BigReal(10, p), e); }

// p(x) indistinguishable from zero at working precision.
bool near_zero_exact(const EPoly& p, const BigReal& x, mpfr_prec_t bits) {
    BigReal v = eval(p, x);
    BigReal thr = mul_2si(eval_scale(p, x), -(static_cast<long>(bits) - 24));
    return abs(v) <= thr;
}

// Looser test used at refined critical points: a root of multiplicity m
// leaves a residual ~ scale * err^m, err ~ 10^-target.  Anything below
// scale * 10^-(2*target-6) is treated as a root of multiplicity >= 2; roots
// closer together than the requested resolution are not distinguished.
bool near_zero_multiple(const EPoly& p, const BigReal& x, long target) {
    BigReal v = eval(p, x);
    BigReal thr = eval_scale(p, x) * pow10(-(2 * target - 6), x.precision());
    return abs(v) <= thr;
}

int sign_at(const EPoly& p, const BigReal& x) { return eval(p, x).sign(); }

}  // namespace

BigReal refine_root(const EPoly& p, const EPoly& pd, BigReal a, BigReal b,
                    long target_digits) {
    Precision wp = Precision::from_bits(poly_prec(p));
    a = a.at_precision(wp);
    b = b.at_precision(wp);
    int sa = sign_at(p, a);
    int sb = sign_at(p, b);
    if (sa == 0) return a;
    if (sb == 0) return b;
    if (sa == sb) throw DomainError("refine_root: no sign change over [a,b]");

    BigReal ten_neg_t = pow10(-target_digits, wp);
    // Feasibility: the step tolerance must stay above the representable
    // resolution near the root.
    BigReal res_floor = mul_2si(max(abs(a), abs(b)) + 1, -(static_cast<long>(wp.bits()) - 8));
    if (ten_neg_t < res_floor)
        throw NoConvergence("refine_root: requested digits exceed working precision",
                            {a.str_full(), b.str_full()});

    // Bisect into the Newton basin.
    for (int i = 0; i < 30; ++i) {
        BigReal mid = (a + b) / 2;
        int sm = sign_at(p, mid);
        if (sm == 0) return mid;
        if (sm == sa) a = mid; else b = mid;
    }

    BigReal x = (a + b) / 2;
    for (int it = 0; it < 200; ++it) {
        BigReal fx = eval(p, x);
        if (fx.is_zero()) return x;
        BigReal fpx = eval(pd, x);
        BigReal xn;
        bool newton_ok = !fpx.is_zero();
        if (newton_ok) {
            xn = x - fx / fpx;
            if (xn <= a || xn >= b) newton_ok = false;
        }
        if (!newton_ok) xn = (a + b) / 2;
        int sn = sign_at(p, xn);
        if (sn == 0) return xn;
        if (sn == sa) a = xn; else b = xn;
        BigReal step = abs(xn - x);
        x = xn;
        BigReal tol = ten_neg_t * max(abs(x), BigReal(1, wp));
        if (step <= tol) {
            // One polishing Newton step when possible.
            BigReal f2 = eval(p, x);
            BigReal fp2 = eval(pd, x);
            if (!fp2.is_zero()) {
                BigReal xp = x - f2 / fp2;
                if (xp > a && xp < b) x = xp;
            }
            return x;
        }
        if (b - a <= tol) return (a + b) / 2;
    }
    throw NoConvergence("refine_root: stalled before reaching target digits",
                        {a.str_full(), b.str_full()});
}

namespace {

void merge_root(std::vector<RootInfo>& roots, const BigReal& x, int mult, long target) {
    BigReal tol = pow10(-(target - 2), x.precision()) * max(abs(x), BigReal(1, x.precision()));
    for (auto& r : roots) {
        if (abs(r.value - x) <= tol) {
            r.multiplicity = std::max(r.multiplicity, mult);
            return;
        }
    }
    roots.push_back({x, mult});
}

int multiplicity_chain(const EPoly& p, const BigReal& x, long target) {
    int m = 1;
    EPoly d = derivative(p);
    while (d.degree() >= 0 && m <= p.degree() && near_zero_multiple(d, x, target)) {
        ++m;
        d = derivative(d);
    }
    return m;
}

std::vector<RootInfo> isolate_recursive(const EPoly& p, const BigReal& lo,
                                        const BigReal& hi, long target) {
    std::vector<RootInfo> roots;
    int deg = p.degree();
    if (deg < 1) return roots;

    mpfr_prec_t bits = poly_prec(p);
    std::vector<BigReal> pts;
    pts.push_back(lo);
    if (deg >= 2) {
        for (const auto& c : isolate_recursive(derivative(p), lo, hi, target))
            pts.push_back(c.value);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());

    EPoly pd = derivative(p);
    for (const auto& x : pts) {
        if (near_zero_exact(p, x, bits) || near_zero_multiple(p, x, target))
            merge_root(roots, x, multiplicity_chain(p, x, target), target);
    }
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const BigReal& x0 = pts[i];
        const BigReal& x1 = pts[i + 1];
        if (near_zero_exact(p, x0, bits) || near_zero_multiple(p, x0, target)) continue;
        if (near_zero_exact(p, x1, bits) || near_zero_multiple(p, x1, target)) continue;
        if (sign_at(p, x0) * sign_at(p, x1) < 0) {
            BigReal r = refine_root(p, pd, x0, x1, target);
            merge_root(roots, r, multiplicity_chain(p, r, target), target);
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const RootInfo& a, const RootInfo& b) { return a.value < b.value; });
    return roots;
}

std::vector<RootInfo> isolate_scan(const EPoly& p, const BigReal& lo,
                                   const BigReal& hi, long target) {
    std::vector<RootInfo> roots;
    mpfr_prec_t bits = poly_prec(p);
    EPoly pd = derivative(p);
    int M = 16 * p.degree();
    BigReal step = (hi - lo) / M;
    BigReal prev_x = lo;
    int prev_s = sign_at(p, lo);
    if (near_zero_exact(p, lo, bits))
        merge_root(roots, lo, multiplicity_chain(p, lo, target), target);
    for (int i = 1; i <= M; ++i) {
        BigReal x = (i == M) ? hi : lo + step * i;
        if (near_zero_exact(p, x, bits)) {
            merge_root(roots, x, multiplicity_chain(p, x, target), target);
            prev_x = x;
            prev_s = 0;
            continue;
        }
        int s = sign_at(p, x);
        if (prev_s != 0 && s != 0 && s != prev_s) {
            BigReal r = refine_root(p, pd, prev_x, x, target);
            merge_root(roots, r, multiplicity_chain(p, r, target), target);
        }
        prev_x = x;
        prev_s = s;
    }
    std::sort(roots.begin(), roots.end(),
              [](const RootInfo& a, const RootInfo& b) { return a.value < b.value; });
    return roots;
}

}  // namespace

std::vector<RootInfo> isolate_real_roots(const EPoly& p, const BigReal& lo,
                                         const BigReal& hi, long target_digits) {
    EPoly q = p;
    q.trim();
    if (q.is_zero()) throw DomainError("isolate_real_roots: zero polynomial");
    if (!(lo < hi)) throw DomainError("isolate_real_roots: empty interval");
    if (target_digits < 1) throw DomainError("isolate_real_roots: target_digits must be >= 1");
    Precision wp = Precision::from_bits(poly_prec(q));
    BigReal a = lo.at_precision(wp), b = hi.at_precision(wp);
    if (q.degree() > kScanDegreeLimit) return isolate_scan(q, a, b, target_digits);
    return isolate_recursive(q, a, b, target_digits);
}

}  // namespace spectral
