#include "spectral/oracle.hpp"

#include <algorithm>
#include <vector>

#include "spectral/errors.hpp"
#include "spectral/roots.hpp"

namespace spectral {

namespace {

// Fehlberg 7(8), 13 stages.  The 8th-order weights advance the solution; the
// embedded 7th-order difference reduces to (41/840)(k1 + k11 - k12 - k13).
struct Tableau {
    std::vector<BigReal> c;
    std::vector<std::vector<BigReal>> A;
    std::vector<BigReal> w;
    BigReal err_w;
};

Tableau make_tableau(Precision p) {
    auto q = [&](long num, long den) { return BigReal(num, p) / den; };
    Tableau t;
    t.c = {q(0, 1),  q(2, 27), q(1, 9), q(1, 6), q(5, 12), q(1, 2), q(5, 6),
           q(1, 6),  q(2, 3),  q(1, 3), q(1, 1), q(0, 1),  q(1, 1)};
    t.A = {
        {},
        {q(2, 27)},
        {q(1, 36), q(1, 12)},
        {q(1, 24), q(0, 1), q(1, 8)},
        {q(5, 12), q(0, 1), q(-25, 16), q(25, 16)},
        {q(1, 20), q(0, 1), q(0, 1), q(1, 4), q(1, 5)},
        {q(-25, 108), q(0, 1), q(0, 1), q(125, 108), q(-65, 27), q(125, 54)},
        {q(31, 300), q(0, 1), q(0, 1), q(0, 1), q(61, 225), q(-2, 9), q(13, 900)},
        {q(2, 1), q(0, 1), q(0, 1), q(-53, 6), q(704, 45), q(-107, 9), q(67, 90), q(3, 1)},
        {q(-91, 108), q(0, 1), q(0, 1), q(23, 108), q(-976, 135), q(311, 54), q(-19, 60),
         q(17, 6), q(-1, 12)},
        {q(2383, 4100), q(0, 1), q(0, 1), q(-341, 164), q(4496, 1025), q(-301, 82),
         q(2133, 4100), q(45, 82), q(45, 164), q(18, 41)},
        {q(3, 205), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(-6, 41), q(-3, 205), q(-3, 41),
         q(3, 41), q(6, 41), q(0, 1)},
        {q(-1777, 4100), q(0, 1), q(0, 1), q(-341, 164), q(4496, 1025), q(-289, 82),
         q(2193, 4100), q(51, 82), q(33, 164), q(12, 41), q(0, 1), q(1, 1)},
    };
    t.w = {q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(34, 105), q(9, 35),
           q(9, 35), q(9, 280), q(9, 280), q(0, 1), q(41, 840), q(41, 840)};
    t.err_w = q(41, 840);
    return t;
}

struct Physics {
    BigReal cc;  // (k-1)(k-3)/4
    BigReal a;
    BigReal b2;
    BigReal E;
};

Physics make_physics(const SystemSpec& spec, const BigReal& E, Precision p) {
    Physics ph;
    ph.cc = BigReal(static_cast<long>(spec.k() - 1) * (spec.k() - 3), p) / 4;
    ph.a = spec.a.at_precision(p);
    ph.b2 = spec.b.at_precision(p) * spec.b.at_precision(p);
    ph.E = E.at_precision(p);
    return ph;
}

BigReal qval(const Physics& ph, const BigReal& r) {
    return (ph.cc / r + ph.a) / r + ph.b2 * r * r - ph.E;
}

struct Shot {
    BigReal u, v;
    int nodes = 0;
};

Shot integrate(const Physics& ph, const Tableau& tb, const BigReal& r_from,
               const BigReal& r_to, BigReal u, BigReal v, const BigReal& tol,
               Precision prec, const BigReal& hmax_in) {
    const int dir = r_to > r_from ? 1 : -1;
    const BigReal span = abs(r_to - r_from);
    if (span.is_zero()) return {u, v, 0};

    BigReal hmax = min(hmax_in, span / 16);
    BigReal h = min(hmax, span / 1000);
    if (r_from.sign() > 0) h = min(h, r_from / 2);  // resolve the 1/r^2 start
    if (dir < 0) h = -h;
    const BigReal hmin = span * pow(BigReal(10, prec), -38L);
    const BigReal eighth = BigReal(-1, prec) / 8;

    BigReal r = r_from;
    int nodes = 0;
    int last_sign = u.sign();
    long steps = 0;
    std::vector<BigReal> ku(13), kv(13);

    while (dir * (r_to - r).sign() > 0) {
        if (++steps > 400000)
            throw NoConvergence("shooting integrator: step budget exhausted");
        bool last = false;
        BigReal rem = r_to - r;
        if (abs(h) >= abs(rem)) {
            h = rem;
            last = true;
        }

        for (int i = 0; i < 13; ++i) {
            BigReal ui = u, vi = v;
            for (int j = 0; j < i; ++j) {
                if (tb.A[i][j].is_zero()) continue;
                ui = ui + h * tb.A[i][j] * ku[j];
                vi = vi + h * tb.A[i][j] * kv[j];
            }
            ku[i] = vi;
            kv[i] = qval(ph, r + tb.c[i] * h) * ui;
        }

        BigReal un = u, vn = v;
        for (int i = 0; i < 13; ++i) {
            if (tb.w[i].is_zero()) continue;
            un = un + h * tb.w[i] * ku[i];
            vn = vn + h * tb.w[i] * kv[i];
        }
        BigReal eu = tb.err_w * h * (ku[0] + ku[10] - ku[11] - ku[12]);
        BigReal ev = tb.err_w * h * (kv[0] + kv[10] - kv[11] - kv[12]);

        BigReal su = max(max(abs(u), abs(un)), abs(h) * max(abs(v), abs(vn)));
        BigReal sv = max(max(abs(v), abs(vn)), abs(h) * abs(kv[0]));
        BigReal err(prec);
        if (!su.is_zero()) err = abs(eu) / su;
        if (!sv.is_zero()) err = max(err, abs(ev) / sv);

        if (err <= tol) {
            r = last ? r_to : r + h;
            u = un;
            v = vn;
            int s = u.sign();
            if (s != 0 && last_sign != 0 && s != last_sign) ++nodes;
            if (s != 0) last_sign = s;
        }

        BigReal fac(4, prec);
        if (!err.is_zero()) {
            fac = (9 * pow(err / tol, eighth)) / 10;
            fac = min(BigReal(4, prec), max(BigReal(1, prec) / 10, fac));
        }
        h = h * fac;
        if (abs(h) > hmax) h = dir > 0 ? hmax : -hmax;
        if (abs(h) < hmin)
            throw NoConvergence("shooting integrator: step size underflow");
    }
    return {u, v, nodes};
}

// u ~ r^((k-1)/2) sum c_j r^j with
// c_j = [a c_{j-1} - E c_{j-2} + b^2 c_{j-4}] / (j (j+k-2))
void series_start(const SystemSpec& spec, const Physics& ph, const BigReal& r,
                  Precision prec, BigReal& u, BigReal& v) {
    const int terms = 10;
    int k = spec.k();
    std::vector<BigReal> c(terms + 1, BigReal(prec));
    c[0] = BigReal(1, prec);
    for (int j = 1; j <= terms; ++j) {
        BigReal t = ph.a * c[j - 1];
        if (j >= 2) t = t - ph.E * c[j - 2];
        if (j >= 4) t = t + ph.b2 * c[j - 4];
        c[j] = t / (static_cast<long>(j) * (j + k - 2));
    }
    BigReal f(prec), fp(prec);
    for (int j = terms; j >= 0; --j) {
        f = f * r + c[j];
        if (j >= 1) fp = fp * r + c[j] * j;
    }
    BigReal s = BigReal(k - 1, prec) / 2;
    BigReal rs = pow(r, s);
    u = rs * f;
    v = rs * (s * f / r + fp);
}

// inward seed for the unconfined tail: u'/u = -br + gamma/r - a/(2b r^2),
// gamma = E/(2b) - 1/2
void tail_start(const SystemSpec& spec, const Physics& ph, const BigReal& r,
                Precision prec, BigReal& u, BigReal& v) {
    BigReal b = spec.b.at_precision(prec);
    BigReal gamma = ph.E / (2 * b) - BigReal(1, prec) / 2;
    u = BigReal(1, prec);
    v = -b * r + gamma / r - ph.a / (2 * b * r * r);
}

BigReal phase_cap(const BigReal& E, Precision prec) {
    BigReal e1 = max(BigReal(1, prec), E.at_precision(prec)) + 1;
    return BigReal::pi(prec) / (6 * sqrt(e1));
}

int nodes_at(const SystemSpec& spec, const BigReal& E, const Tableau& tb,
             Precision prec, const ShotConfig& proto,
             const BigReal* stop_at = nullptr) {
    Physics ph = make_physics(spec, E, prec);
    BigReal r_max = proto.r_max;
    if (!spec.confined()) {
        // keep the sweep ahead of the turning point as E grows
        BigReal need = sqrt(max(E.at_precision(prec), BigReal(prec)) +
                            60 * log(BigReal(10, prec)) + 1) /
                       spec.b.at_precision(prec);
        r_max = max(r_max, need);
    }
    if (stop_at) r_max = min(r_max, *stop_at);
    BigReal u(prec), v(prec);
    series_start(spec, ph, proto.r_min, prec, u, v);
    BigReal loose = max(proto.tol, pow(BigReal(10, prec), -12L));
    Shot s = integrate(ph, tb, proto.r_min, r_max, u, v, loose, prec,
                       phase_cap(E, prec));
    return s.nodes;
}

BigReal mismatch_impl(const SystemSpec& spec, const BigReal& E, const Tableau& tb,
                      Precision prec, const ShotConfig& cfg) {
    Physics ph = make_physics(spec, E, prec);
    BigReal cap = phase_cap(E, prec);

    BigReal uo(prec), vo(prec);
    series_start(spec, ph, cfg.r_min, prec, uo, vo);
    Shot out = integrate(ph, tb, cfg.r_min, cfg.r_match, uo, vo, cfg.tol, prec, cap);

    BigReal ui(prec), vi(prec);
    if (spec.confined()) {
        ui = BigReal(prec);
        vi = BigReal(-1, prec);
    } else {
        tail_start(spec, ph, cfg.r_max, prec, ui, vi);
    }
    Shot in = integrate(ph, tb, cfg.r_max, cfg.r_match, ui, vi, cfg.tol, prec, cap);

    BigReal num = out.v * in.u - out.u * in.v;
    BigReal den = abs(out.v * in.u) + abs(out.u * in.v);
    if (den.is_zero()) return BigReal(prec);
    return num / den;
}

}  // namespace

ShotConfig plan_shot(const SystemSpec& spec, const BigReal& e_hint, long digits) {
    spec.validate();
    Precision prec(digits + 12);
    ShotConfig cfg;
    cfg.digits = digits;
    cfg.tol = pow(BigReal(10, prec), -(digits + 4));

    BigReal b = spec.b.at_precision(prec);
    BigReal E = e_hint.at_precision(prec);
    BigReal ls = b.sign() > 0 ? 1 / sqrt(b) : *spec.R;
    if (spec.confined()) ls = min(ls, spec.R->at_precision(prec));
    cfg.r_min = ls * pow(BigReal(10, prec), -6L);

    if (spec.confined()) {
        cfg.r_max = spec.R->at_precision(prec);
    } else {
        cfg.r_max = sqrt(max(E, BigReal(prec)) + 60 * log(BigReal(10, prec)) + 1) / b;
    }

    // outer classical turning point: 4b^2 r^4 - 4E r^2 + 4a r + (k-1)(k-3) = 0
    int k = spec.k();
    EPoly turning{std::vector<BigReal>{
        BigReal(static_cast<long>(k - 1) * (k - 3), prec), 4 * spec.a.at_precision(prec),
        -4 * E, BigReal(prec), 4 * b * b}};
    cfg.r_match = spec.confined() ? cfg.r_max / 2 : cfg.r_max / 3;
    if (turning.degree() >= 1) {
        BigReal lo = 2 * cfg.r_min;
        BigReal hi = cfg.r_max * BigReal(9, prec) / 10;
        if (hi > lo) {
            try {
                auto roots = isolate_real_roots(turning, lo, hi, 8);
                if (!roots.empty() && roots.back().value > 4 * cfg.r_min)
                    cfg.r_match = roots.back().value;
            } catch (const NoConvergence&) {
                // keep the fallback matching radius
            }
        }
    }
    return cfg;
}

BigReal shot_mismatch(const SystemSpec& spec, const BigReal& E, const ShotConfig& cfg) {
    spec.validate();
    Precision prec(cfg.digits + 12);
    Tableau tb = make_tableau(prec);
    return mismatch_impl(spec, E, tb, prec, cfg);
}

int count_nodes_numeric(const SystemSpec& spec, const BigReal& E) {
    spec.validate();
    long digits = 10;
    Precision prec(digits + 12);
    Tableau tb = make_tableau(prec);
    ShotConfig cfg = plan_shot(spec, E, digits);

    // Sturm: nodes live below the outer turning point.  Stopping a margin
    // past it keeps the count clean at (near-)eigenvalues, where the grown
    // admixture of the irregular solution fakes a crossing in the far tail.
    BigReal stop = cfg.r_max;
    if (spec.confined()) {
        stop = stop * (1 - pow(BigReal(10, prec), -6L));
    } else {
        int k = spec.k();
        BigReal b = spec.b.at_precision(prec);
        EPoly turning{std::vector<BigReal>{
            BigReal(static_cast<long>(k - 1) * (k - 3), prec),
            4 * spec.a.at_precision(prec), -4 * E.at_precision(prec), BigReal(prec),
            4 * b * b}};
        try {
            auto roots =
                isolate_real_roots(turning, cfg.r_min, cfg.r_max * 2, 8);
            if (!roots.empty()) {
                BigReal rt = roots.back().value;
                stop = min(stop, rt + rt / 4 + 1 / (2 * sqrt(b)));
            }
        } catch (const NoConvergence&) {
            // fall back to the full sweep
        }
    }
    return nodes_at(spec, E, tb, prec, cfg, &stop);
}

EigenResult shoot_eigenvalue(const SystemSpec& spec, int n, long digits) {
    spec.validate();
    if (n < 0) throw DomainError("shoot_eigenvalue: n must be >= 0");
    if (digits < 4 || digits > 15)
        throw DomainError("shoot_eigenvalue: digits must be in [4, 15]");
    Precision prec(digits + 12);
    BigReal hint = spec.b.at_precision(prec) * (4L * n + 2 * spec.l + spec.d) +
                   spec.a.at_precision(prec) + 1;
    if (spec.confined()) {
        BigReal pi = BigReal::pi(prec);
        BigReal kick = pi * (n + 1) / *spec.R;
        hint = hint + kick * kick;
    }
    ShotConfig cfg = plan_shot(spec, hint, digits);
    return shoot_eigenvalue(spec, n, digits, cfg);
}

EigenResult shoot_eigenvalue(const SystemSpec& spec, int n, long digits,
                             const ShotConfig& cfg_in) {
    spec.validate();
    if (n < 0) throw DomainError("shoot_eigenvalue: n must be >= 0");
    if (digits < 4 || digits > 15)
        throw DomainError("shoot_eigenvalue: digits must be in [4, 15]");
    Precision prec(digits + 12);
    Tableau tb = make_tableau(prec);

    // bracket by outward node count
    BigReal A(prec);
    BigReal B = max(BigReal(1, prec),
                    spec.b.at_precision(prec) * (4L * n + 2 * spec.l + spec.d) +
                        spec.a.at_precision(prec) + 1);
    int widen = 0;
    while (nodes_at(spec, B, tb, prec, cfg_in) <= n) {
        A = B;
        B = 2 * B;
        if (++widen > 60)
            throw NoBracket("shoot_eigenvalue: no node-count transition found");
    }
    BigReal width_goal = max(BigReal(1, prec), B) / 1000;
    while (B - A > width_goal) {
        BigReal mid = (A + B) / 2;
        if (nodes_at(spec, mid, tb, prec, cfg_in) >= n + 1)
            B = mid;
        else
            A = mid;
    }

    // fixed matching configuration for the refinement phase
    ShotConfig cfg = plan_shot(spec, B, digits);
    cfg.tol = cfg_in.tol;

    int evals = 0;
    auto D = [&](const BigReal& E) {
        ++evals;
        return mismatch_impl(spec, E, tb, prec, cfg);
    };

    BigReal DA = D(A), DB = D(B);
    int reshrink = 0;
    while (DA.sign() == DB.sign() && DA.sign() != 0) {
        if (++reshrink > 20)
            throw NoBracket("shoot_eigenvalue: mismatch does not change sign");
        for (int i = 0; i < 4; ++i) {
            BigReal mid = (A + B) / 2;
            if (nodes_at(spec, mid, tb, prec, cfg_in) >= n + 1)
                B = mid;
            else
                A = mid;
        }
        DA = D(A);
        DB = D(B);
    }

    BigReal stop = pow(BigReal(10, prec), -(digits + 2)) * max(BigReal(1, prec), B);
    for (int it = 0; it < 200 && B - A > stop; ++it) {
        BigReal mid;
        BigReal dd = DB - DA;
        bool secant_ok = !dd.is_zero();
        if (secant_ok) {
            mid = B - DB * (B - A) / dd;
            BigReal margin = (B - A) / 64;
            if (!(mid > A + margin && mid < B - margin)) secant_ok = false;
        }
        if (!secant_ok || (it % 3 == 2)) mid = (A + B) / 2;
        BigReal Dm = D(mid);
        if (Dm.sign() == 0) {
            A = mid;
            B = mid;
            break;
        }
        if (Dm.sign() == DA.sign()) {
            A = mid;
            DA = Dm;
        } else {
            B = mid;
            DB = Dm;
        }
    }

    EigenResult res;
    res.energy = (A + B) / 2;
    res.state = StateLabel{n, spec.l, spec.d};
    res.iterations = evals;
    res.stabilized_digits = static_cast<int>(digits);
    res.seed_r0 = cfg.r_match;
    res.method = Method::oracle;
    return res;
}

}  // namespace spectral
