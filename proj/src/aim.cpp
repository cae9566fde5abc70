#include "spectral/aim.hpp"

#include <algorithm>

#include "spectral/bounds.hpp"
#include "spectral/errors.hpp"
#include "spectral/roots.hpp"

namespace spectral {

namespace {

EPoly ec(const BigReal& v) { return EPoly::constant(v); }

// c0 + c1 * E
EPoly elin(const BigReal& c0, const BigReal& c1) {
    return EPoly(std::vector<BigReal>{c0, c1});
}

// The iteration state is kept as polynomials P_m, Q_m with
//   lambda_m = P_m / B^(m+1),  s_m = Q_m / B^(m+1),
// where B is the (E-free) common denominator of the seed.  Substituting into
// the recurrence gives the polynomial form
//   P_{m+1} = P_m' B - (m+1) P_m B' + Q_m B + P0 P_m
//   Q_{m+1} = Q_m' B - (m+1) Q_m B' + Q0 P_m
// and the termination quantity delta_{m+1} has numerator
//   P_{m+1}(r0) Q_m(r0) - P_m(r0) Q_{m+1}(r0)
// after clearing B^(2m+3), which carries no E and keeps one sign near r0.
struct SeedCore {
    RPoly B, dB, P0, Q0;
    BigReal r0;
};

SeedCore make_core(const SystemSpec& spec, const BigReal& r0_in, Precision wp) {
    BigReal a = spec.a.at_precision(wp);
    BigReal b = spec.b.at_precision(wp);
    BigReal r0 = r0_in.at_precision(wp);
    long k = spec.k();
    SeedCore c;
    c.r0 = r0;
    if (!spec.R) {
        // B = r
        c.B = RPoly(std::vector<EPoly>{EPoly(), ec(BigReal(1, wp))});
        c.P0 = RPoly(std::vector<EPoly>{ec(BigReal(1 - k, wp)), EPoly(), ec(2 * b)});
        c.Q0 = RPoly(std::vector<EPoly>{ec(a), elin(b * k, BigReal(-1, wp))});
    } else {
        BigReal R = spec.R->at_precision(wp);
        // B = r(r - R)
        c.B = RPoly(std::vector<EPoly>{EPoly(), ec(-R), ec(BigReal(1, wp))});
        c.P0 = RPoly(std::vector<EPoly>{ec((k - 1) * R), ec(BigReal(-(k + 1), wp)),
                                        ec(-2 * b * R), ec(2 * b)});
        BigReal bk2 = b * (k + 2);
        c.Q0 = RPoly(std::vector<EPoly>{ec(-(a * R + (k - 1))),
                                        elin(-R * bk2 + a + 2 * b * R, R),
                                        elin(bk2, BigReal(-1, wp))});
    }
    c.dB = derivative(c.B);
    return c;
}

void check_r0_regular(const SeedCore& c, Precision wp) {
    // B(r0) must be clearly nonzero; B is E-free.
    BigReal v, scale, pw(1, wp);
    BigReal m = max(abs(c.r0), BigReal(1, wp));
    for (size_t i = 0; i < c.B.c.size(); ++i) {
        BigReal cf = c.B.c[i].is_zero() ? BigReal(0, wp) : c.B.c[i].c[0];
        v = v + cf * pow(c.r0, static_cast<long>(i));
        scale += abs(cf) * pw;
        pw *= m;
    }
    BigReal thr = mul_2si(scale, -(static_cast<long>(wp.bits()) - 24));
    if (abs(v) <= thr)
        throw EvalAtPole("aim: r0 lies on a denominator zero; choose a different r0");
}

// exact power-of-two rescale applied jointly so delta's roots are unchanged
void rescale_pair(RPoly& P, RPoly& Q) {
    BigReal m = max(coeff_max_abs(P), coeff_max_abs(Q));
    if (!m.is_finite())
        throw PrecisionExhausted("aim: coefficient overflow in the recurrence");
    if (m.is_zero())
        throw PrecisionExhausted("aim: recurrence collapsed to zero");
    long e = m.exp2();
    if (e > 40 || e < -40) {
        for (auto& cf : P.c)
            for (auto& x : cf.c) x = mul_2si(x, -e);
        for (auto& cf : Q.c)
            for (auto& x : cf.c) x = mul_2si(x, -e);
    }
}

void normalize_epoly(EPoly& p) {
    BigReal m = coeff_max_abs(p);
    if (!m.is_finite()) throw PrecisionExhausted("aim: delta coefficients overflowed");
    if (m.is_zero()) return;
    long e = m.exp2();
    if (e != 0)
        for (auto& x : p.c) x = mul_2si(x, -e);
}

class AimSession {
  public:
    AimSession(const SystemSpec& spec, const BigReal& r0, Precision wp)
        : core_(make_core(spec, r0, wp)) {
        check_r0_regular(core_, wp);
        P_ = core_.P0;
        Q_ = core_.Q0;
        pv_ = eval(P_, core_.r0);
        qv_ = eval(Q_, core_.r0);
    }

    // Advance one step; afterwards delta() is the numerator of delta_{n()}.
    const EPoly& advance() {
        int next = m_ + 1;
        RPoly Pn = derivative(P_) * core_.B - (P_ * core_.dB) * static_cast<long>(next) +
                   Q_ * core_.B + core_.P0 * P_;
        RPoly Qn = derivative(Q_) * core_.B - (Q_ * core_.dB) * static_cast<long>(next) +
                   core_.Q0 * P_;
        rescale_pair(Pn, Qn);
        EPoly pn = eval(Pn, core_.r0);
        EPoly qn = eval(Qn, core_.r0);
        delta_ = pn * qv_ - pv_ * qn;
        delta_.trim();
        if (delta_.is_zero())
            throw PrecisionExhausted("aim: termination quantity vanished identically");
        normalize_epoly(delta_);
        P_ = std::move(Pn);
        Q_ = std::move(Qn);
        pv_ = std::move(pn);
        qv_ = std::move(qn);
        m_ = next;
        return delta_;
    }

    int n() const { return m_; }
    const EPoly& delta() const { return delta_; }

  private:
    SeedCore core_;
    RPoly P_, Q_;
    EPoly pv_, qv_;
    EPoly delta_;
    int m_ = 0;
};

}  // namespace

AimSeed seed_soft(const SystemSpec& spec, const BigReal& r0) {
    spec.validate();
    if (spec.R) throw DomainError("seed_soft: spec carries a wall; use seed_hard");
    if (spec.b.is_zero())
        throw DomainError("seed_soft: b = 0 admits no Gaussian asymptotic factor");
    if (!(r0 > 0)) throw DomainError("seed_soft: r0 must be positive");
    Precision wp = spec.work_precision();
    SeedCore c = make_core(spec, r0, wp);
    return AimSeed{RationalFn(c.P0, c.B), RationalFn(c.Q0, c.B), c.r0, spec};
}

AimSeed seed_hard(const SystemSpec& spec, const BigReal& r0) {
    spec.validate();
    if (!spec.R) throw DomainError("seed_hard: spec has no wall; use seed_soft");
    if (!(r0 > 0) || !(r0 < *spec.R))
        throw DomainError("seed_hard: r0 must lie in (0, R)");
    Precision wp = spec.work_precision();
    SeedCore c = make_core(spec, r0, wp);
    return AimSeed{RationalFn(c.P0, c.B), RationalFn(c.Q0, c.B), c.r0, spec};
}

std::vector<EPoly> aim_iterate(const AimSeed& seed, int N) {
    if (N < 1) throw DomainError("aim_iterate: N must be >= 1");
    Precision wp = seed.spec.work_precision();
    AimSession session(seed.spec, seed.r0, wp);
    std::vector<EPoly> out;
    out.reserve(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) out.push_back(session.advance());
    return out;
}

BigReal choose_r0(const SystemSpec& spec) {
    Precision wp = spec.work_precision();
    if (spec.R) {
        BigReal half = spec.R->at_precision(wp) / 2;
        if (!(spec.b > 0)) return half;  // pure box: mid-wall
        // With a wall far outside the oscillator length the iteration at R/2
        // sits in the Gaussian tail and stalls; cap at ~1.25 length units.
        return min(half, 5 / (4 * sqrt(spec.b.at_precision(wp))));
    }
    return BigReal(2, wp);
}

BigReal choose_r0_heuristic(const SystemSpec& spec, int n) {
    spec.validate();
    if (spec.R || !(spec.b > 0))
        throw DomainError("choose_r0_heuristic: unconfined problem with b > 0 only");
    if (n < 0) throw DomainError("choose_r0_heuristic: n must be >= 0");
    Precision wp = spec.work_precision();
    BigReal a = spec.a.at_precision(wp), b = spec.b.at_precision(wp);
    BigReal E = b * (2 * n + spec.k());
    // E - V(r) = 0  <=>  b^2 r^3 - E r + a = 0; take the outermost turning point.
    EPoly cubic(std::vector<BigReal>{a, -E, BigReal(0, wp), b * b});
    BigReal hi = (sqrt(E) / b + 1) * 2;
    auto roots = isolate_real_roots(cubic, BigReal(0, wp), hi, 20);
    if (roots.empty()) return choose_r0(spec);
    return roots.back().value;
}

namespace {

struct Tracker {
    int n = 0;
    bool active = false;
    bool done = false;
    BigReal value;
    int streak = 0;
    BigReal diffs[3];
    BigReal best_diff;
    bool any_diff = false;
    int done_N = 0;
    int sd = 0;
};

// Horner value and the scale sum_i |c_i| max(1,|x|)^i in one pass.
std::pair<BigReal, BigReal> eval_with_scale(const EPoly& p, const BigReal& x) {
    BigReal acc, sc;
    BigReal ax = max(abs(x), BigReal(1, x.precision()));
    for (size_t i = p.c.size(); i-- > 0;) {
        acc = acc * x + p.c[i];
        sc = sc * ax + abs(p.c[i]);
    }
    return {acc, sc};
}

std::vector<BigReal> scan_roots(const EPoly& D, const EPoly& Dp, const BigReal& lo,
                                const BigReal& hi, int M, long refine_digits,
                                Precision wp) {
    std::vector<BigReal> out;
    BigReal step = (hi - lo) / M;
    BigReal zero_gate = mul_2si(BigReal(1, wp), -(static_cast<long>(wp.bits()) - 30));
    BigReal prev_x = lo;
    auto [v0, s0] = eval_with_scale(D, lo);
    int prev_s = (abs(v0) <= s0 * zero_gate) ? 0 : v0.sign();
    if (prev_s == 0) out.push_back(lo);
    for (int i = 1; i <= M; ++i) {
        BigReal x = (i == M) ? hi : lo + step * i;
        auto [v, s] = eval_with_scale(D, x);
        int sg = (abs(v) <= s * zero_gate) ? 0 : v.sign();
        if (sg == 0) {
            out.push_back(x);
        } else if (prev_s != 0 && sg != prev_s) {
            out.push_back(refine_root(D, Dp, prev_x, x, refine_digits));
        }
        prev_x = x;
        prev_s = sg;
    }
    std::sort(out.begin(), out.end());
    // merge near-coincident values
    BigReal mtol = pow(BigReal(10, wp), -(refine_digits - 2));
    std::vector<BigReal> uniq;
    for (auto& r : out)
        if (uniq.empty() || r - uniq.back() > mtol) uniq.push_back(r);
    return uniq;
}

// Newton continuation of a tracked root between full scans.
bool polish_root(const EPoly& D, const EPoly& Dp, const BigReal& lo, const BigReal& hi,
                 BigReal x, long digits, BigReal& out) {
    Precision wp = x.precision();
    BigReal tol = pow(BigReal(10, wp), -(digits + 6));
    for (int it = 0; it < 24; ++it) {
        BigReal f = eval(D, x);
        BigReal fp = eval(Dp, x);
        if (fp.is_zero()) return false;
        BigReal step = f / fp;
        x -= step;
        if (x <= lo || x >= hi) return false;
        if (abs(step) <= tol * max(BigReal(1, wp), abs(x))) {
            out = x;
            return true;
        }
    }
    return false;
}

size_t nearest_index(const std::vector<BigReal>& roots, const BigReal& x) {
    auto it = std::lower_bound(roots.begin(), roots.end(), x);
    if (it == roots.begin()) return 0;
    if (it == roots.end()) return roots.size() - 1;
    size_t i = static_cast<size_t>(it - roots.begin());
    return (abs(roots[i] - x) < abs(roots[i - 1] - x)) ? i : i - 1;
}

std::vector<EigenResult> run_session(const SystemSpec& spec, const std::vector<int>& states,
                                     long digits, long work_digits, const AimOptions& opts) {
    Precision wp(work_digits);
    SystemSpec wspec = spec;
    wspec.precision = work_digits;
    wspec.a = spec.a.at_precision(wp);
    wspec.b = spec.b.at_precision(wp);
    if (spec.R) wspec.R = spec.R->at_precision(wp);

    BigReal r0 = opts.r0 ? opts.r0->at_precision(wp) : choose_r0(wspec);
    if (!(r0 > 0) || (wspec.R && !(r0 < *wspec.R)))
        throw DomainError("find_eigenvalues: r0 outside the domain");

    std::vector<int> ns = states;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    int n_top = ns.back();

    // Energy window.
    BigReal Elo(0, wp);
    if (!wspec.R && wspec.d >= 3 && !wspec.a.is_zero()) {
        BigReal lb = max(heisenberg_lower(wspec), local_energy_lower(wspec)).at_precision(wp);
        BigReal guard = pow(BigReal(10, wp), -6);
        Elo = lb * (1 - guard) - guard;
        if (Elo < 0) Elo = BigReal(0, wp);
    }
    BigReal osc_top = wspec.b * (4 * n_top + 2 * wspec.l + wspec.d);
    BigReal cap;
    if (!wspec.R) {
        cap = 4 * max(osc_top, Elo + 4 * wspec.b + 1);
    } else {
        BigReal pi = BigReal::pi(wp);
        BigReal box = pi * (n_top + 1) + BigReal(wspec.k(), wp) / 2 + 2;
        cap = 4 * (osc_top + box * box / (*wspec.R * *wspec.R) + 1);
    }
    int expansions = 0;
    const int max_expansions = 6;

    auto grid_for = [&](const BigReal& c) {
        BigReal est = !wspec.R ? (c - Elo) / (4 * max(wspec.b, BigReal(1, wp) / 4)) + 2
                               : *wspec.R * sqrt(c) / BigReal::pi(wp) + 3;
        long g = 12 * est.to_long();
        return static_cast<int>(std::clamp(g, 240L, 4000L));
    };

    std::vector<Tracker> trackers;
    for (int n : ns) {
        Tracker t;
        t.n = n;
        trackers.push_back(t);
    }

    AimSession session(wspec, r0, wp);
    BigReal tol_conv = pow(BigReal(10, wp), -(digits + 2));
    long refine_digits = digits + 6;

    std::vector<BigReal> roots;
    int roots_at_N = -1;
    bool force_scan = false;

    for (int N = 1; N <= opts.n_max; ++N) {
        const EPoly& D = session.advance();
        if (D.degree() < 1) continue;
        EPoly Dp = derivative(D);

        auto do_scan = [&]() {
            roots = scan_roots(D, Dp, Elo, cap, grid_for(cap), refine_digits, wp);
            // Expand the window only when the found roots press against its
            // top: at small N the termination polynomial genuinely has few
            // real roots, and inflating the window then only coarsens the
            // scan grid.
            while (static_cast<int>(roots.size()) <= n_top && D.degree() > n_top &&
                   !roots.empty() && roots.back() > cap / 2 &&
                   expansions < max_expansions) {
                cap *= 2;
                ++expansions;
                roots = scan_roots(D, Dp, Elo, cap, grid_for(cap), refine_digits, wp);
            }
            roots_at_N = N;
        };

        bool any_inactive = std::any_of(trackers.begin(), trackers.end(),
                                        [](const Tracker& t) { return !t.active && !t.done; });
        if (any_inactive || force_scan || N % 8 == 0 || N <= 3) {
            do_scan();
            force_scan = false;
        }

        for (auto& tr : trackers) {
            if (tr.done) continue;
            if (!tr.active) {
                if (roots_at_N == N && static_cast<int>(roots.size()) > tr.n) {
                    tr.value = roots[static_cast<size_t>(tr.n)];
                    tr.active = true;
                }
                continue;
            }
            BigReal cand;
            bool got = false;
            if (roots_at_N == N) {
                if (!roots.empty()) {
                    cand = roots[nearest_index(roots, tr.value)];
                    got = true;
                }
            } else {
                got = polish_root(D, Dp, Elo, cap, tr.value, digits, cand);
                if (!got) force_scan = true;
            }
            if (!got) {
                tr.streak = 0;
                continue;
            }
            BigReal diff = abs(cand - tr.value);
            tr.value = cand;
            if (!tr.any_diff || diff < tr.best_diff) {
                tr.best_diff = diff;
                tr.any_diff = true;
            }
            if (diff < tol_conv) {
                if (tr.streak < 3) tr.diffs[tr.streak] = diff;
                ++tr.streak;
            } else {
                tr.streak = 0;
            }
            if (tr.streak >= 3) {
                if (roots_at_N != N) do_scan();
                if (roots.empty()) { tr.streak = 0; continue; }
                size_t idx = nearest_index(roots, tr.value);
                if (static_cast<int>(idx) == tr.n) {
                    tr.done = true;
                    tr.done_N = N;
                    BigReal worst = max(tr.diffs[0], max(tr.diffs[1], tr.diffs[2]));
                    if (worst.is_zero()) {
                        tr.sd = static_cast<int>(work_digits);
                    } else {
                        long sd = floor(-log(worst) / log(BigReal(10, wp))).to_long() - 2;
                        tr.sd = static_cast<int>(std::clamp(sd, digits, work_digits));
                    }
                } else if (static_cast<int>(roots.size()) > tr.n) {
                    // rank drifted: re-anchor on the (n+1)-th ascending root
                    tr.value = roots[static_cast<size_t>(tr.n)];
                    tr.streak = 0;
                } else {
                    tr.streak = 0;
                }
            }
        }

        // Near-cap guard: if any live tracker sits near the window top, expand.
        for (auto& tr : trackers) {
            if (tr.active && !tr.done && tr.value > cap * 9 / 10 && expansions < max_expansions) {
                cap *= 2;
                ++expansions;
                force_scan = true;
            }
        }

        if (std::all_of(trackers.begin(), trackers.end(),
                        [](const Tracker& t) { return t.done; }))
            break;
    }

    std::vector<EigenResult> done;
    std::vector<std::string> pending;
    bool floor_suspected = false;
    BigReal floor_tol = pow(BigReal(10, wp), -(digits / 2 + 3));
    for (auto& tr : trackers) {
        if (!tr.done && tr.active && tr.any_diff &&
            tr.best_diff <= floor_tol * max(BigReal(1, wp), abs(tr.value)))
            floor_suspected = true;
        if (tr.done) {
            EigenResult er;
            er.energy = tr.value;
            er.state = StateLabel{tr.n, spec.l, spec.d};
            er.iterations = tr.done_N;
            er.stabilized_digits = tr.sd;
            er.seed_r0 = r0;
            er.method = Method::aim;
            done.push_back(std::move(er));
        } else {
            pending.push_back("n=" + std::to_string(tr.n) +
                              (tr.active ? " last=" + tr.value.str_sci(digits > 40 ? 40 : static_cast<int>(digits))
                                         : " (never tracked)"));
        }
    }
    if (!pending.empty()) {
        // A tracker that locked onto a root but could not stabilize it is
        // starved of working precision, of iteration budget, or both; report
        // that so the caller can escalate.
        if (floor_suspected)
            throw PrecisionExhausted(
                "find_eigenvalues: root estimates plateaued above the "
                "stabilization tolerance at " +
                std::to_string(work_digits) + " working digits");
        throw AimNoConvergence("find_eigenvalues: not all states stabilized within N_max=" +
                                   std::to_string(opts.n_max),
                               std::move(pending), std::move(done));
    }

    // Emit in the caller's order.
    std::vector<EigenResult> out;
    for (int n : states) {
        for (const auto& er : done)
            if (er.state.n == n) {
                out.push_back(er);
                break;
            }
    }
    return out;
}

}  // namespace

std::vector<EigenResult> find_eigenvalues(const SystemSpec& spec,
                                          const std::vector<int>& states, long digits,
                                          const AimOptions& opts) {
    spec.validate();
    if (digits < 1) throw DomainError("find_eigenvalues: digits must be >= 1");
    if (states.empty()) return {};
    for (int n : states)
        if (n < 0) throw DomainError("find_eigenvalues: node counts must be >= 0");
    int n_top = *std::max_element(states.begin(), states.end());
    long wd = std::max(spec.precision, 2 * digits + 12 + 2 * n_top);
    int esc = std::max(0, opts.escalations);
    AimOptions eff = opts;
    for (int attempt = 0;; ++attempt) {
        try {
            return run_session(spec, states, digits, wd, eff);
        } catch (const PrecisionExhausted&) {
            if (attempt >= esc) throw;
            // a plateau can be budget-bound as well as precision-bound: some
            // seeds need N well past the default before the stabilization
            // streak forms, so grow both together
            wd *= 2;
            eff.n_max *= 2;
        }
    }
}

}  // namespace spectral
