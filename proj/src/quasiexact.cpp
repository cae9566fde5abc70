#include "spectral/quasiexact.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "spectral/aim.hpp"
#include "spectral/errors.hpp"
#include "spectral/roots.hpp"

namespace spectral {

namespace {

Precision work_prec(const BigReal& b, long floor_digits) {
    long d = Precision::from_bits(b.prec_bits()).digits;
    return Precision(std::max(d, floor_digits));
}

void check_params(int nprime, int k, const BigReal& b, const char* who) {
    if (nprime < 0) throw DomainError(std::string(who) + ": degree must be >= 0");
    if (k < 2) throw DomainError(std::string(who) + ": k must be >= 2");
    if (!(b.sign() > 0) || !b.is_finite())
        throw DomainError(std::string(who) + ": b must be positive and finite");
}

// multiply by the variable
EPoly shift_up(const EPoly& p, Precision prec) {
    if (p.is_zero()) return p;
    EPoly out;
    out.c.reserve(p.c.size() + 1);
    out.c.push_back(BigReal(prec));
    out.c.insert(out.c.end(), p.c.begin(), p.c.end());
    return out;
}

// c_{i+1} = [a c_i + 2b(i - nprime - 1) c_{i-1}] / ((i+1)(i+k-1)), c_0 = 1
std::vector<BigReal> factor_coeffs(int nprime, int k, const BigReal& a,
                                   const BigReal& b, Precision prec) {
    std::vector<BigReal> c(static_cast<size_t>(nprime) + 1, BigReal(prec));
    c[0] = BigReal(1, prec);
    for (int i = 0; i + 1 <= nprime; ++i) {
        BigReal t = a * c[static_cast<size_t>(i)];
        if (i >= 1)
            t = t + (2L * (i - nprime - 1)) * b * c[static_cast<size_t>(i) - 1];
        c[static_cast<size_t>(i) + 1] =
            t / (static_cast<long>(i + 1) * static_cast<long>(i + k - 1));
    }
    return c;
}

BigReal cauchy_bound(const std::vector<BigReal>& c) {
    BigReal lead = abs(c.back());
    BigReal m = BigReal::zero_like(lead);
    for (size_t i = 0; i + 1 < c.size(); ++i) m = max(m, abs(c[i]));
    return 1 + m / lead;
}

// zeros of the polynomial factor in (0, hi); simple positive roots only
std::vector<BigReal> positive_roots(const std::vector<BigReal>& coeffs,
                                    const BigReal& hi, long digits) {
    EPoly f{coeffs};
    std::vector<BigReal> out;
    if (f.degree() < 1) return out;
    BigReal lo = BigReal::zero_like(hi);
    for (const auto& rt : isolate_real_roots(f, lo, hi, digits)) {
        if (rt.value.sign() > 0) out.push_back(rt.value);
    }
    std::sort(out.begin(), out.end(), [](const BigReal& x, const BigReal& y) {
        return x < y;
    });
    return out;
}

// ---- wall-confined closure rows ------------------------------------------
//
// Substituting u = r^((k-1)/2) e^(-b r^2/2) (R - r) f(r), deg f = n, and
// E = b(2n + k + 2) into the radial equation couples (c_0..c_n) through
// rows m = 0..n+1:
//   [2b(n-m+2)] c_{m-2} + [2bR(m-1) - a - 2b(n+1)R] c_{m-1}
//   + [m(m+k) + Ra + k - 1] c_m - [R(m+1)(m+k-1)] c_{m+1} = 0.

// single monomial v * a^ia * R^jr
BiPoly bi_term(int ia, int jr, const BigReal& v) {
    BiPoly out;
    if (v.is_zero()) return out;
    Polynomial<BigReal> inner;
    inner.c.assign(static_cast<size_t>(jr) + 1, BigReal::zero_like(v));
    inner.c[static_cast<size_t>(jr)] = v;
    out.c.assign(static_cast<size_t>(ia) + 1, Polynomial<BigReal>());
    out.c[static_cast<size_t>(ia)] = std::move(inner);
    return out;
}

BiPoly closure_entry(int m, int j, int n, int k, const BigReal& b, Precision prec) {
    const BigReal one(1, prec);
    if (j == m - 2) return bi_term(0, 0, (2L * (n - m + 2)) * b);
    if (j == m - 1)
        return bi_term(1, 0, -one) + bi_term(0, 1, (2L * (m - n - 2)) * b);
    if (j == m)
        return bi_term(1, 1, one) +
               bi_term(0, 0, BigReal(static_cast<long>(m) * (m + k) + k - 1, prec));
    if (j == m + 1)
        return bi_term(0, 1, BigReal(-static_cast<long>(m + 1) * (m + k - 1), prec));
    return BiPoly();
}

BigReal eval_bi(const BiPoly& p, const BigReal& a, const BigReal& r) {
    BigReal acc = BigReal::zero_like(a);
    for (size_t i = p.c.size(); i-- > 0;) acc = acc * a + eval(p.c[i], r);
    return acc;
}

BiPoly abs_coeffs(const BiPoly& p) {
    BiPoly out = p;
    for (auto& q : out.c)
        for (auto& x : q.c) x = abs(x);
    return out;
}

BiPoly derivative_inner(const BiPoly& p) {
    BiPoly out = p;
    for (auto& q : out.c) q = derivative(q);
    out.trim();
    return out;
}

std::string state_suffix(int nodes) {
    switch (nodes) {
        case 1: return "first-excited";
        case 2: return "second-excited";
        case 3: return "third-excited";
        case 4: return "fourth-excited";
        case 5: return "fifth-excited";
        default: return std::to_string(nodes) + "-node";
    }
}

}  // namespace

std::string state_type_name(int nodes) {
    if (nodes <= 0) return "ground";
    return state_suffix(nodes);
}

ConditionPoly soft_condition(int nprime, int k, const BigReal& b) {
    check_params(nprime, k, b, "soft_condition");
    Precision prec = work_prec(b, 60);
    const BigReal bb = b.at_precision(prec);

    EPoly prev2;                                           // Delta_{-1} = 0
    EPoly prev = EPoly::constant(BigReal(1, prec));        // Delta_0 = 1
    for (int i = 1; i <= nprime + 1; ++i) {
        int j = i - 1;
        BigReal ga = (2L * (j - nprime - 1)) * bb * BigReal(-static_cast<long>(j) * (j + k - 2), prec);
        EPoly next = shift_up(prev, prec) - prev2 * ga;
        prev2 = std::move(prev);
        prev = std::move(next);
    }

    ConditionPoly out;
    out.variable = ConditionPoly::Var::a;
    out.poly_a = std::move(prev);
    return out;
}

std::vector<QuasiExactSolution> soft_solutions(int nprime, int k, const BigReal& b) {
    check_params(nprime, k, b, "soft_solutions");
    Precision prec = work_prec(b, 60);
    const BigReal bb = b.at_precision(prec);

    EPoly cond = soft_condition(nprime, k, bb).poly_a;
    BigReal amax = cauchy_bound(cond.c);
    // start just below zero so an a = 0 latent root sits strictly inside
    std::vector<RootInfo> roots =
        isolate_real_roots(cond, BigReal(-1, prec), amax, 40);

    const BigReal zero_eps = pow(BigReal(10, prec), -30L);
    std::vector<QuasiExactSolution> out;
    for (const auto& rt : roots) {
        if (rt.value < -zero_eps) continue;
        BigReal a = abs(rt.value) <= zero_eps ? BigReal(prec)
                                              : rt.value.at_precision(prec);

        QuasiExactSolution sol;
        sol.nprime = nprime;
        sol.k = k;
        sol.b = bb;
        sol.a = a;
        sol.energy = (2L * nprime + k) * bb;
        sol.wf_coeffs = factor_coeffs(nprime, k, a, bb, prec);
        if (nprime >= 1) {
            BigReal rmax = cauchy_bound(sol.wf_coeffs);
            sol.node_radii = positive_roots(sol.wf_coeffs, rmax, 30);
        }
        sol.state_type = static_cast<int>(sol.node_radii.size());
        out.push_back(std::move(sol));
    }
    std::sort(out.begin(), out.end(),
              [](const QuasiExactSolution& x, const QuasiExactSolution& y) {
                  if (x.state_type != y.state_type) return x.state_type < y.state_type;
                  return x.a < y.a;
              });
    return out;
}

BigReal NormalizedWavefunction::operator()(const BigReal& r) const {
    if (r.sign() < 0) throw DomainError("wavefunction: r must be >= 0");
    Precision prec = Precision::from_bits(C.prec_bits());
    BigReal rr = r.at_precision(prec);
    if (rr.is_zero()) return BigReal(prec);
    BigReal f = eval(EPoly{coeffs}, rr);
    BigReal amp = pow(rr, BigReal(k - 1, prec) / 2) * exp(-b * rr * rr / 2);
    return C * amp * f;
}

NormalizedWavefunction soft_wavefunction(const QuasiExactSolution& sol) {
    if (sol.R) throw DomainError("soft_wavefunction: solution has a wall radius");
    Precision prec = work_prec(sol.b, 60);

    // squared factor, then term-by-term Gamma integrals
    size_t n = sol.wf_coeffs.size();
    std::vector<BigReal> w(2 * n - 1, BigReal(prec));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w[i + j] = w[i + j] + sol.wf_coeffs[i] * sol.wf_coeffs[j];

    BigReal s(prec);
    for (size_t m = 0; m < w.size(); ++m) {
        BigReal half_nu = BigReal(sol.k + static_cast<long>(m), prec) / 2;
        s = s + w[m] * gamma_fn(half_nu) / (2 * pow(sol.b, half_nu));
    }

    NormalizedWavefunction wf;
    wf.C = 1 / sqrt(s);
    wf.k = sol.k;
    wf.b = sol.b;
    wf.coeffs = sol.wf_coeffs;
    return wf;
}

ConditionPoly hard_condition_pair(int n, int k, const BigReal& b) {
    check_params(n, k, b, "hard_condition_pair");
    Precision prec = work_prec(b, 60);
    const BigReal bb = b.at_precision(prec);

    auto rows_det = [&](bool swap_last) {
        std::vector<std::vector<BiPoly>> M;
        for (int m = 0; m <= n + 1; ++m) {
            if (!swap_last && m == n + 1) continue;
            if (swap_last && m == n) continue;
            std::vector<BiPoly> row;
            for (int j = 0; j <= n; ++j) row.push_back(closure_entry(m, j, n, k, bb, prec));
            M.push_back(std::move(row));
        }
        return ring_det(M);
    };

    ConditionPoly out;
    out.variable = ConditionPoly::Var::a_and_R;
    out.pair_first = rows_det(false);   // rows 0..n
    out.pair_second = rows_det(true);   // rows 0..n-1, n+1
    return out;
}

std::vector<QuasiExactSolution> solve_hard_system(int n, int k, const BigReal& b) {
    check_params(n, k, b, "solve_hard_system");
    Precision prec = work_prec(b, 60);
    const BigReal bb = b.at_precision(prec);
    const long digits = prec.digits;

    ConditionPoly pair = hard_condition_pair(n, k, bb);
    const BiPoly& D1 = pair.pair_first;
    const BiPoly& D2 = pair.pair_second;
    BiPoly dA1 = derivative(D1), dA2 = derivative(D2);
    BiPoly dR1 = derivative_inner(D1), dR2 = derivative_inner(D2);
    BiPoly S1 = abs_coeffs(D1), S2 = abs_coeffs(D2);

    const BigReal one(1, prec);
    const BigReal merit_tol = pow(BigReal(10, prec), -70L);
    const BigReal step_tol = pow(BigReal(10, prec), -(digits - 12));
    const BigReal dedupe_tol = pow(BigReal(10, prec), -10L);
    const BigReal lo_lim = pow(BigReal(10, prec), -8L);
    const BigReal hi_lim(80, prec);

    auto merit_at = [&](const BigReal& a, const BigReal& r, bool& ok) {
        ok = a > lo_lim && r > lo_lim && a < hi_lim && r < hi_lim;
        if (!ok) return BigReal(prec);
        BigReal sa = max(one, abs(a)), sr = max(one, abs(r));
        BigReal f1 = eval_bi(D1, a, r) / eval_bi(S1, sa, sr);
        BigReal f2 = eval_bi(D2, a, r) / eval_bi(S2, sa, sr);
        return f1 * f1 + f2 * f2;
    };

    std::vector<std::pair<BigReal, BigReal>> found;
    auto record = [&](const BigReal& a, const BigReal& r) {
        for (const auto& p : found)
            if (abs(p.first - a) < dedupe_tol && abs(p.second - r) < dedupe_tol) return;
        found.emplace_back(a, r);
    };

    for (int ia = 1; ia <= 40; ++ia) {
        for (int jr = 1; jr <= 40; ++jr) {
            BigReal a = BigReal(ia, prec) / 2;
            BigReal r = BigReal(jr, prec) / 4;
            bool ok = true;
            BigReal merit = merit_at(a, r, ok);
            bool converged = false;

            for (int iter = 0; iter < 60 && ok; ++iter) {
                BigReal f1 = eval_bi(D1, a, r), f2 = eval_bi(D2, a, r);
                BigReal j11 = eval_bi(dA1, a, r), j12 = eval_bi(dR1, a, r);
                BigReal j21 = eval_bi(dA2, a, r), j22 = eval_bi(dR2, a, r);
                BigReal det = j11 * j22 - j12 * j21;
                BigReal det_scale = abs(j11 * j22) + abs(j12 * j21);
                if (det.is_zero() || abs(det) < det_scale * pow(BigReal(10, prec), -45L))
                    break;
                BigReal da = (-f1 * j22 + f2 * j12) / det;
                BigReal dr = (-f2 * j11 + f1 * j21) / det;

                if (abs(da) + abs(dr) < step_tol * (1 + abs(a) + abs(r))) {
                    converged = true;
                    break;
                }

                BigReal lam(1, prec);
                bool accepted = false;
                for (int h = 0; h < 25; ++h) {
                    BigReal an = a + lam * da, rn = r + lam * dr;
                    bool in = true;
                    BigReal mn = merit_at(an, rn, in);
                    if (in && (mn < merit || mn < merit_tol)) {
                        a = std::move(an);
                        r = std::move(rn);
                        merit = std::move(mn);
                        accepted = true;
                        break;
                    }
                    lam = lam / 2;
                }
                if (!accepted) break;
                if (merit < merit_tol && abs(da) + abs(dr) < (1 + abs(a) + abs(r)) / 1000)
                    converged = true;
            }

            if (converged && ok && merit < merit_tol && a > lo_lim && r > lo_lim)
                record(a, r);
        }
    }

    std::vector<QuasiExactSolution> out;
    for (const auto& pr : found) {
        const BigReal& a = pr.first;
        const BigReal& R = pr.second;

        // forward substitution through rows m = 0..n-1; the superdiagonal
        // entry -R(m+1)(m+k-1) never vanishes
        std::vector<BigReal> c(static_cast<size_t>(n) + 1, BigReal(prec));
        c[0] = one;
        for (int m = 0; m + 1 <= n; ++m) {
            BigReal acc(prec);
            for (int j = std::max(0, m - 2); j <= m; ++j)
                acc = acc + eval_bi(closure_entry(m, j, n, k, bb, prec), a, R) *
                                c[static_cast<size_t>(j)];
            BigReal super = eval_bi(closure_entry(m, m + 1, n, k, bb, prec), a, R);
            c[static_cast<size_t>(m) + 1] = -acc / super;
        }

        QuasiExactSolution sol;
        sol.nprime = n + 1;
        sol.k = k;
        sol.b = bb;
        sol.a = a;
        sol.R = R;
        sol.energy = (2L * n + k + 2) * bb;
        sol.node_radii = positive_roots(c, R * (1 - pow(BigReal(10, prec), -30L)), 30);
        sol.state_type = static_cast<int>(sol.node_radii.size());

        // full factor (R - r) f(r)
        sol.wf_coeffs.assign(static_cast<size_t>(n) + 2, BigReal(prec));
        for (int i = 0; i <= n; ++i) {
            sol.wf_coeffs[static_cast<size_t>(i)] =
                sol.wf_coeffs[static_cast<size_t>(i)] + R * c[static_cast<size_t>(i)];
            sol.wf_coeffs[static_cast<size_t>(i) + 1] =
                sol.wf_coeffs[static_cast<size_t>(i) + 1] - c[static_cast<size_t>(i)];
        }

        // cross-check against the iterative solver at the same parameters
        SystemSpec spec;
        spec.a = a;
        spec.b = bb;
        spec.d = k;
        spec.l = 0;
        spec.R = R;
        spec.precision = 40;
        bool checked = false;
        try {
            auto eig = find_eigenvalues(spec, {sol.state_type}, 16);
            checked = !eig.empty() &&
                      abs(eig.front().energy - sol.energy) < pow(BigReal(10, prec), -15L);
        } catch (const NoConvergence&) {
            checked = false;
        }
        if (checked) out.push_back(std::move(sol));
    }

    if (out.empty())
        throw NoSolutionFound("solve_hard_system: no admissible (a, R) pair from the start grid");
    std::sort(out.begin(), out.end(),
              [](const QuasiExactSolution& x, const QuasiExactSolution& y) {
                  if (x.state_type != y.state_type) return x.state_type < y.state_type;
                  return x.a < y.a;
              });
    return out;
}

bool heun_reduction_check(int k, const BigReal& b, int m, std::string* report) {
    check_params(m, k, b, "heun_reduction_check");
    Precision prec = work_prec(b, 60);
    const BigReal bb = b.at_precision(prec);
    const BigReal tol = pow(BigReal(10, prec), -40L);
    std::ostringstream oss;
    bool ok = true;

    // recurrence at a = 0, nprime = 2m vs the confluent series
    // sum_j (-m)_j / ((k/2)_j j!) (b r^2)^j
    std::vector<BigReal> c = factor_coeffs(2 * m, k, BigReal(prec), bb, prec);
    BigReal poch_num(1, prec), poch_den(1, prec), fact(1, prec), bpow(1, prec);
    for (int j = 0; 2 * j <= 2 * m; ++j) {
        if (j > 0) {
            poch_num = poch_num * (-m + (j - 1));
            poch_den = poch_den * (BigReal(k, prec) / 2 + (j - 1));
            fact = fact * j;
            bpow = bpow * bb;
        }
        BigReal expect = poch_num * bpow / (poch_den * fact);
        BigReal got = c[static_cast<size_t>(2 * j)];
        if (!(abs(got - expect) <= tol * max(BigReal(1, prec), abs(expect)))) {
            ok = false;
            oss << "coefficient r^" << 2 * j << ": got " << got.str_sci(30)
                << ", confluent series gives " << expect.str_sci(30) << "\n";
        }
        if (2 * j + 1 <= 2 * m && !c[static_cast<size_t>(2 * j) + 1].is_zero()) {
            ok = false;
            oss << "odd coefficient r^" << 2 * j + 1 << " nonzero at a = 0\n";
        }
    }

    // the termination condition must admit a = 0 exactly for even degree
    EPoly even_cond = soft_condition(2 * m, k, bb).poly_a;
    BigReal at0 = eval(even_cond, BigReal(prec));
    if (!at0.is_zero() && !(abs(at0) <= tol * coeff_max_abs(even_cond))) {
        ok = false;
        oss << "condition at a = 0, degree " << 2 * m << ": " << at0.str_sci(20)
            << " (expected 0)\n";
    }
    EPoly odd_cond = soft_condition(2 * m + 1, k, bb).poly_a;
    BigReal at0_odd = eval(odd_cond, BigReal(prec));
    if (abs(at0_odd) <= tol * coeff_max_abs(odd_cond)) {
        ok = false;
        oss << "condition at a = 0, degree " << 2 * m + 1
            << " unexpectedly vanishes\n";
    }

    if (!ok && report) *report = oss.str();
    return ok;
}

}  // namespace spectral
