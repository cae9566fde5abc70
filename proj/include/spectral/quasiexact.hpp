#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectral/model.hpp"
#include "spectral/polynomial.hpp"

namespace spectral {

// A parameter set for which the radial equation has an exact polynomial-times
// -asymptotics solution.  nprime is the degree of the full polynomial factor;
// the energy is b(2*nprime + k) in both confinement regimes (for a wall at R
// the factor is (R - r) * f with deg f = nprime - 1 and E = b(2n + k + 2),
// n = deg f).
struct QuasiExactSolution {
    int nprime = 0;
    int k = 2;
    BigReal b;
    BigReal a;
    std::optional<BigReal> R;          // set for wall-confined solutions
    BigReal energy;
    std::vector<BigReal> wf_coeffs;    // c_0..c_{nprime} of the polynomial factor
    std::vector<BigReal> node_radii;   // its zeros inside the domain, ascending
    int state_type = 0;                // node count
};

std::string state_type_name(int nodes);

// The vanishing condition(s) selecting quasi-exact parameters.
struct ConditionPoly {
    enum class Var { a, a_and_R };
    Var variable = Var::a;
    EPoly poly_a;        // soft: polynomial in a, degree nprime+1
    BiPoly pair_first;   // hard: bivariate, outer variable a, inner variable R
    BiPoly pair_second;
};

// Tridiagonal determinant Delta_{nprime+1} as a polynomial in a, via the
// three-term recurrence Delta_i = beta_{i-1} Delta_{i-1}
//   - gamma_{i-1} alpha_{i-1} Delta_{i-2}, with beta_j = a,
// alpha_j = -j(j+k-2), gamma_j = 2b(j-nprime-1).
ConditionPoly soft_condition(int nprime, int k, const BigReal& b);

// All quasi-exact solutions with a >= 0 at this (nprime, k, b): for each
// nonnegative root a of the condition, wavefunction coefficients follow
//   c_{i+1} = [a c_i + 2b(i - nprime - 1) c_{i-1}] / ((i+1)(i+k-1)),
// the energy is b(2*nprime + k), and the node count labels the state.
std::vector<QuasiExactSolution> soft_solutions(int nprime, int k, const BigReal& b);

// u(r) = C r^((k-1)/2) exp(-b r^2/2) f(r) with C fixed by integral
// normalization over (0, inf), computed term-by-term from
//   int_0^inf r^(nu-1) exp(-mu r^2) dr = Gamma(nu/2) / (2 mu^(nu/2)).
struct NormalizedWavefunction {
    BigReal C;
    int k = 2;
    BigReal b;
    std::vector<BigReal> coeffs;

    BigReal operator()(const BigReal& r) const;
};

NormalizedWavefunction soft_wavefunction(const QuasiExactSolution& sol);

// The two closure determinants whose simultaneous vanishing makes the
// wall-confined solution (R - r) f(r), deg f = n, exact with
// E = b(2n + k + 2).  Built generically from the five-term recurrence rows
// m = 0..n+1 over (c_0..c_n): determinant of rows 0..n and of rows
// 0..n-1, n+1.
ConditionPoly hard_condition_pair(int n, int k, const BigReal& b);

// Simultaneous positive solutions (a, R) of the pair, via damped 2-D Newton
// from a multistart grid a in {0.5,1,..,20}, R in {0.25,0.5,..,10},
// deduplicated at distance 1e-10.  Each solution carries the wavefunction,
// node radii and node count, and is cross-validated against an AIM run at
// the same parameters (energy match to 1e-15).  Throws NoSolutionFound when
// the grid yields nothing admissible.
std::vector<QuasiExactSolution> solve_hard_system(int n, int k, const BigReal& b);

// a = 0 reduction: checks that the recurrence at nprime = 2m reproduces the
// confluent-hypergeometric series 1F1(-m; k/2; b r^2) termwise, that the
// condition vanishes identically at a = 0 for even nprime = 2m, and that it
// does not for odd nprime.  Returns false (with a report) on mismatch.
bool heun_reduction_check(int k, const BigReal& b, int m, std::string* report = nullptr);

}  // namespace spectral
