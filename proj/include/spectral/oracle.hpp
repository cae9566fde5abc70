#pragma once

#include "spectral/aim.hpp"
#include "spectral/model.hpp"

namespace spectral {

// One shooting setup: integrate u'' = [(k-1)(k-3)/(4r^2) + a/r + b^2 r^2 - E] u
// outward from a series start at r_min and inward from r_max (the wall, or
// far enough into the quadratic barrier that the tail is below target
// accuracy), matching log-derivatives at r_match.
struct ShotConfig {
    BigReal r_min;
    BigReal r_match;
    BigReal r_max;
    BigReal tol;     // per-step relative tolerance of the RKF7(8) integrator
    long digits = 12;
};

// r_min = 1e-6 * length scale, r_match at the outer classical turning point
// for the hinted energy (clamped inside the wall), r_max from
// b^2 r^2 - E > 60 ln 10 or the wall radius, tol = 10^(-digits-4).
ShotConfig plan_shot(const SystemSpec& spec, const BigReal& e_hint, long digits);

// Normalized Wronskian mismatch of the outward and inward solutions at
// r_match; zero exactly at eigenvalues, bounded in [-1, 1].
BigReal shot_mismatch(const SystemSpec& spec, const BigReal& E, const ShotConfig& cfg);

// Independent eigenvalue estimate for the state with n radial nodes.
// Brackets by outward node count, then bisects/secants the mismatch to
// ~digits accuracy (digits <= 15: oracle grade).  Throws NoBracket when no
// node-count transition can be found, NoConvergence if the integrator stalls.
EigenResult shoot_eigenvalue(const SystemSpec& spec, int n, long digits);
EigenResult shoot_eigenvalue(const SystemSpec& spec, int n, long digits,
                             const ShotConfig& cfg);

// Sign changes of the outward solution on (0, r_max) at energy E.
int count_nodes_numeric(const SystemSpec& spec, const BigReal& E);

}  // namespace spectral
