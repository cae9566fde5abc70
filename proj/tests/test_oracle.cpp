#include "doctest.h"

#include "spectral/aim.hpp"
#include "spectral/oracle.hpp"

using namespace spectral;

namespace {

Precision P40(40);

SystemSpec spec_of(const char* a, const char* b, int d, int l = 0) {
    SystemSpec s;
    s.a = BigReal(a, P40);
    s.b = BigReal(b, P40);
    s.d = d;
    s.l = l;
    s.precision = 40;
    return s;
}

}  // namespace

TEST_CASE("oracle: oscillator eigenvalues by direct integration") {
    SystemSpec osc = spec_of("0", "1", 3);
    EigenResult g = shoot_eigenvalue(osc, 0, 12);
    CHECK(abs(g.energy - 3) <= BigReal("1e-11", P40));
    CHECK(g.method == Method::oracle);
    CHECK(g.state.n == 0);
    EigenResult x1 = shoot_eigenvalue(osc, 1, 10);
    CHECK(abs(x1.energy - 7) <= BigReal("1e-9", P40));
}

TEST_CASE("oracle: coulomb-plus-oscillator ground state") {
    EigenResult r = shoot_eigenvalue(spec_of("1", "1", 3), 0, 12);
    CHECK(abs(r.energy - BigReal("4.057877007967971193", P40)) <= BigReal("1e-11", P40));
}

TEST_CASE("oracle: wall-confined quasi-exact level") {
    SystemSpec s = spec_of("0", "1", 3);
    s.a = sqrt(30 - 6 * sqrt(BigReal(17, P40)));
    s.R = BigReal("1.447082228754501502", P40);
    EigenResult r = shoot_eigenvalue(s, 0, 12);
    CHECK(abs(r.energy - 9) <= BigReal("1e-10", P40));
}

TEST_CASE("oracle: node counting at known energies") {
    SystemSpec osc = spec_of("0", "1", 3);
    CHECK(count_nodes_numeric(osc, BigReal(3, P40)) == 0);
    CHECK(count_nodes_numeric(osc, BigReal(7, P40)) == 1);
    CHECK(count_nodes_numeric(osc, BigReal(11, P40)) == 2);
    // slightly off an eigenvalue the count still identifies the bracket
    CHECK(count_nodes_numeric(osc, BigReal("6.9", P40)) <= 1);
    CHECK(count_nodes_numeric(osc, BigReal("7.5", P40)) >= 1);
}

TEST_CASE("oracle: node count matches the eigenvalue index") {
    SystemSpec s = spec_of("1", "1", 4);
    EigenResult r = shoot_eigenvalue(s, 2, 10);
    CHECK(count_nodes_numeric(s, r.energy) == 2);
}

TEST_CASE("oracle: tightening the integrator tolerance does not move the root") {
    SystemSpec s = spec_of("1", "1", 3);
    EigenResult base = shoot_eigenvalue(s, 0, 10);
    ShotConfig cfg = plan_shot(s, base.energy, 10);
    cfg.tol = cfg.tol / 16;
    EigenResult tight = shoot_eigenvalue(s, 0, 10, cfg);
    CHECK(abs(base.energy - tight.energy) <= BigReal("1e-10", P40));
}

TEST_CASE("oracle: agrees with the iterative solver across regimes") {
    struct Case {
        SystemSpec s;
        int n;
    };
    std::vector<Case> cases;
    cases.push_back({spec_of("1", "1", 2), 0});
    cases.push_back({spec_of("1", "1", 7), 1});
    SystemSpec walled = spec_of("1", "1", 3, 2);
    walled.R = BigReal(1, P40);
    cases.push_back({walled, 0});

    for (auto& c : cases) {
        BigReal aim = find_eigenvalues(c.s, {c.n}, 14)[0].energy;
        BigReal shot = shoot_eigenvalue(c.s, c.n, 12).energy;
        CHECK(abs(aim - shot) <= BigReal("1e-10", P40) * max(BigReal(1, P40), abs(aim)));
    }
}

TEST_CASE("oracle: digit request is capped and validated") {
    SystemSpec s = spec_of("0", "1", 3);
    CHECK_THROWS(shoot_eigenvalue(s, 0, 40));  // beyond the supported range
    CHECK_THROWS(shoot_eigenvalue(s, -1, 10));
}
