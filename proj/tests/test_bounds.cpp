#include "doctest.h"

#include "spectral/aim.hpp"
#include "spectral/bounds.hpp"
#include "spectral/errors.hpp"
#include "spectral/model.hpp"

using namespace spectral;

namespace {

Precision P50(50);

SystemSpec unit_spec(int d, int l = 0) {
    SystemSpec s;
    s.a = BigReal(1, P50);
    s.b = BigReal(1, P50);
    s.d = d;
    s.l = l;
    s.precision = 50;
    return s;
}

bool near(const BigReal& x, const char* ref, const char* eps) {
    return abs(x - BigReal(ref, P50)) <= BigReal(eps, P50);
}

}  // namespace

TEST_CASE("bounds: frozen values for the d=3 ground state of a/r + r^2, a=1") {
    SystemSpec s = unit_spec(3);
    BigReal t_star;
    BigReal env = envelope_upper(s, 0, &t_star);
    CHECK(near(env, "4.22870495109450173", "1e-14"));
    CHECK(near(t_star, "0.917543340819817684", "1e-12"));

    BigReal alpha;
    CHECK(near(gauss_upper(s, &alpha), "4.079880", "1e-5"));
    CHECK(near(local_energy_lower(s, &alpha), "3.790487", "1e-5"));
    CHECK(near(heisenberg_lower(s), "2.071352", "1e-5"));
}

TEST_CASE("bounds: frozen envelope values for excited states") {
    CHECK(near(envelope_upper(unit_spec(4), 3), "16.9444254834660976", "1e-12"));
    CHECK(near(envelope_upper(unit_spec(7), 5), "27.6227619965646151", "1e-12"));
}

TEST_CASE("bounds: oscillator collapse at a = 0") {
    for (int d : {2, 3, 5, 9}) {
        SystemSpec s = unit_spec(d);
        s.a = BigReal(0, P50);
        BigReal db(d, P50);
        CHECK(abs(envelope_upper(s, 0) - db) <= BigReal("1e-10", P50));
        CHECK(abs(gauss_upper(s) - db) <= BigReal("1e-10", P50));
        CHECK(local_energy_lower(s) <= db + BigReal("1e-10", P50));
        if (d >= 3) CHECK(heisenberg_lower(s) <= db);
    }
}

TEST_CASE("bounds: tangent family dominates a/r and touches it at t") {
    Precision p(50);
    BigReal a(3, p);
    for (const char* ts : {"0.5", "1", "2.25", "7"}) {
        BigReal t(ts, p);
        auto [alpha, beta] = envelope_tangent(a, t);
        // equality at the contact point
        CHECK(abs(alpha / (t * t) + beta - a / t) <= BigReal("1e-10", p));
        // domination everywhere else
        for (int i = 1; i <= 50; ++i) {
            BigReal r = BigReal(i, p) / 5;
            CHECK(alpha / (r * r) + beta - a / r >= -BigReal("1e-40", p));
        }
    }
}

TEST_CASE("bounds: sandwich the computed ground state") {
    for (int d : {3, 5}) {
        SystemSpec s = unit_spec(d);
        BigReal E = find_eigenvalues(s, {0}, 10)[0].energy;
        BoundsReport rep = bounds_for_subspace(s, 0, 0);
        CHECK(rep.local_energy_lower < E);
        CHECK(E < rep.gauss_upper);
        CHECK(E < rep.envelope_upper);
        if (rep.heisenberg_lower) CHECK(*rep.heisenberg_lower < E);
    }
}

TEST_CASE("bounds: envelope stays above excited states too") {
    SystemSpec s = unit_spec(3);
    auto eig = find_eigenvalues(s, {1, 3}, 10);
    CHECK(envelope_upper(s, 1) > eig[0].energy);
    CHECK(envelope_upper(s, 3) > eig[1].energy);
}

TEST_CASE("bounds: subspace folding and the d >= 3 restriction") {
    // (d=2, l=1) folds to effective dimension 4
    BoundsReport folded = bounds_for_subspace(unit_spec(2, 1), 1, 0);
    BoundsReport direct = bounds_for_subspace(unit_spec(4, 0), 0, 0);
    CHECK(abs(folded.envelope_upper - direct.envelope_upper) <= BigReal("1e-20", P50));
    CHECK(abs(folded.gauss_upper - direct.gauss_upper) <= BigReal("1e-20", P50));

    BoundsReport flat = bounds_for_subspace(unit_spec(2, 0), 0, 0);
    CHECK(!flat.heisenberg_lower.has_value());
    CHECK_THROWS_AS(heisenberg_lower(unit_spec(2, 0)), DomainError);
    CHECK_THROWS_AS(bounds_for_subspace(unit_spec(3), -1, 0), DomainError);
}
