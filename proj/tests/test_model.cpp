#include "doctest.h"

#include <sstream>

#include "spectral/errors.hpp"
#include "spectral/model.hpp"

using namespace spectral;

namespace {
SystemSpec make_spec(long a, long b, int d, int l) {
    SystemSpec s;
    Precision p(50);
    s.a = BigReal(a, p);
    s.b = BigReal(b, p);
    s.d = d;
    s.l = l;
    s.precision = 50;
    return s;
}
}  // namespace

TEST_CASE("SystemSpec: effective dimension parameter and validation") {
    SystemSpec s = make_spec(1, 1, 3, 0);
    CHECK(s.k() == 3);
    CHECK(make_spec(0, 1, 2, 5).k() == 12);
    CHECK(!s.confined());
    s.R = BigReal(2, Precision(50));
    CHECK(s.confined());
    CHECK_NOTHROW(s.validate());

    CHECK_THROWS_AS(make_spec(-1, 1, 3, 0).validate(), DomainError);
    CHECK_THROWS_AS(make_spec(1, -2, 3, 0).validate(), DomainError);
    CHECK_THROWS_AS(make_spec(1, 1, 1, 0).validate(), DomainError);
    CHECK_THROWS_AS(make_spec(1, 1, 3, -1).validate(), DomainError);
    // unconfined with b = 0 has no bound states
    CHECK_THROWS_AS(make_spec(1, 0, 3, 0).validate(), DomainError);
    SystemSpec walled = make_spec(1, 0, 3, 0);
    walled.R = BigReal(1, Precision(50));
    CHECK_NOTHROW(walled.validate());
    SystemSpec badR = make_spec(1, 1, 3, 0);
    badR.R = BigReal(0, Precision(50));
    CHECK_THROWS_AS(badR.validate(), DomainError);
}

TEST_CASE("StateLabel: principal quantum number") {
    // nu = n + l + (d-1)/2
    StateLabel st{2, 1, 3};
    CHECK(st.k() == 5);
    CHECK(st.nu_twice() == 2 * 2 + 2 * 1 + 2);  // 2*nu = 2n + 2l + d - 1
    BigReal nu = st.nu(Precision(40));
    CHECK((2 * nu).to_long() == st.nu_twice());
    StateLabel ground{0, 0, 3};
    CHECK(ground.nu(Precision(40)).to_long() == 1);
}

TEST_CASE("potential: a/r + b^2 r^2 at sample points") {
    SystemSpec s = make_spec(2, 3, 3, 0);
    Precision p(50);
    // V(2) = 2/2 + 9*4 = 37
    CHECK(abs(potential(s, BigReal(2, p)) - 37) <= BigReal("1e-45", p));
    // V(1/2) = 4 + 9/4
    CHECK(abs(potential(s, BigReal(1, p) / 2) - BigReal("6.25", p)) <= BigReal("1e-45", p));
    CHECK_THROWS(potential(s, BigReal(0, p)));
}

TEST_CASE("degeneracy_orbit: all (d,l) pairs sharing k") {
    auto orbit = degeneracy_orbit(6, 0);  // k = 6: (6,0), (4,1), (2,2)
    REQUIRE(orbit.size() == 3);
    CHECK(orbit[0] == std::pair<int, int>(6, 0));
    CHECK(orbit[1] == std::pair<int, int>(4, 1));
    CHECK(orbit[2] == std::pair<int, int>(2, 2));
    for (auto [d, l] : orbit) CHECK(d + 2 * l == 6);

    auto orbit3 = degeneracy_orbit(3, 0);  // odd k = 3: (3,0) only
    REQUIRE(orbit3.size() == 1);
    CHECK(orbit3[0] == std::pair<int, int>(3, 0));

    auto orbit7 = degeneracy_orbit(3, 2);  // k = 7: (3,2), (5,1), (7,0)
    CHECK(orbit7.size() == 3);
}

TEST_CASE("scale_reduce: maps (a,b) to the b=1 normal form") {
    Precision p(50);
    auto [ar, br] = scale_reduce(BigReal(3, p), BigReal(4, p));
    // a' = a / sqrt(b) = 3/2
    CHECK(abs(ar - BigReal("1.5", p)) <= BigReal("1e-45", p));
    CHECK(br.cmp(4) == 0);
    CHECK_THROWS_AS(scale_reduce(BigReal(1, p), BigReal(0, p)), DomainError);
}

TEST_CASE("oscillator_energy: b(4n + 2l + d)") {
    SystemSpec s = make_spec(0, 2, 5, 1);
    CHECK(oscillator_energy(0, s).to_long() == 14);
    CHECK(oscillator_energy(3, s).to_long() == 38);
    CHECK_THROWS_AS(oscillator_energy(0, make_spec(1, 1, 3, 0)), DomainError);
    SystemSpec walled = make_spec(0, 1, 3, 0);
    walled.R = BigReal(1, Precision(50));
    CHECK_THROWS_AS(oscillator_energy(0, walled), DomainError);
}

TEST_CASE("config: parse accepts the documented key-value format") {
    std::istringstream in(
        "# comment line\n"
        "a = 1.5\n"
        "b = 2\n"
        "d = 4\n"
        "l = 1\n"
        "R = inf\n"
        "precision = 64\n"
        "digits = 20\n");
    SolveConfig cfg = parse_config(in);
    CHECK(abs(cfg.spec.a - BigReal("1.5", Precision(64))) <= BigReal("1e-60", Precision(64)));
    CHECK(cfg.spec.b.cmp(2) == 0);
    CHECK(cfg.spec.d == 4);
    CHECK(cfg.spec.l == 1);
    CHECK(!cfg.spec.R);
    CHECK(cfg.spec.precision == 64);
    CHECK(cfg.digits == 20);
}

TEST_CASE("config: defaults, wall radius, and error reporting") {
    std::istringstream minimal("b = 1\nd = 3\n");
    SolveConfig cfg = parse_config(minimal);
    CHECK(cfg.spec.a.is_zero());
    CHECK(cfg.digits == 18);

    std::istringstream walled("a = 1\nb = 1\nd = 3\nR = 2.5\n");
    SolveConfig wcfg = parse_config(walled);
    REQUIRE(wcfg.spec.R.has_value());
    CHECK(abs(*wcfg.spec.R - BigReal("2.5", Precision(100))) <= BigReal("1e-90", Precision(100)));

    std::istringstream junk("a = 1\nwhatever = 2\n");
    CHECK_THROWS_AS(parse_config(junk), DomainError);
    std::istringstream dup("a = 1\na = 2\nb = 1\nd = 3\n");
    CHECK_THROWS_AS(parse_config(dup), DomainError);
    std::istringstream noeq("a 1\n");
    CHECK_THROWS_AS(parse_config(noeq), DomainError);
    std::istringstream badint("a = 1\nb = 1\nd = three\n");
    CHECK_THROWS_AS(parse_config(badint), DomainError);
}

TEST_CASE("config: render/parse round-trip is exact") {
    SolveConfig cfg;
    cfg.spec = make_spec(0, 1, 5, 2);
    cfg.spec.a = sqrt(BigReal(2, Precision(50)));  // non-terminating decimal
    cfg.spec.R = BigReal("1.447082228754501502", Precision(50));
    cfg.digits = 24;

    std::string text = render_config(cfg);
    std::istringstream in(text);
    SolveConfig back = parse_config(in);
    CHECK(back.spec.a.cmp(cfg.spec.a) == 0);  // str_full preserves the value
    CHECK(back.spec.b.cmp(cfg.spec.b) == 0);
    CHECK(back.spec.d == cfg.spec.d);
    CHECK(back.spec.l == cfg.spec.l);
    REQUIRE(back.spec.R.has_value());
    CHECK(back.spec.R->cmp(*cfg.spec.R) == 0);
    CHECK(back.digits == cfg.digits);
    CHECK(back.spec.precision == cfg.spec.precision);
    // and rendering again reproduces the same bytes
    CHECK(render_config(back) == text);
}
