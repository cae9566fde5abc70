#include "doctest.h"

#include <random>
#include <vector>

#include "spectral/polynomial.hpp"

using namespace spectral;

namespace {

Precision P40(40);

EPoly make(std::initializer_list<long> cs) {
    EPoly p;
    for (long c : cs) p.c.push_back(BigReal(c, P40));
    p.trim();
    return p;
}

EPoly random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> coeff(-9, 9);
    EPoly p;
    int n = deg(rng);
    for (int i = 0; i <= n; ++i) p.c.push_back(BigReal(coeff(rng), P40));
    p.trim();
    return p;
}

bool same(const EPoly& a, const EPoly& b) {
    if (a.degree() != b.degree()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i].cmp(b.c[i]) != 0) return false;
    return true;
}

// naive power-sum evaluation as a cross-check on Horner
BigReal eval_naive(const EPoly& p, const BigReal& x) {
    BigReal acc(x.precision()), xp(1, x.precision());
    for (const auto& c : p.c) {
        acc = acc + c * xp;
        xp = xp * x;
    }
    return acc;
}

}  // namespace

TEST_CASE("Polynomial: degree, trim, zero conventions") {
    EPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(z.coeff(3).is_zero());
    EPoly p = make({1, 0, 0});
    CHECK(p.degree() == 0);
    CHECK(make({0, 0, 5}).degree() == 2);
    CHECK((make({2, 1}) * make({0})).is_zero());
}

TEST_CASE("Polynomial: ring operations on known products") {
    // (1+x)(1-x) = 1 - x^2
    CHECK(same(make({1, 1}) * make({1, -1}), make({1, 0, -1})));
    CHECK(same(make({1, 2, 1}), make({1, 1}) * make({1, 1})));
    CHECK(same(make({3, 4}) + make({-3, -4}), EPoly{}));
    CHECK(same(make({5, 1}) - make({2}), make({3, 1})));
    CHECK(same(make({1, 2}) * 3L, make({3, 6})));
    EPoly s = scale_coeff(make({1, 2, 4}), BigReal("0.5", P40));
    CHECK(same(s + s, make({1, 2, 4})));
}

TEST_CASE("Polynomial: derivative of a known cubic") {
    // d/dx (x^3 - 2x + 7) = 3x^2 - 2
    CHECK(same(derivative(make({7, -2, 0, 1})), make({-2, 0, 3})));
    CHECK(derivative(make({42})).is_zero());
    CHECK(derivative(EPoly{}).is_zero());
}

TEST_CASE("Polynomial: derivative is linear on random samples") {
    std::mt19937 rng(20240817u);
    for (int trial = 0; trial < 50; ++trial) {
        EPoly f = random_poly(rng, 8), g = random_poly(rng, 8);
        CHECK(same(derivative(f + g), derivative(f) + derivative(g)));
        // and commutes with integer scaling
        CHECK(same(derivative(f * 5L), derivative(f) * 5L));
    }
}

TEST_CASE("Polynomial: Horner evaluation matches naive power sums") {
    std::mt19937 rng(7u);
    std::uniform_int_distribution<long> num(-40, 40);
    for (int trial = 0; trial < 25; ++trial) {
        EPoly f = random_poly(rng, 10);
        BigReal x = BigReal(num(rng), P40) / 8;  // exact binary points
        BigReal diff = abs(eval(f, x) - eval_naive(f, x));
        CHECK(diff <= BigReal("1e-30", P40) * max(BigReal(1, P40), abs(eval_naive(f, x))));
    }
}

TEST_CASE("Polynomial: coeff_max_abs") {
    CHECK(coeff_max_abs(make({3, -17, 5})).to_long() == 17);
    CHECK(coeff_max_abs(EPoly{}).is_zero());
}

TEST_CASE("ring_det: small integer matrices") {
    auto n = [](long v) { return BigReal(v, P40); };
    std::vector<std::vector<BigReal>> m2{{n(1), n(2)}, {n(3), n(4)}};
    CHECK(ring_det(m2).to_long() == -2);
    std::vector<std::vector<BigReal>> m3{
        {n(2), n(0), n(1)}, {n(1), n(3), n(2)}, {n(1), n(1), n(1)}};
    CHECK(ring_det(m3).to_long() == 2 * (3 - 2) - 0 + 1 * (1 - 3));
    std::vector<std::vector<BigReal>> bad{{n(1), n(2)}};
    CHECK_THROWS(ring_det(bad));
}

TEST_CASE("ring_det: matches the leading-minor recurrence on tridiagonal matrices") {
    // For tridiagonal T the determinant satisfies
    //   D_m = T[m][m] D_{m-1} - T[m][m-1] T[m-1][m] D_{m-2}
    std::mt19937 rng(99u);
    std::uniform_int_distribution<long> coeff(-5, 5);
    auto n = [](long v) { return BigReal(v, P40); };
    for (int m = 1; m <= 8; ++m) {
        std::vector<std::vector<BigReal>> T(static_cast<size_t>(m),
                                            std::vector<BigReal>(static_cast<size_t>(m), n(0)));
        for (int i = 0; i < m; ++i) {
            T[i][i] = n(coeff(rng));
            if (i > 0) {
                T[i][i - 1] = n(coeff(rng));
                T[i - 1][i] = n(coeff(rng));
            }
        }
        BigReal dm2(1, P40), dm1 = T[0][0];
        for (int i = 1; i < m; ++i) {
            BigReal d = T[i][i] * dm1 - T[i][i - 1] * T[i - 1][i] * dm2;
            dm2 = dm1;
            dm1 = d;
        }
        CHECK(ring_det(T).cmp(dm1) == 0);
    }
}

TEST_CASE("ring_det: works over a polynomial ring") {
    // det [[x, 1], [1, x]] = x^2 - 1
    EPoly x = make({0, 1}), one = make({1});
    std::vector<std::vector<EPoly>> M{{x, one}, {one, x}};
    CHECK(same(ring_det(M), make({-1, 0, 1})));
}
