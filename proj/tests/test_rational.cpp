#include "doctest.h"

#include <random>

#include "spectral/errors.hpp"
#include "spectral/rational.hpp"

using namespace spectral;

namespace {

Precision P45(45);

EPoly ec(std::initializer_list<long> cs) {
    EPoly p;
    for (long c : cs) p.c.push_back(BigReal(c, P45));
    p.trim();
    return p;
}

RPoly rp(std::initializer_list<EPoly> cs) {
    RPoly p;
    for (const auto& c : cs) p.c.push_back(c);
    p.trim();
    return p;
}

// coefficient-wise |a-b| <= eps
bool epoly_close(const EPoly& a, const EPoly& b, const char* eps) {
    BigReal tol(eps, P45);
    int deg = std::max(a.degree(), b.degree());
    for (int i = 0; i <= deg; ++i)
        if (abs(a.coeff(static_cast<size_t>(i)) - b.coeff(static_cast<size_t>(i))) > tol)
            return false;
    return true;
}

RationalFn random_fn(std::mt19937& rng) {
    std::uniform_int_distribution<long> coeff(-6, 6);
    std::uniform_int_distribution<int> deg(0, 3);
    RPoly num, den;
    int dn = deg(rng);
    for (int i = 0; i <= dn; ++i)
        num.c.push_back(ec({coeff(rng), coeff(rng)}));  // linear in E
    num.trim();
    int dd = deg(rng);
    for (int i = 0; i < dd; ++i) den.c.push_back(ec({coeff(rng)}));
    den.c.push_back(ec({1}));  // keep the denominator nonzero and E-free
    return RationalFn(num, den);
}

}  // namespace

TEST_CASE("RationalFn: arithmetic against hand-computed values") {
    // f = 1/r, g = r
    RationalFn f(rp({ec({1})}), rp({ec({0}), ec({1})}));
    RationalFn g(rp({ec({0}), ec({1})}), rp({ec({1})}));
    BigReal two(2, P45);

    // f + g = (1 + r^2)/r -> 5/2 at r=2
    CHECK(epoly_close(rational_eval_r(f + g, two), ec({0}) + scale_coeff(ec({5}), BigReal("0.5", P45)), "1e-40"));
    // f * f = 1/r^2 -> 1/4
    CHECK(epoly_close(rational_eval_r(f * f, two), scale_coeff(ec({1}), BigReal("0.25", P45)), "1e-40"));
    // f - f = 0
    CHECK(rational_eval_r(f - f, two).is_zero());
    // -g -> -2
    CHECK(epoly_close(rational_eval_r(-g, two), ec({-2}), "1e-40"));
}

TEST_CASE("RationalFn: evaluation keeps the energy variable") {
    // f = (E r + 3)/r = E + 3/r
    RationalFn f(rp({ec({3}), ec({0, 1})}), rp({ec({0}), ec({1})}));
    EPoly at2 = rational_eval_r(f, BigReal(2, P45));
    CHECK(at2.degree() == 1);
    CHECK(epoly_close(at2, ec({3}) * BigReal("0.5", P45) + ec({0, 1}), "1e-40"));
    CHECK(rational_den_eval(f, BigReal(2, P45)).cmp(2) == 0);
}

TEST_CASE("RationalFn: derivative of simple forms") {
    // d/dr 1/r = -1/r^2
    RationalFn inv_r(rp({ec({1})}), rp({ec({0}), ec({1})}));
    EPoly d4 = rational_eval_r(rational_derivative(inv_r), BigReal(4, P45));
    CHECK(epoly_close(d4, scale_coeff(ec({-1}), BigReal("0.0625", P45)), "1e-40"));

    // d/dr (E + 3/r) = -3/r^2, E drops out
    RationalFn f(rp({ec({3}), ec({0, 1})}), rp({ec({0}), ec({1})}));
    EPoly d2 = rational_eval_r(rational_derivative(f), BigReal(2, P45));
    CHECK(d2.degree() == 0);
    CHECK(epoly_close(d2, scale_coeff(ec({-3}), BigReal("0.25", P45)), "1e-40"));
}

TEST_CASE("RationalFn: derivative is linear on random samples") {
    std::mt19937 rng(4242u);
    BigReal r0("1.375", P45);
    for (int trial = 0; trial < 30; ++trial) {
        RationalFn f = random_fn(rng), g = random_fn(rng);
        EPoly lhs = rational_eval_r(rational_derivative(f + g), r0);
        EPoly rhs = rational_eval_r(rational_derivative(f), r0) +
                    rational_eval_r(rational_derivative(g), r0);
        BigReal scale = max(BigReal(1, P45), max(coeff_max_abs(lhs), coeff_max_abs(rhs)));
        int deg = std::max(lhs.degree(), rhs.degree());
        for (int i = 0; i <= deg; ++i)
            CHECK(abs(lhs.coeff(static_cast<size_t>(i)) - rhs.coeff(static_cast<size_t>(i))) <=
                  scale * BigReal("1e-38", P45));
    }
}

TEST_CASE("RationalFn: derivative agrees with central differences") {
    std::mt19937 rng(515u);
    BigReal h = pow(BigReal(10, P45), -15L);  // P/3 digits
    BigReal r0("2.25", P45);
    for (int trial = 0; trial < 12; ++trial) {
        RationalFn f = random_fn(rng);
        if (abs(rational_den_eval(f, r0)) < BigReal("0.01", P45)) continue;
        EPoly fd = scale_coeff(rational_eval_r(f, r0 + h) - rational_eval_r(f, r0 - h),
                               1 / (2 * h));
        EPoly an = rational_eval_r(rational_derivative(f), r0);
        BigReal scale = max(BigReal(1, P45), coeff_max_abs(an));
        int deg = std::max(fd.degree(), an.degree());
        for (int i = 0; i <= deg; ++i)
            CHECK(abs(fd.coeff(static_cast<size_t>(i)) - an.coeff(static_cast<size_t>(i))) <=
                  scale * BigReal("1e-25", P45));  // O(h^2) residual
    }
}

TEST_CASE("RationalFn: evaluation at a denominator zero throws") {
    RationalFn inv_r(rp({ec({1})}), rp({ec({0}), ec({1})}));
    CHECK_THROWS_AS(rational_eval_r(inv_r, BigReal(0, P45)), EvalAtPole);
    RationalFn shifted(rp({ec({1})}), rp({ec({-3}), ec({1})}));
    CHECK_THROWS_AS(rational_eval_r(shifted, BigReal(3, P45)), EvalAtPole);
    CHECK_NOTHROW(rational_eval_r(shifted, BigReal(2, P45)));
}
