#include "doctest.h"

#include <random>
#include <set>

#include "spectral/errors.hpp"
#include "spectral/roots.hpp"

using namespace spectral;

namespace {

Precision P60(60);

EPoly linear_factor(const BigReal& r) {
    EPoly p;
    p.c = {-r, BigReal(1, r.precision())};
    return p;
}

EPoly from_roots(const std::vector<BigReal>& rs) {
    EPoly p;
    p.c = {BigReal(1, P60)};
    for (const auto& r : rs) p = p * linear_factor(r);
    return p;
}

}  // namespace

TEST_CASE("isolate_real_roots: recovers planted roots") {
    std::mt19937 rng(1312u);
    std::uniform_int_distribution<long> num(-40, 40);
    for (int trial = 0; trial < 12; ++trial) {
        std::set<long> eighths;
        std::uniform_int_distribution<int> count(1, 7);
        int want = count(rng);
        while (static_cast<int>(eighths.size()) < want) eighths.insert(num(rng));
        std::vector<BigReal> planted;
        for (long e : eighths) planted.push_back(BigReal(e, P60) / 8);

        auto found = isolate_real_roots(from_roots(planted), BigReal(-6, P60),
                                        BigReal(6, P60), 25);
        REQUIRE(found.size() == planted.size());
        for (size_t i = 0; i < found.size(); ++i) {
            CHECK(found[i].multiplicity == 1);
            CHECK(abs(found[i].value - planted[i]) <=
                  BigReal("1e-24", P60) * max(BigReal(1, P60), abs(planted[i])));
        }
    }
}

TEST_CASE("isolate_real_roots: even-multiplicity roots on the recursive path") {
    // (x-1)^2 (x+2)
    std::vector<BigReal> rs{BigReal(1, P60), BigReal(1, P60), BigReal(-2, P60)};
    auto found = isolate_real_roots(from_roots(rs), BigReal(-5, P60), BigReal(5, P60), 20);
    REQUIRE(found.size() == 2);
    CHECK(abs(found[0].value + 2) <= BigReal("1e-19", P60));
    CHECK(found[0].multiplicity == 1);
    CHECK(abs(found[1].value - 1) <= BigReal("1e-10", P60));  // double roots refine worse
    CHECK(found[1].multiplicity == 2);
}

TEST_CASE("isolate_real_roots: no real roots, domain errors") {
    EPoly x2p1;
    x2p1.c = {BigReal(1, P60), BigReal(0, P60), BigReal(1, P60)};
    CHECK(isolate_real_roots(x2p1, BigReal(-10, P60), BigReal(10, P60), 20).empty());
    CHECK_THROWS_AS(isolate_real_roots(EPoly{}, BigReal(0, P60), BigReal(1, P60), 20),
                    DomainError);
    CHECK_THROWS_AS(isolate_real_roots(x2p1, BigReal(1, P60), BigReal(1, P60), 20),
                    DomainError);
}

TEST_CASE("isolate_real_roots: respects the interval bounds") {
    std::vector<BigReal> rs{BigReal(-3, P60), BigReal(2, P60), BigReal(9, P60)};
    auto found = isolate_real_roots(from_roots(rs), BigReal(0, P60), BigReal(5, P60), 20);
    REQUIRE(found.size() == 1);
    CHECK(abs(found[0].value - 2) <= BigReal("1e-19", P60));
}

TEST_CASE("isolate_real_roots: separates a tight root cluster") {
    BigReal one(1, P60);
    BigReal close = one + mul_2si(one, -20);  // 1 + 2^-20
    auto found = isolate_real_roots(from_roots({one, close, BigReal(4, P60)}),
                                    BigReal(0, P60), BigReal(5, P60), 30);
    REQUIRE(found.size() == 3);
    CHECK(abs(found[0].value - one) <= BigReal("1e-28", P60));
    CHECK(abs(found[1].value - close) <= BigReal("1e-28", P60));
}

TEST_CASE("isolate_real_roots: dense-scan fallback beyond the recursion degree") {
    std::vector<BigReal> planted;
    for (int i = 1; i <= 56; ++i) planted.push_back(BigReal(i, P60) / 4 - 7);
    auto found = isolate_real_roots(from_roots(planted), BigReal(-7, P60),
                                    BigReal(8, P60), 10);
    REQUIRE(found.size() == planted.size());
    for (size_t i = 0; i < found.size(); ++i)
        CHECK(abs(found[i].value - planted[i]) <=
              BigReal("1e-9", P60) * max(BigReal(1, P60), abs(planted[i])));
}

TEST_CASE("refine_root: bisection plus Newton hits the target digits") {
    EPoly p;  // x^2 - 2
    p.c = {BigReal(-2, P60), BigReal(0, P60), BigReal(1, P60)};
    BigReal r = refine_root(p, derivative(p), BigReal(1, P60), BigReal(2, P60), 40);
    CHECK(abs(r - sqrt(BigReal(2, P60))) <= BigReal("1e-39", P60));
}

TEST_CASE("isolate_real_roots: higher targets only sharpen the same roots") {
    std::vector<BigReal> rs{BigReal(-1, P60) / 2, BigReal(3, P60) / 8, BigReal(5, P60)};
    auto coarse = isolate_real_roots(from_roots(rs), BigReal(-6, P60), BigReal(6, P60), 8);
    auto fine = isolate_real_roots(from_roots(rs), BigReal(-6, P60), BigReal(6, P60), 35);
    REQUIRE(coarse.size() == fine.size());
    for (size_t i = 0; i < coarse.size(); ++i)
        CHECK(abs(coarse[i].value - fine[i].value) <=
              BigReal("1e-7", P60) * max(BigReal(1, P60), abs(fine[i].value)));
}
