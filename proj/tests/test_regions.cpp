#include "doctest.h"
#include "invgauss/regions.hpp"

#include <cmath>

using namespace invgauss;
using doctest::Approx;

TEST_SUITE_BEGIN("regions");

TEST_CASE("m function") {
    CHECK(m_fn({0.0, 0.0}) == 1.0);
    CHECK(m_fn({0.6}) == 1.0);
    CHECK(m_fn({2.0}) == Approx(0.25).epsilon(1e-15));
    CHECK(m_fn({3.0, 4.0}) == Approx(1.0 / 25.0).epsilon(1e-15));
}

TEST_CASE("comparability (1+|x|) sqrt(m(x)) in [1, 2]") {
    // sqrt(m(x)) is equivalent to 1/(1+|x|) with constants 1 and 2
    for (double r : {0.0, 0.3, 1.0, 2.5, 7.0, 40.0}) {
        std::vector<double> x{r / std::sqrt(2.0), r / std::sqrt(2.0)};
        double v = (1.0 + r) * std::sqrt(m_fn(x));
        CHECK(v >= 1.0 - 1e-15);
        CHECK(v <= 2.0 + 1e-15);
    }
}

TEST_CASE("membership and boundary are non-strict") {
    RegionSpec s{1.0, 1};
    CHECK(in_region({0.0}, {1.0}, s));            // boundary |x-y| = beta n min{1,1/|x|}
    CHECK_FALSE(in_region({0.0}, {1.0 + 1e-9}, s));
    CHECK(in_region({0.3}, {0.9}, s));            // the frozen kernel pair is local
    RegionSpec s2{1.0, 2};
    CHECK(in_region({3.0, 0.0}, {3.0, 2.0 / 3.0}, s2));  // radius = n/|x| = 2/3
    CHECK_FALSE(in_region({3.0, 0.0}, {3.0, 0.67}, s2));
    CHECK_THROWS(in_region({0.0}, {0.0, 0.0}, s));
}

TEST_CASE("dilation: leaving N_beta persists as N_{a^2 beta} after scaling by a >= 1") {
    // for |x| >= 1 the radius is beta n / |x|; scaling (x,y) -> (ax,ay)
    // multiplies the separation by a and the N_{a^2 beta} radius by a as well
    RegionSpec s{1.0, 1};
    std::vector<double> x{1.5}, y{2.4};
    REQUIRE_FALSE(in_region(x, y, s));
    for (double a : {1.0, 1.5, 3.0}) {
        RegionSpec sa{a * a * 1.0, 1};
        CHECK_FALSE(in_region({a * x[0]}, {a * y[0]}, sa));
    }
}

TEST_CASE("angle conventions") {
    CHECK(angle({0.7}, {-0.3}) == 0.0);                       // n = 1
    CHECK(angle({0.0, 0.0}, {1.0, 0.0}) == 0.0);              // zero vector
    CHECK(angle({1.0, 0.0}, {0.0, 2.0}) == Approx(0.5 * M_PI).epsilon(1e-15));
    CHECK(angle({1.0, 1.0}, {-2.0, -2.0}) == Approx(M_PI).epsilon(1e-12));
    CHECK(angle({1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}) == Approx(0.25 * M_PI).epsilon(1e-14));
    CHECK_THROWS(angle({1.0}, {1.0, 0.0}));
}

TEST_SUITE_END();
