#include "doctest.h"
#include "invgauss/multi_index.hpp"

#include <algorithm>

using namespace invgauss;

TEST_SUITE_BEGIN("multi_index");

TEST_CASE("order and predicates") {
    CHECK(mi_order(MultiIndex{2, 1, 0}) == 3);
    CHECK(mi_is_zero(MultiIndex{0, 0}));
    CHECK_FALSE(mi_is_zero(MultiIndex{0, 1}));
    CHECK(mi_geq(MultiIndex{2, 1}, MultiIndex{1, 1}));
    CHECK_FALSE(mi_geq(MultiIndex{2, 0}, MultiIndex{1, 1}));
}

TEST_CASE("arithmetic") {
    CHECK(mi_add(MultiIndex{1, 2}, MultiIndex{3, 0}) == MultiIndex{4, 2});
    CHECK(mi_sub(MultiIndex{3, 2}, MultiIndex{1, 2}) == MultiIndex{2, 0});
}

TEST_CASE("validation rejects negatives") {
    CHECK_THROWS(mi_validate(MultiIndex{1, -1}));
}

TEST_CASE("enumeration counts and order") {
    // #{|k| <= K, k in N^n} = C(n+K, n)
    CHECK(mi_enumerate(1, 3).size() == 4);
    CHECK(mi_enumerate(2, 2).size() == 6);
    CHECK(mi_enumerate(3, 2).size() == 10);
    auto e = mi_enumerate(2, 2);
    CHECK(e.front() == MultiIndex{0, 0});
    CHECK(std::is_sorted(e.begin(), e.end(), mi_graded_lex_less));
    // graded: orders nondecreasing
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(mi_order(e[i - 1]) <= mi_order(e[i]));
}

TEST_SUITE_END();
