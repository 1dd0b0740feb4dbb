#include "doctest.h"
#include "invgauss/expansion.hpp"

#include <cmath>

using namespace invgauss;
using doctest::Approx;

TEST_SUITE_BEGIN("expansion");

TEST_CASE("enveloped Hermite basis functions evaluate correctly") {
    MultiIndex k{2, 1};
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn(k);
    for (auto x : std::vector<std::vector<double>>{{0.3, -0.8}, {1.2, 0.4}, {0.0, 0.0}}) {
        CHECK(f.eval(x).real() == Approx(hermite_tilde(k, x)).epsilon(1e-13));
        CHECK(f.eval(x).imag() == 0.0);
    }
    CHECK(f.poly_degree() == 3);
    CHECK(f.is_polynomial());
}

TEST_CASE("analysis recovers the basis exactly") {
    for (auto k : std::vector<MultiIndex>{{0}, {3}, {1, 2}}) {
        int n = static_cast<int>(k.size());
        EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn(k);
        HermiteExpansion e = analyze(f, mi_order(k) + 2);
        for (std::size_t i = 0; i < e.indices.size(); ++i) {
            double expect = (e.indices[i] == k) ? 1.0 : 0.0;
            CHECK(std::abs(e.coeff[i] - expect) <= 1e-12);
        }
        CHECK(n == e.dim);
    }
}

TEST_CASE("round trip analyze -> enveloped -> analyze") {
    HermiteExpansion e(2, 3);
    // deterministic pseudo-random-ish coefficients
    for (std::size_t i = 0; i < e.coeff.size(); ++i)
        e.coeff[i] = cplx(std::sin(1.7 * static_cast<double>(i) + 0.3),
                          std::cos(0.9 * static_cast<double>(i)));
    EnvelopedFunction f = to_enveloped(e);
    HermiteExpansion back = analyze(f, 3);
    for (std::size_t i = 0; i < e.coeff.size(); ++i)
        CHECK(std::abs(back.coeff[i] - e.coeff[i]) <= 1e-12);
    // synthesis agrees with direct evaluation
    std::vector<double> x{0.4, -1.3};
    CHECK(std::abs(synthesize(e, x) - f.eval(x)) <= 1e-13);
}

TEST_CASE("Parseval identity") {
    MultiIndex k{2, 1};
    HermiteExpansion e(2, 3);
    e.at(k) = cplx(0.0, 2.0);
    CHECK(e.norm_sq() == Approx(4.0 * hermite_tilde_norm_sq(k, 2)).epsilon(1e-14));
    e.at({0, 0}) = 3.0;
    CHECK(e.norm_sq() ==
          Approx(4.0 * hermite_tilde_norm_sq(k, 2) + 9.0 * hermite_tilde_norm_sq({0, 0}, 2))
              .epsilon(1e-14));
}

TEST_CASE("tail gate") {
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn(MultiIndex{3});
    CHECK_NOTHROW(analyze(f, 5, -1, 1e-10));       // cap above the true degree
    CHECK_THROWS(analyze(f, 3, -1, 1e-10));        // top-degree energy trips the gate
}

TEST_CASE("position lookup") {
    HermiteExpansion e(2, 2);
    CHECK(e.position({0, 0}) == 0);
    CHECK_THROWS(e.position({5, 5}));
    CHECK(e.indices[e.position({1, 1})] == MultiIndex{1, 1});
}

TEST_SUITE_END();
