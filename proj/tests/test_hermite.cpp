#include "doctest.h"
#include "invgauss/gamma.hpp"
#include "invgauss/hermite.hpp"
#include "invgauss/quadrature.hpp"

#include <cmath>

using namespace invgauss;
using doctest::Approx;

TEST_SUITE_BEGIN("hermite");

TEST_CASE("physicists' Hermite values") {
    CHECK(hermite_poly(0, 0.37) == 1.0);
    CHECK(hermite_poly(1, 0.37) == Approx(0.74).epsilon(1e-15));
    CHECK(hermite_poly(3, 0.5) == Approx(-5.0).epsilon(1e-14));
    CHECK(hermite_poly(4, 0.7) == Approx(-7.6784).epsilon(1e-14));
}

TEST_CASE("coefficient lists match recurrence") {
    auto c = hermite_poly_coeffs(3);  // H_3 = 8 z^3 - 12 z
    REQUIRE(c.size() == 4);
    CHECK(c[0] == 0.0);
    CHECK(c[1] == -12.0);
    CHECK(c[2] == 0.0);
    CHECK(c[3] == 8.0);
    for (int m = 0; m <= 12; ++m) {
        auto cf = hermite_poly_coeffs(m);
        double z = 0.83, horner = 0.0;
        for (std::size_t j = cf.size(); j-- > 0;) horner = horner * z + cf[j];
        CHECK(horner == Approx(hermite_poly(m, z)).epsilon(1e-12));
    }
}

TEST_CASE("weighted variants are consistent") {
    for (double z : {-2.1, -0.4, 0.0, 1.3, 3.7}) {
        for (int m : {0, 1, 4, 9}) {
            CHECK(hermite_tilde_1d(m, z) ==
                  Approx(hermite_poly(m, z) * std::exp(-z * z)).epsilon(1e-13));
            CHECK(hermite_half_weighted(m, z) * std::exp(-0.5 * z * z) ==
                  Approx(hermite_tilde_1d(m, z)).epsilon(1e-13));
        }
    }
    // large degree and argument: no overflow in the half-weighted ladder
    CHECK(std::isfinite(hermite_tilde_1d(40, 5.0)));
    CHECK(std::isfinite(hermite_tilde_1d(60, 0.3)));
}

TEST_CASE("tensor products") {
    MultiIndex k{2, 3};
    std::vector<double> x{0.4, -1.1};
    CHECK(hermite_poly_tensor(k, x) ==
          Approx(hermite_poly(2, 0.4) * hermite_poly(3, -1.1)).epsilon(1e-14));
    CHECK(hermite_tilde(k, x) ==
          Approx(hermite_poly_tensor(k, x) * std::exp(-(0.16 + 1.21))).epsilon(1e-13));
}

TEST_CASE("norms") {
    // ||Htilde_k||^2 = pi^n 2^{|k|} prod k_i!
    CHECK(hermite_tilde_norm_sq({2, 1}, 2) == Approx(M_PI * M_PI * 16.0).epsilon(1e-14));
    CHECK(hermite_tilde_norm_sq({0}, 1) == Approx(M_PI).epsilon(1e-15));
    CHECK(hermite_tilde_norm({3}, 1) ==
          Approx(std::sqrt(M_PI * 8.0 * 6.0)).epsilon(1e-14));
}

TEST_CASE("orthogonality under the Gaussian weight") {
    const QuadratureRule& r = gauss_hermite_rule(24);
    for (int j = 0; j <= 6; ++j)
        for (int k = 0; k <= 6; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i)
                s += r.weights[i] * hermite_poly(j, r.nodes[i]) * hermite_poly(k, r.nodes[i]);
            double expect = (j == k) ? std::sqrt(M_PI) * std::pow(2.0, j) * std::tgamma(j + 1.0)
                                     : 0.0;
            CHECK(s == Approx(expect).epsilon(1e-11).scale(std::sqrt(M_PI) * 46080.0));
        }
}

TEST_CASE("complex gamma: frozen references") {
    cplx g1 = cgamma(cplx(1.0, 1.0));
    CHECK(g1.real() == Approx(0.49801566811835604271).epsilon(1e-12));
    CHECK(g1.imag() == Approx(-0.15494982830181068512).epsilon(1e-12));
    cplx g2 = cgamma(cplx(0.5, 2.0));
    CHECK(g2.real() == Approx(0.089855176706431635814).epsilon(1e-11));
    CHECK(g2.imag() == Approx(-0.06049376029288756848).epsilon(1e-11));
    CHECK(cgamma(cplx(0.5, 0.0)).real() == Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(cgamma(cplx(5.0, 0.0)).real() == Approx(24.0).epsilon(1e-13));
}

TEST_CASE("complex gamma: recurrence and reflection") {
    cplx z(0.3, 0.7);
    cplx lhs = cgamma(z + 1.0);
    cplx rhs = z * cgamma(z);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
    // conjugate symmetry
    cplx a = cgamma(cplx(0.8, -1.2));
    cplx b = std::conj(cgamma(cplx(0.8, 1.2)));
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
}

TEST_CASE("lower incomplete gamma") {
    // real case: gamma(2, 1) = 1 - 2/e
    cplx g = cgamma_lower(cplx(2.0, 0.0), 1.0);
    CHECK(g.real() == Approx(1.0 - 2.0 / M_E).epsilon(1e-13));
    CHECK(g.imag() == Approx(0.0).scale(1.0));
    cplx gc = cgamma_lower(cplx(0.5, 1.0), 0.3);
    CHECK(gc.real() == Approx(-0.31063369580599181686).epsilon(1e-12));
    CHECK(gc.imag() == Approx(-0.28125695036938058273).epsilon(1e-12));
    CHECK(cgamma_lower(cplx(1.5, 0.5), 0.0) == cplx(0.0));
}

TEST_SUITE_END();
