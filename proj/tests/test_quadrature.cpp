#include "doctest.h"
#include "invgauss/quadrature.hpp"

#include <cmath>
#include <vector>

using namespace invgauss;
using doctest::Approx;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("Gauss-Hermite moments") {
    const QuadratureRule& r = gauss_hermite_rule(12);
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        m0 += r.weights[i];
        m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        m4 += r.weights[i] * std::pow(r.nodes[i], 4);
    }
    CHECK(m0 == Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(m2 == Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(m4 == Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre moments") {
    const QuadratureRule& r = gauss_legendre_rule(8);
    double m0 = 0.0, m4 = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        m0 += r.weights[i];
        m1 += r.weights[i] * r.nodes[i];
        m4 += r.weights[i] * std::pow(r.nodes[i], 4);
    }
    CHECK(m0 == Approx(2.0).epsilon(1e-14));
    CHECK(m1 == Approx(0.0).scale(1.0));
    CHECK(m4 == Approx(0.4).epsilon(1e-13));
}

TEST_CASE("pairwise sum") {
    std::vector<double> v(1000);
    for (int i = 0; i < 1000; ++i) v[static_cast<std::size_t>(i)] = i + 1.0;
    CHECK(pairwise_sum(v) == 500500.0);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("adaptive GK on smooth and singular integrands") {
    auto s = adaptive_gk([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
    CHECK(s == Approx(2.0).epsilon(1e-12));
    // integrable endpoint singularity
    auto q = adaptive_gk([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-8);
    CHECK(q == Approx(2.0).epsilon(2e-6));
    // complex-valued integrand
    cplx c = adaptive_gk([](double x) { return cplx(std::cos(x), std::sin(x)); }, 0.0, 1.0, 1e-12);
    CHECK(c.real() == Approx(std::sin(1.0)).epsilon(1e-12));
    CHECK(c.imag() == Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
    // degenerate interval
    CHECK(adaptive_gk([](double x) { return x; }, 1.0, 1.0, 1e-12) == 0.0);
}

TEST_CASE("segment list shares one budget") {
    auto f = [](double x) { return std::exp(-x); };
    double v = integrate_segments(f, {0.0, 0.5, 1.0, 3.0}, 1e-12);
    CHECK(v == Approx(1.0 - std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("improper time integral") {
    // int_0^inf t^{-1/2} e^{-t} dt = sqrt(pi)
    auto f = [](double t) { return std::exp(-t) / std::sqrt(t); };
    double v = integrate_time(f, TimeIntegrandSpec{0.5, 1.0, 1.0}, 1e-10);
    CHECK(v == Approx(std::sqrt(M_PI)).epsilon(1e-9));
}

TEST_CASE("sphere ring: measure and antipodal cancellation") {
    std::vector<double> x2{0.3, -0.7};
    auto one = [](const std::vector<double>&) -> cplx { return 1.0; };
    CHECK(sphere_ring(one, x2, 0.8, 32).real() == Approx(2.0 * M_PI * 0.8).epsilon(1e-13));
    std::vector<double> x3{0.1, 0.2, -0.4};
    CHECK(sphere_ring(one, x3, 0.5, 32).real() == Approx(4.0 * M_PI * 0.25).epsilon(1e-13));
    // odd kernel: exact cancellation by antipode pairing
    auto odd = [&](const std::vector<double>& y) -> cplx {
        double d1 = y[0] - x2[0], d2 = y[1] - x2[1];
        double r = std::sqrt(d1 * d1 + d2 * d2);
        return d1 / (r * r * r);
    };
    CHECK(std::abs(sphere_ring(odd, x2, 0.01, 32)) <= 1e-10);
}

TEST_CASE("shell integrals") {
    auto one = [](const std::vector<double>&) -> cplx { return 1.0; };
    // n = 1: length of the two segments
    CHECK(shell_integral(one, {0.4}, 0.1, 1.5, 16, 1e-10).real() ==
          Approx(2.0 * 1.4).epsilon(1e-10));
    // n = 2: annulus area
    CHECK(shell_integral(one, {0.3, -0.7}, 1.0, 2.0, 32, 1e-9).real() ==
          Approx(3.0 * M_PI).epsilon(1e-8));
    // n = 3: shell volume
    CHECK(shell_integral(one, {0.0, 0.1, 0.2}, 0.5, 1.0, 32, 1e-8).real() ==
          Approx(4.0 * M_PI / 3.0 * (1.0 - 0.125)).epsilon(1e-7));
    CHECK_THROWS(shell_integral(one, {0.0}, 0.0, 1.0, 16, 1e-8));
}

TEST_CASE("tensor Gauss-Hermite") {
    auto g = [](const std::vector<double>& z) { return z[0] * z[0] * z[1] * z[1]; };
    CHECK(gh_tensor_integrate(g, 2, 8) == Approx(0.25 * M_PI).epsilon(1e-13));
}

TEST_SUITE_END();
