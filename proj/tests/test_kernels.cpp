#include "doctest.h"
#include "invgauss/hermite.hpp"
#include "invgauss/kernels.hpp"
#include "invgauss/quadrature.hpp"

#include <cmath>

using namespace invgauss;
using doctest::Approx;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("Mehler kernel: frozen references") {
    KernelQuery q1{1, 0.7, {0.3}, {-0.2}};
    CHECK(mehler_kernel(q1) == Approx(0.26120946705250543734).epsilon(1e-13));
    KernelQuery q2{2, 0.5, {0.3, -0.1}, {0.2, 0.4}};
    CHECK(mehler_kernel(q2) == Approx(0.14627497218016809376).epsilon(1e-13));
    CHECK(tbar_kernel(q1) == Approx(std::exp(0.7) * mehler_kernel(q1)).epsilon(1e-15));
    CHECK_THROWS(mehler_kernel(KernelQuery{1, 0.0, {0.0}, {0.0}}));
    CHECK_THROWS(mehler_kernel(KernelQuery{2, 1.0, {0.0}, {0.0}}));
}

TEST_CASE("symmetry against the Gaussian weight") {
    // T_t(x,y) e^{-|y|^2} = T_t(y,x) e^{-|x|^2}
    KernelQuery q{2, 0.8, {0.5, -1.1}, {0.9, 0.2}};
    KernelQuery qs{2, 0.8, {0.9, 0.2}, {0.5, -1.1}};
    double lhs = mehler_kernel(q) * std::exp(-(0.81 + 0.04));
    double rhs = mehler_kernel(qs) * std::exp(-(0.25 + 1.21));
    CHECK(lhs == Approx(rhs).epsilon(1e-13));
}

TEST_CASE("semigroup property") {
    double t = 0.3, s = 0.45, x = 0.6, y = -0.4;
    auto f = [&](double z) -> double {
        return mehler_kernel(KernelQuery{1, t, {x}, {z}}) *
               mehler_kernel(KernelQuery{1, s, {z}, {y}});
    };
    double conv = adaptive_gk(f, -10.0, 10.0, 1e-12);
    CHECK(conv == Approx(mehler_kernel(KernelQuery{1, t + s, {x}, {y}})).epsilon(1e-10));
}

TEST_CASE("eigenfunction relaxation") {
    // int T_t(x,y) Htilde_k(y) dy = e^{-(|k|+n) t} Htilde_k(x)
    MultiIndex k{3};
    double t = 0.4, x = 0.7;
    auto f = [&](double y) -> double {
        return mehler_kernel(KernelQuery{1, t, {x}, {y}}) * hermite_tilde(k, {y});
    };
    double v = adaptive_gk(f, -10.0, 10.0, 1e-12);
    CHECK(v == Approx(std::exp(-4.0 * t) * hermite_tilde(k, {x})).epsilon(1e-10));
}

TEST_CASE("space derivatives vs finite differences") {
    const double h = 1e-5;
    KernelQuery q{2, 0.6, {0.4, -0.9}, {0.7, 0.3}};
    auto T = [&](double a, double b) {
        return mehler_kernel(KernelQuery{2, q.t, {a, b}, q.y});
    };
    // first partial
    double fd1 = (T(q.x[0] + h, q.x[1]) - T(q.x[0] - h, q.x[1])) / (2.0 * h);
    CHECK(mehler_dx({1, 0}, q) == Approx(fd1).epsilon(1e-8));
    // second partial
    double fd2 = (T(q.x[0] + h, q.x[1]) - 2.0 * T(q.x[0], q.x[1]) + T(q.x[0] - h, q.x[1])) /
                 (h * h);
    CHECK(mehler_dx({2, 0}, q) == Approx(fd2).epsilon(1e-5));
    // mixed partial
    double fdm = (T(q.x[0] + h, q.x[1] + h) - T(q.x[0] + h, q.x[1] - h) -
                  T(q.x[0] - h, q.x[1] + h) + T(q.x[0] - h, q.x[1] - h)) /
                 (4.0 * h * h);
    CHECK(mehler_dx({1, 1}, q) == Approx(fdm).epsilon(1e-5));
    // order zero reduces to the kernel itself
    CHECK(mehler_dx({0, 0}, q) == Approx(mehler_kernel(q)).epsilon(1e-15));
}

TEST_CASE("time derivative vs finite differences") {
    KernelQuery q{1, 0.5, {0.8}, {-0.3}};
    const double h = 1e-6;
    double fd = (mehler_kernel(KernelQuery{1, q.t + h, q.x, q.y}) -
                 mehler_kernel(KernelQuery{1, q.t - h, q.x, q.y})) /
                (2.0 * h);
    CHECK(mehler_dt(q) == Approx(fd).epsilon(1e-8));
}

TEST_CASE("delta derivative of the Abar kernel") {
    // delta_i = -(1/2 d/dx_i + x_i), applied to Tbar
    KernelQuery q{1, 0.9, {0.5}, {0.2}};
    const double h = 1e-5;
    auto Tb = [&](double a) { return tbar_kernel(KernelQuery{1, q.t, {a}, q.y}); };
    double fd = -(0.5 * (Tb(q.x[0] + h) - Tb(q.x[0] - h)) / (2.0 * h) + q.x[0] * Tb(q.x[0]));
    CHECK(delta_dx_tbar({1}, q) == Approx(fd).epsilon(1e-8));
    // second application: delta^2 = (1/2 d + x)^2 acting through nested FD
    auto d1 = [&](double a) {
        KernelQuery qq{1, q.t, {a}, q.y};
        return delta_dx_tbar({1}, qq);
    };
    double fd2 = -(0.5 * (d1(q.x[0] + h) - d1(q.x[0] - h)) / (2.0 * h) + q.x[0] * d1(q.x[0]));
    CHECK(delta_dx_tbar({2}, q) == Approx(fd2).epsilon(1e-7));
}

TEST_CASE("classical heat kernel") {
    std::vector<double> z{0.4, -0.2};
    double t = 0.35;
    CHECK(classical_heat({0, 0}, t, z) ==
          Approx(std::pow(2.0 * M_PI * t, -1.0) * std::exp(-0.2 / (2.0 * t))).epsilon(1e-14));
    // mass one (n = 1)
    auto w = [&](double u) { return classical_heat(MultiIndex{0}, 0.7, std::vector<double>{u}); };
    CHECK(adaptive_gk(w, -12.0, 12.0, 1e-12) == Approx(1.0).epsilon(1e-11));
    // space derivative vs FD
    const double h = 1e-5;
    double fd = (classical_heat({0, 0}, t, {z[0] + h, z[1]}) -
                 classical_heat({0, 0}, t, {z[0] - h, z[1]})) /
                (2.0 * h);
    CHECK(classical_heat({1, 0}, t, z) == Approx(fd).epsilon(1e-8));
    // time derivative vs FD
    double fdt = (classical_heat({0, 0}, t + h, z) - classical_heat({0, 0}, t - h, z)) / (2.0 * h);
    CHECK(classical_heat_dt(t, z) == Approx(fdt).epsilon(1e-7));
}

TEST_SUITE_END();
