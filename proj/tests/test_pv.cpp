#include "doctest.h"
#include "invgauss/pv.hpp"

#include <cmath>

using namespace invgauss;
using doctest::Approx;

namespace {
HermiteExpansion basis(const MultiIndex& k) {
    HermiteExpansion e(static_cast<int>(k.size()), mi_order(k));
    e.at(k) = 1.0;
    return e;
}
}  // namespace

TEST_SUITE_BEGIN("pv");

TEST_CASE("correction constants: parity and symmetry") {
    CHECK(c_alpha({1}, 1) == 0.0);
    CHECK(c_alpha({3}, 1) == 0.0);
    CHECK(c_alpha({1, 2}, 2) == 0.0);
    CHECK(c_alpha_bar({1}, 1) == 0.0);
    CHECK(c_alpha_bar({2, 1}, 2) == 0.0);
    // the distinguished coordinate is chosen WLOG: component permutation
    CHECK(c_alpha({0, 2}, 2) == Approx(c_alpha({2, 0}, 2)).epsilon(1e-10));
    CHECK_THROWS(c_alpha({0}, 1));
    CHECK_THROWS(c_alpha({2}, 2));
}

TEST_CASE("c_2 = -2 in one dimension") {
    CHECK(c_alpha({2}, 1) == Approx(-2.0).epsilon(1e-11));
}

TEST_CASE("c_(2,0) = -1 in two dimensions") {
    CHECK(c_alpha({2, 0}, 2) == Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("oracle-difference route confirms the Gamma integral (n = 1)") {
    CHECK(c_alpha_oracle_difference({2}, 1) == Approx(-2.0).epsilon(1e-7));
}

TEST_CASE("PV equals the spectral oracle: Riesz, n = 1") {
    std::vector<double> x{0.5};
    SUBCASE("alpha = 1, f = Htilde_0") {
        EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn({0});
        cplx spec = synthesize(riesz_apply(basis({0}), {1}), x);
        PVResult r = pv_apply(PVKernelId::riesz({1}), f, x);
        CHECK(std::abs(r.value - spec) <= 1e-5 * std::abs(spec));
        CHECK(r.converged);
    }
    SUBCASE("alpha = 2, f = Htilde_1") {
        EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn({1});
        cplx spec = synthesize(riesz_apply(basis({1}), {2}), x);
        PVResult r = pv_apply(PVKernelId::riesz({2}), f, x);
        CHECK(std::abs(r.value - spec) <= 1e-5 * std::abs(spec));
    }
}

TEST_CASE("PV equals the spectral oracle: Rbar, n = 1") {
    std::vector<double> x{0.5};
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn({2});
    SUBCASE("alpha = 1") {
        cplx spec = synthesize(riesz_bar_apply(basis({2}), {1}), x);
        PVResult r = pv_apply(PVKernelId::riesz_bar({1}), f, x);
        CHECK(std::abs(r.value - spec) <= 1e-5 * std::abs(spec));
    }
    SUBCASE("alpha = 2") {
        cplx spec = synthesize(riesz_bar_apply(basis({2}), {2}), x);
        PVResult r = pv_apply(PVKernelId::riesz_bar({2}), f, x);
        CHECK(std::abs(r.value - spec) <= 1e-5 * std::max(1.0, std::abs(spec)));
    }
}

TEST_CASE("imaginary powers: corrected ladder converges, raw ladder oscillates") {
    std::vector<double> x{0.4};
    HermiteExpansion e(1, 1);
    e.at({0}) = 1.0;
    e.at({1}) = 1.0;
    EnvelopedFunction f = to_enveloped(e);
    cplx spec = synthesize(imaginary_power_apply(e, 1.0), x);
    PVOptions opt;
    opt.tol = 1e-5;
    PVResult r = pv_apply_imaginary(1.0, f, x, opt);
    CHECK(std::abs(r.value - spec) <= 5e-4);
    CHECK(r.converged);
    // the uncorrected shells keep oscillating at the alpha(eps) f(x) scale
    double osc = 0.0;
    for (std::size_t j = 1; j < r.shell_values.size(); ++j)
        osc = std::max(osc, std::abs(r.shell_values[j] - r.shell_values[j - 1]));
    CHECK(osc >= 0.5 * std::abs(alpha_eps(1.0, 1, 1.0)) * std::abs(f.eval(x)));
}

TEST_CASE("ladder diagnostics are recorded on request") {
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn({1});
    std::vector<double> x{0.5};
    PVOptions opt;
    opt.max_depth = 4;
    opt.tol = 1e-4;
    PVResult r = pv_apply(PVKernelId::riesz({2}), f, x, opt, true);
    CHECK(r.epsilon_sequence.size() == 5);
    CHECK(r.shell_values.size() == 5);
    for (std::size_t j = 1; j < r.epsilon_sequence.size(); ++j)
        CHECK(r.epsilon_sequence[j] == Approx(0.5 * r.epsilon_sequence[j - 1]).epsilon(1e-15));
    // without the flag the ladder stays empty
    PVResult r2 = pv_apply(PVKernelId::riesz({2}), f, x, opt);
    CHECK(r2.epsilon_sequence.empty());
    CHECK(std::abs(r2.value - r.value) <= 1e-12);
}

TEST_CASE("local/global split recombines to the full value") {
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn({0});
    std::vector<double> x{0.5};
    PVOptions opt;
    opt.tol = 1e-6;
    auto [local, global] = split_apply(PVKernelId::riesz({1}), f, x, RegionSpec{1.0, 1}, opt);
    PVResult full = pv_apply(PVKernelId::riesz({1}), f, x, opt);
    CHECK(std::abs(local + global - full.value) <= 2e-5 * std::max(1.0, std::abs(full.value)));
}

TEST_CASE("maximal truncations") {
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn({0});
    std::vector<double> x{0.5};
    double m = maximal_apply(PVKernelId::riesz({1}), f, x, {0.25, 0.5, 1.0});
    CHECK(m >= 0.0);
    CHECK(std::isfinite(m));
    CHECK_THROWS(maximal_apply(PVKernelId::riesz({1}), f, x, {}));
}

TEST_CASE("argument validation") {
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn({0});
    CHECK_THROWS(pv_apply(PVKernelId::imaginary(1.0), f, {0.5}));
    CHECK_THROWS(c_alpha_bar({0}, 1));
}

TEST_SUITE_END();
