#include "doctest.h"
#include "invgauss/certify.hpp"

#include <cmath>

using namespace invgauss;

TEST_SUITE_BEGIN("certify");

TEST_CASE("deterministic sampling stream") {
    detail::DetRng a(123), b(123);
    for (int i = 0; i < 50; ++i) CHECK(a.uniform() == b.uniform());
    detail::DetRng c(124);
    bool same = true;
    detail::DetRng a2(123);
    for (int i = 0; i < 10; ++i) same = same && (a2.uniform() == c.uniform());
    CHECK_FALSE(same);
    auto d = detail::DetRng(7).direction(3);
    double n2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    CHECK(std::abs(n2 - 1.0) <= 1e-14);
}

TEST_CASE("pair samplers respect the region constraints") {
    CertifyConfig cfg;
    cfg.n = 2;
    detail::DetRng rng(cfg.seed);
    for (int i = 0; i < 20; ++i) {
        auto g = detail::sample_global_pair(rng, cfg, 1.0);
        CHECK_FALSE(in_region(g.x, g.y, RegionSpec{1.0, cfg.n}));
        auto l = detail::sample_local_pair(rng, cfg, 1.0);
        CHECK(in_region(l.x, l.y, RegionSpec{1.0, cfg.n}));
        double sep = 0.0;
        for (int j = 0; j < cfg.n; ++j) {
            double u = l.x[static_cast<std::size_t>(j)] - l.y[static_cast<std::size_t>(j)];
            sep += u * u;
        }
        CHECK(std::sqrt(sep) >= cfg.min_sep);
    }
}

TEST_CASE("certificate structure and determinism") {
    CertifyConfig cfg;
    cfg.n = 1;
    cfg.calibration_points = 20;
    BoundCertificate c1 = certify("Mbeta", cfg);
    BoundCertificate c2 = certify("Mbeta", cfg);
    CHECK(c1.calibrated_C == c2.calibrated_C);  // bitwise reproducible
    CHECK(c1.worst_ratio == c2.worst_ratio);
    CHECK(c1.estimate_id == "Mbeta");
    CHECK(c1.calibration_count > 0);
    CHECK(c1.verification_count > c1.calibration_count);
    CHECK(c1.verification_seed == c1.calibration_seed + 1);
    CHECK(c1.pass == (c1.worst_ratio <= c1.calibrated_C));
    CHECK(c1.calibrated_C > 0.0);
    CHECK(c1.disclaimer == "numerical evidence only");
}

TEST_CASE("cheap estimates pass with reduced sampling") {
    CertifyConfig cfg;
    cfg.n = 1;
    cfg.calibration_points = 40;
    SUBCASE("derivT") {
        cfg.alpha = {1};
        BoundCertificate c = certify("derivT", cfg);
        CHECK(c.pass);
    }
    SUBCASE("Lbeta6") {
        cfg.calibration_points = 10;
        BoundCertificate c = certify("Lbeta6", cfg);
        CHECK(c.pass);
        CHECK(c.worst_ratio >= 0.0);
    }
}

TEST_CASE("unknown estimate id is rejected") {
    CertifyConfig cfg;
    CHECK_THROWS(certify("no-such-estimate", cfg));
}

TEST_SUITE_END();
