#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "invgauss/multi_index.hpp"

namespace invgauss {

// Physicists' Hermite polynomial H_m(z) by the three-term recurrence
// H_{m+1} = 2 z H_m - 2 m H_{m-1},  H_0 = 1, H_1 = 2z.
inline double hermite_poly(int m, double z) {
    if (m < 0) throw std::invalid_argument("hermite_poly: m < 0");
    double p0 = 1.0;
    if (m == 0) return p0;
    double p1 = 2.0 * z;
    for (int c = 1; c < m; ++c) {
        double p2 = 2.0 * z * p1 - 2.0 * c * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// All of H_0(z) .. H_m(z).
inline std::vector<double> hermite_poly_all(int m, double z) {
    std::vector<double> h(static_cast<std::size_t>(m) + 1);
    h[0] = 1.0;
    if (m >= 1) h[1] = 2.0 * z;
    for (int c = 1; c < m; ++c)
        h[static_cast<std::size_t>(c) + 1] =
            2.0 * z * h[static_cast<std::size_t>(c)] - 2.0 * c * h[static_cast<std::size_t>(c) - 1];
    return h;
}

// Half-weighted value h_m(z) = H_m(z) e^{-z^2/2}, computed by running the
// recurrence on the weighted quantities.  The recurrence is linear, so the
// weight factors through; this keeps intermediates bounded (growth estimate
// |H_m(z)| <= 2 sqrt(m!) 2^{m/2} e^{z^2/2}) for large |z|.
inline double hermite_half_weighted(int m, double z) {
    if (m < 0) throw std::invalid_argument("hermite_half_weighted: m < 0");
    double w = std::exp(-0.5 * z * z);
    double p0 = w;
    if (m == 0) return p0;
    double p1 = 2.0 * z * w;
    for (int c = 1; c < m; ++c) {
        double p2 = 2.0 * z * p1 - 2.0 * c * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// One-dimensional weighted Hermite function Htilde_m(z) = e^{-z^2} H_m(z).
inline double hermite_tilde_1d(int m, double z) {
    return hermite_half_weighted(m, z) * std::exp(-0.5 * z * z);
}

// Htilde_k(x) = e^{-|x|^2} H_k(x) = prod_i e^{-x_i^2} H_{k_i}(x_i).
inline double hermite_tilde(const MultiIndex& k, const std::vector<double>& x) {
    if (k.size() != x.size()) throw std::invalid_argument("hermite_tilde: dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) v *= hermite_tilde_1d(k[i], x[i]);
    return v;
}

// Unweighted tensor polynomial H_k(x) = prod_i H_{k_i}(x_i).
inline double hermite_poly_tensor(const MultiIndex& k, const std::vector<double>& x) {
    if (k.size() != x.size()) throw std::invalid_argument("hermite_poly_tensor: dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) v *= hermite_poly(k[i], x[i]);
    return v;
}

// ||Htilde_k||_{L^2(gamma_{-1})} = pi^{n/4}... more precisely, the squared
// norm against the measure pi^{n/2} e^{|x|^2} dx is pi^n 2^{|k|} prod k_i!.
inline double hermite_tilde_norm_sq(const MultiIndex& k, int n) {
    if (static_cast<int>(k.size()) != n)
        throw std::invalid_argument("hermite_tilde_norm_sq: dimension mismatch");
    double v = std::pow(M_PI, n) * std::pow(2.0, mi_order(k));
    for (int c : k) v *= std::tgamma(static_cast<double>(c) + 1.0);
    return v;
}

inline double hermite_tilde_norm(const MultiIndex& k, int n) {
    return std::sqrt(hermite_tilde_norm_sq(k, n));
}

// Monomial coefficients of H_m: H_m(z) = sum_j coeff[j] z^j.
inline std::vector<double> hermite_poly_coeffs(int m) {
    std::vector<std::vector<double>> h(static_cast<std::size_t>(m) + 1);
    h[0] = {1.0};
    if (m >= 1) h[1] = {0.0, 2.0};
    for (int c = 1; c < m; ++c) {
        const auto& hc = h[static_cast<std::size_t>(c)];
        const auto& hp = h[static_cast<std::size_t>(c) - 1];
        std::vector<double> next(static_cast<std::size_t>(c) + 2, 0.0);
        for (std::size_t j = 0; j < hc.size(); ++j) next[j + 1] += 2.0 * hc[j];
        for (std::size_t j = 0; j < hp.size(); ++j) next[j] -= 2.0 * c * hp[j];
        h[static_cast<std::size_t>(c) + 1] = std::move(next);
    }
    return h[static_cast<std::size_t>(m)];
}

}  // namespace invgauss
