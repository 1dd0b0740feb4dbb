#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "invgauss/expansion.hpp"
#include "invgauss/multi_index.hpp"

namespace invgauss {

// A Htilde_k = (|k| + n) Htilde_k ; the Abar variant has eigenvalue |k|.
inline HermiteExpansion generator_apply(const HermiteExpansion& e, bool bar = false) {
    HermiteExpansion out = e;
    for (std::size_t i = 0; i < out.coeff.size(); ++i) {
        int lam = mi_order(out.indices[i]) + (bar ? 0 : out.dim);
        out.coeff[i] *= static_cast<double>(lam);
    }
    return out;
}

// T_t: c_k -> e^{-(|k|+n)t} c_k.
inline HermiteExpansion heat_apply(const HermiteExpansion& e, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_apply: t must be >= 0");
    HermiteExpansion out = e;
    for (std::size_t i = 0; i < out.coeff.size(); ++i)
        out.coeff[i] *= std::exp(-(mi_order(out.indices[i]) + out.dim) * t);
    return out;
}

// A^{-beta}: c_k -> (|k|+n)^{-beta} c_k.
inline HermiteExpansion neg_power_apply(const HermiteExpansion& e, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("neg_power_apply: beta must be > 0");
    HermiteExpansion out = e;
    for (std::size_t i = 0; i < out.coeff.size(); ++i)
        out.coeff[i] *= std::pow(static_cast<double>(mi_order(out.indices[i]) + out.dim), -beta);
    return out;
}

// R_alpha: c_k Htilde_k -> (-1)^{|a|} (|k|+n)^{-|a|/2} c_k Htilde_{k+a}.
// Output degree cap K + |a|.
inline HermiteExpansion riesz_apply(const HermiteExpansion& e, const MultiIndex& a) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("riesz_apply: alpha = 0 rejected");
    if (static_cast<int>(a.size()) != e.dim) throw std::invalid_argument("riesz_apply: dimension mismatch");
    const int A = mi_order(a);
    HermiteExpansion out(e.dim, e.degree_cap + A);
    const double sign = (A % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < e.coeff.size(); ++i) {
        if (e.coeff[i] == cplx(0.0)) continue;
        double lam = static_cast<double>(mi_order(e.indices[i]) + e.dim);
        out.at(mi_add(e.indices[i], a)) += sign * std::pow(lam, -0.5 * A) * e.coeff[i];
    }
    return out;
}

// delta_i: c_k Htilde_k -> -k_i c_k Htilde_{k - e_i} (terms with k_i = 0 vanish).
inline HermiteExpansion delta_apply(const HermiteExpansion& e, int axis) {
    if (axis < 0 || axis >= e.dim) throw std::invalid_argument("delta_apply: axis out of range");
    HermiteExpansion out(e.dim, std::max(0, e.degree_cap - 1));
    for (std::size_t i = 0; i < e.coeff.size(); ++i) {
        int ki = e.indices[i][static_cast<std::size_t>(axis)];
        if (ki == 0 || e.coeff[i] == cplx(0.0)) continue;
        MultiIndex k = e.indices[i];
        k[static_cast<std::size_t>(axis)] -= 1;
        out.at(k) += -static_cast<double>(ki) * e.coeff[i];
    }
    return out;
}

// Rbar_alpha: for k >= alpha componentwise and k != 0,
//   c_k Htilde_k -> (-1)^{|a|} |k|^{-|a|/2} prod_i k_i!/(k_i - a_i)! c_k Htilde_{k-a};
// all other k map to 0.  The Gamma ratio is an exact integer falling factorial.
inline HermiteExpansion riesz_bar_apply(const HermiteExpansion& e, const MultiIndex& a) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("riesz_bar_apply: alpha = 0 rejected");
    if (static_cast<int>(a.size()) != e.dim)
        throw std::invalid_argument("riesz_bar_apply: dimension mismatch");
    const int A = mi_order(a);
    HermiteExpansion out(e.dim, std::max(0, e.degree_cap - A));
    const double sign = (A % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < e.coeff.size(); ++i) {
        const MultiIndex& k = e.indices[i];
        if (e.coeff[i] == cplx(0.0)) continue;
        if (mi_is_zero(k) || !mi_geq(k, a)) continue;
        double fall = 1.0;  // prod_i k_i (k_i-1) ... (k_i - a_i + 1), exact for k_i <= 60
        for (std::size_t j = 0; j < k.size(); ++j)
            for (int m = 0; m < a[j]; ++m) fall *= static_cast<double>(k[j] - m);
        double lam = static_cast<double>(mi_order(k));
        out.at(mi_sub(k, a)) += sign * std::pow(lam, -0.5 * A) * fall * e.coeff[i];
    }
    return out;
}

// A^{i gamma}: c_k -> (|k|+n)^{i gamma} c_k.
inline HermiteExpansion imaginary_power_apply(const HermiteExpansion& e, double gamma) {
    if (gamma == 0.0) throw std::invalid_argument("imaginary_power_apply: gamma = 0 rejected");
    HermiteExpansion out = e;
    for (std::size_t i = 0; i < out.coeff.size(); ++i) {
        double lnlam = std::log(static_cast<double>(mi_order(out.indices[i]) + out.dim));
        out.coeff[i] *= cplx(std::cos(gamma * lnlam), std::sin(gamma * lnlam));
    }
    return out;
}

// Pi_0: zero the constant coefficient; idempotent.
inline HermiteExpansion project_L0(const HermiteExpansion& e) {
    HermiteExpansion out = e;
    out.coeff[0] = 0.0;  // graded-lex position 0 is k = 0
    return out;
}

}  // namespace invgauss
