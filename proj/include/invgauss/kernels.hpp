#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "invgauss/hermite.hpp"
#include "invgauss/multi_index.hpp"

namespace invgauss {

struct KernelQuery {
    int n = 1;
    double t = 1.0;
    std::vector<double> x;
    std::vector<double> y;

    void validate() const {
        if (!(t > 0.0)) throw std::invalid_argument("KernelQuery: t must be > 0");
        if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
            throw std::invalid_argument("KernelQuery: dimension mismatch");
    }
};

namespace detail {
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline double norm_sq(const std::vector<double>& a) { return dot(a, a); }
}  // namespace detail

// sigma(t) = 1 - e^{-2t}, evaluated stably for small t.
inline double mehler_sigma(double t) { return -std::expm1(-2.0 * t); }

// T_t(x,y) = e^{-nt} pi^{-n/2} sigma^{-n/2} exp(-|x - e^{-t} y|^2 / sigma).
inline double mehler_kernel(const KernelQuery& q) {
    q.validate();
    const double r = std::exp(-q.t);
    const double sig = mehler_sigma(q.t);
    double d2 = 0.0;
    for (int i = 0; i < q.n; ++i) {
        double u = q.x[static_cast<std::size_t>(i)] - r * q.y[static_cast<std::size_t>(i)];
        d2 += u * u;
    }
    return std::exp(-q.n * q.t - d2 / sig) * std::pow(M_PI * sig, -0.5 * q.n);
}

// d^l/dx^l T_t(x,y)
//   = (-1)^{|l|} e^{-nt} pi^{-n/2} sigma^{-(n+|l|)/2} Htilde_l((x - e^{-t}y)/sqrt(sigma)).
inline double mehler_dx(const MultiIndex& l, const KernelQuery& q) {
    q.validate();
    if (static_cast<int>(l.size()) != q.n) throw std::invalid_argument("mehler_dx: dimension mismatch");
    const double r = std::exp(-q.t);
    const double sig = mehler_sigma(q.t);
    const double rt = std::sqrt(sig);
    std::vector<double> arg(static_cast<std::size_t>(q.n));
    for (int i = 0; i < q.n; ++i)
        arg[static_cast<std::size_t>(i)] =
            (q.x[static_cast<std::size_t>(i)] - r * q.y[static_cast<std::size_t>(i)]) / rt;
    const int L = mi_order(l);
    double sign = (L % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-q.n * q.t) * std::pow(M_PI, -0.5 * q.n) *
           std::pow(sig, -0.5 * (q.n + L)) * hermite_tilde(l, arg);
}

// d/dt T_t(x,y), closed form.
inline double mehler_dt(const KernelQuery& q) {
    q.validate();
    const double e2 = std::exp(-2.0 * q.t);
    const double sig = mehler_sigma(q.t);
    double d2 = 0.0;
    const double r = std::exp(-q.t);
    for (int i = 0; i < q.n; ++i) {
        double u = q.x[static_cast<std::size_t>(i)] - r * q.y[static_cast<std::size_t>(i)];
        d2 += u * u;
    }
    const double x2 = detail::norm_sq(q.x);
    const double y2 = detail::norm_sq(q.y);
    double factor = -q.n + e2 * (y2 - x2) - sig * x2 + (1.0 + e2) * d2 / sig;
    return factor * mehler_kernel(q) / sig;
}

// T_t^{Abar}(x,y) = e^{nt} T_t(x,y).
inline double tbar_kernel(const KernelQuery& q) {
    return std::exp(q.n * q.t) * mehler_kernel(q);
}

// delta_x^l T_t^{Abar}(x,y)
//   = (-1)^{|l|} e^{|y|^2-|x|^2} 2^{-|l|} pi^{-n/2} sigma^{-(n+|l|)/2} e^{-|l|t}
//     Htilde_l((y - e^{-t}x)/sqrt(sigma)).
inline double delta_dx_tbar(const MultiIndex& l, const KernelQuery& q) {
    q.validate();
    if (static_cast<int>(l.size()) != q.n) throw std::invalid_argument("delta_dx_tbar: dimension mismatch");
    const double r = std::exp(-q.t);
    const double sig = mehler_sigma(q.t);
    const double rt = std::sqrt(sig);
    std::vector<double> arg(static_cast<std::size_t>(q.n));
    for (int i = 0; i < q.n; ++i)
        arg[static_cast<std::size_t>(i)] =
            (q.y[static_cast<std::size_t>(i)] - r * q.x[static_cast<std::size_t>(i)]) / rt;
    const int L = mi_order(l);
    double sign = (L % 2 == 0) ? 1.0 : -1.0;
    const double x2 = detail::norm_sq(q.x);
    const double y2 = detail::norm_sq(q.y);
    return sign * std::exp(y2 - x2 - L * q.t) * std::pow(2.0, -L) *
           std::pow(M_PI, -0.5 * q.n) * std::pow(sig, -0.5 * (q.n + L)) * hermite_tilde(l, arg);
}

// d/dt W_t(z) = W_t(z) (|z|^2/(2t^2) - n/(2t)).
inline double classical_heat_dt(double t, const std::vector<double>& z) {
    if (!(t > 0.0)) throw std::invalid_argument("classical_heat_dt: t must be > 0");
    const int n = static_cast<int>(z.size());
    const double z2 = detail::norm_sq(z);
    double w = std::pow(2.0 * M_PI * t, -0.5 * n) * std::exp(-z2 / (2.0 * t));
    return w * (z2 / (2.0 * t * t) - 0.5 * n / t);
}

// d^l W_t(z) with W_t(z) = (2 pi t)^{-n/2} e^{-|z|^2/(2t)}:
//   (-1)^{|l|} (2 pi t)^{-n/2} (2t)^{-|l|/2} Htilde_l(z / sqrt(2t)).
inline double classical_heat(const MultiIndex& l, double t, const std::vector<double>& z) {
    if (!(t > 0.0)) throw std::invalid_argument("classical_heat: t must be > 0");
    const int n = static_cast<int>(z.size());
    if (static_cast<int>(l.size()) != n) throw std::invalid_argument("classical_heat: dimension mismatch");
    const double s = std::sqrt(2.0 * t);
    std::vector<double> arg(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) arg[i] = z[i] / s;
    const int L = mi_order(l);
    double sign = (L % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(2.0 * M_PI * t, -0.5 * n) * std::pow(s, -L) * hermite_tilde(l, arg);
}

}  // namespace invgauss
