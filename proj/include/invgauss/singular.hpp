#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "invgauss/gamma.hpp"
#include "invgauss/kernels.hpp"
#include "invgauss/multi_index.hpp"
#include "invgauss/quadrature.hpp"
#include "invgauss/regions.hpp"

namespace invgauss {

// Divergence-at-diagonal signal; callers (the PV engine) branch on it.
struct KernelDivergence : std::runtime_error {
    explicit KernelDivergence(const std::string& what) : std::runtime_error(what) {}
};

// Quantities entering the global kernel bounds.
struct GlobalBoundParams {
    double a;       // |x|^2 + |y|^2
    double b;       // 2 <x, y>
    double s0;      // 2 sqrt(a^2-b^2) / (a + sqrt(a^2-b^2))
    double u0;      // (|y|^2-|x|^2)/2 + |x+y||x-y|/2
    double theta;   // angle between x and y (0 for n = 1)

    GlobalBoundParams(const std::vector<double>& x, const std::vector<double>& y) {
        double xx = 0.0, yy = 0.0, xy = 0.0, dp = 0.0, dm = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            xx += x[i] * x[i];
            yy += y[i] * y[i];
            xy += x[i] * y[i];
            dp += (x[i] + y[i]) * (x[i] + y[i]);
            dm += (x[i] - y[i]) * (x[i] - y[i]);
        }
        a = xx + yy;
        b = 2.0 * xy;
        double disc = std::sqrt(std::max(0.0, a * a - b * b));
        s0 = (a + disc > 0.0) ? 2.0 * disc / (a + disc) : 2.0;
        u0 = 0.5 * (yy - xx) + 0.5 * std::sqrt(dp) * std::sqrt(dm);
        theta = angle(x, y);
    }
};

namespace detail {

inline std::vector<double> vsub(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

inline double vdist(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = x[i] - y[i];
        s += u * u;
    }
    return std::sqrt(s);
}

// Breakpoints surrounding the time-integrand peak near t ~ d^2/(n+|l|),
// clipped to (0, T); guards the adaptive rule against missing a narrow spike.
inline std::vector<double> time_breakpoints(double d, int scale, double T) {
    double q = std::max(1e-300, d * d / std::max(1, scale));
    std::vector<double> b = {0.0, q / 64.0, q / 16.0, q / 4.0, q, 4.0 * q, 1.0, 5.0, T};
    std::vector<double> out;
    for (double v : b) {
        v = std::min(v, T);
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    if (out.back() < T) out.push_back(T);
    return out;
}

// Same scheme in the s = 1 - e^{-2t} variable on (0, smax).
inline std::vector<double> s_breakpoints(double d, int scale, double smax = 0.5) {
    double q = std::min(0.25 * smax, std::max(1e-300, d * d / std::max(1, scale)));
    std::vector<double> b = {0.0, q / 64.0, q / 16.0, q / 4.0, q, 4.0 * q, smax};
    std::vector<double> out;
    for (double v : b) {
        v = std::min(v, smax);
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    if (out.back() < smax) out.push_back(smax);
    return out;
}

// Tail breakpoints in t on (t0, T).
inline std::vector<double> t_tail_breakpoints(double t0, double T) {
    std::vector<double> out = {t0};
    for (double v : {1.0, 5.0, T})
        if (v > out.back() && v <= T) out.push_back(v);
    if (out.back() < T) out.push_back(T);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical (Euclidean) kernels
// ---------------------------------------------------------------------------

// R_{e^i} closed form: -sqrt(2) Gamma((n+1)/2) pi^{-(n+1)/2} z_i / |z|^{n+1}.
inline double euclid_riesz_first(int axis, const std::vector<double>& z) {
    const int n = static_cast<int>(z.size());
    if (axis < 0 || axis >= n) throw std::invalid_argument("euclid_riesz_first: axis out of range");
    double z2 = 0.0;
    for (double c : z) z2 += c * c;
    if (z2 == 0.0) throw KernelDivergence("euclid_riesz_first: z = 0");
    double zn = std::pow(std::sqrt(z2), n + 1);
    return -std::sqrt(2.0) * std::tgamma(0.5 * (n + 1)) * std::pow(M_PI, -0.5 * (n + 1)) *
           z[static_cast<std::size_t>(axis)] / zn;
}

// Classical Riesz kernel
//   RR_alpha(z) = Gamma(|a|/2)^{-1} int_0^infty d^a W_t(z) t^{|a|/2-1} dt.
// The substitution v = (2t)^{-1/2} turns the improper time integral into
//   (-1)^{|a|} pi^{-n/2} 2^{1-|a|/2} Gamma(|a|/2)^{-1} int_0^infty v^{n-1} Htilde_a(v z) dv,
// and with u = v |z| the remaining integral is a finite sum of Gaussian
// moments: |z|^{-n} sum_m C_m zhat^m Gamma((n+|m|)/2)/2, where H_a(w) =
// sum_m C_m w^m.  Exact up to rounding.
inline double classical_riesz_kernel(const MultiIndex& a, const std::vector<double>& z) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("classical_riesz_kernel: alpha = 0");
    const int n = static_cast<int>(z.size());
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("classical_riesz_kernel: dimension mismatch");
    double d = 0.0;
    for (double c : z) d += c * c;
    d = std::sqrt(d);
    if (d == 0.0) throw KernelDivergence("classical_riesz_kernel: z = 0");
    const int A = mi_order(a);
    std::vector<std::vector<double>> cf(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) cf[i] = hermite_poly_coeffs(a[i]);
    // odometer over the tensor monomials of H_a
    std::vector<std::size_t> idx(a.size(), 0);
    double I = 0.0;
    while (true) {
        double C = 1.0;
        int order = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            C *= cf[i][idx[i]] * std::pow(z[i] / d, static_cast<double>(idx[i]));
            order += static_cast<int>(idx[i]);
        }
        if (C != 0.0) I += C * 0.5 * std::tgamma(0.5 * (n + order));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == cf[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    I *= std::pow(d, -n);
    double sign = (A % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(M_PI, -0.5 * n) * std::pow(2.0, 1.0 - 0.5 * A) /
           std::tgamma(0.5 * A) * I;
}

inline double classical_riesz_kernel(const MultiIndex& a, const std::vector<double>& x,
                                     const std::vector<double>& y) {
    return classical_riesz_kernel(a, detail::vsub(x, y));
}

// Classical imaginary-power kernel, closed form:
//   K_gamma(z) = -i gamma (2 pi)^{-n/2} (|z|^2/2)^{-n/2 - i gamma}
//                Gamma(n/2 + i gamma) / Gamma(1 - i gamma).
inline cplx classical_imaginary_kernel(double gamma, const std::vector<double>& z) {
    if (gamma == 0.0) throw std::invalid_argument("classical_imaginary_kernel: gamma = 0");
    const int n = static_cast<int>(z.size());
    double z2 = 0.0;
    for (double c : z) z2 += c * c;
    if (z2 == 0.0) throw KernelDivergence("classical_imaginary_kernel: z = 0");
    const double la = std::log(0.5 * z2);
    cplx apow = std::exp(cplx(-0.5 * n * la, -gamma * la));
    return -cplx(0.0, gamma) * std::pow(2.0 * M_PI, -0.5 * n) * apow *
           cgamma(cplx(0.5 * n, gamma)) / cgamma(cplx(1.0, -gamma));
}

// ---------------------------------------------------------------------------
// Inverse Gaussian kernels
// ---------------------------------------------------------------------------

struct SingularKernelOptions {
    double tol = 1e-9;
    double local_beta = 1.0;  // hybrid switch: inside N_beta use classical + difference
    double t_cut = 40.0;      // exp(-t_cut) below double noise for unit decay rates
};

// R_alpha(x,y) = Gamma(|a|/2)^{-1} int_0^infty d_x^a T_t(x,y) t^{|a|/2-1} dt.
// Outside N_beta: direct quadrature in s = 1 - e^{-2t}.  Inside N_beta:
// classical part RR_alpha(x-y) plus the difference integral
// int d^a (T_t - W_t) t^{|a|/2-1} dt (controls the near-diagonal cancellation),
// with the classical far-time remainder restored analytically.
inline double riesz_kernel(const MultiIndex& a, const std::vector<double>& x,
                           const std::vector<double>& y,
                           const SingularKernelOptions& opt = {}) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("riesz_kernel: alpha = 0");
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(a.size()) != n || y.size() != x.size())
        throw std::invalid_argument("riesz_kernel: dimension mismatch");
    const double d = detail::vdist(x, y);
    if (d == 0.0) throw KernelDivergence("riesz_kernel: x = y");
    const int A = mi_order(a);
    const double pref = 1.0 / std::tgamma(0.5 * A);

    if (in_region(x, y, RegionSpec{opt.local_beta, n})) {
        const double T = opt.t_cut;
        const std::vector<double> z = detail::vsub(x, y);
        auto diff = [&](double t) -> double {
            KernelQuery q{n, t, x, y};
            return (mehler_dx(a, q) - classical_heat(a, t, z)) * std::pow(t, 0.5 * A - 1.0);
        };
        double I = integrate_segments(diff, detail::time_breakpoints(d, n + A, T), opt.tol);
        // classical remainder over (T, infinity) in the v = (2t)^{-1/2} variable
        auto wrem = [&](double v) -> double {
            std::vector<double> arg(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) arg[i] = v * z[i];
            return std::pow(v, n - 1) * hermite_tilde(a, arg);
        };
        double signA = (A % 2 == 0) ? 1.0 : -1.0;
        double wtail = signA * std::pow(M_PI, -0.5 * n) * std::pow(2.0, 1.0 - 0.5 * A) *
                       adaptive_gk(wrem, 0.0, 1.0 / std::sqrt(2.0 * T), opt.tol);
        return classical_riesz_kernel(a, z) + pref * (I - wtail);
    }

    // global: head in s = 1 - e^{-2t} on (0, 1/2] (resolves the s^{-(n+A)/2}
    // near-diagonal spike), then plain t-quadrature on the exponential tail
    double signA = (A % 2 == 0) ? 1.0 : -1.0;
    auto integrand = [&](double s) -> double {
        double rs = std::sqrt(1.0 - s);
        double t = -0.5 * std::log1p(-s);
        std::vector<double> arg(x.size());
        double a2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            arg[i] = (x[i] - rs * y[i]) / std::sqrt(s);
            a2 += arg[i] * arg[i];
        }
        if (a2 > 1400.0) return 0.0;  // Gaussian factor below double underflow
        return std::pow(1.0 - s, 0.5 * n - 1.0) * std::pow(s, -0.5 * (n + A)) *
               hermite_tilde(a, arg) * std::pow(t, 0.5 * A - 1.0) * 0.5;
    };
    const double s0 = 0.5;
    const double t0 = -0.5 * std::log1p(-s0);
    double Ihead = integrate_segments(integrand, detail::s_breakpoints(d, n + A, s0), opt.tol);
    auto tail = [&](double t) -> double {
        KernelQuery q{n, t, x, y};
        return mehler_dx(a, q) * std::pow(t, 0.5 * A - 1.0);
    };
    double Itail = integrate_segments(tail, detail::t_tail_breakpoints(t0, opt.t_cut), opt.tol);
    return pref * (signA * std::pow(M_PI, -0.5 * n) * Ihead + Itail);
}

// M_beta(x,y) = Gamma(beta)^{-1} int_0^infty T_t(x,y) t^{beta-1} dt, computed
// in the substituted s-form.
inline double neg_power_kernel(double beta, const std::vector<double>& x,
                               const std::vector<double>& y,
                               const SingularKernelOptions& opt = {}) {
    if (!(beta > 0.0)) throw std::invalid_argument("neg_power_kernel: beta must be > 0");
    const int n = static_cast<int>(x.size());
    if (y.size() != x.size()) throw std::invalid_argument("neg_power_kernel: dimension mismatch");
    const double d = detail::vdist(x, y);
    if (d == 0.0 && beta <= 0.5 * n) throw KernelDivergence("neg_power_kernel: divergent at x = y");
    double x2 = 0.0, y2 = 0.0;
    for (int i = 0; i < n; ++i) {
        x2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        y2 += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    }
    auto integrand = [&](double s) -> double {
        double rs = std::sqrt(1.0 - s);
        double u2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double u = y[static_cast<std::size_t>(i)] - rs * x[static_cast<std::size_t>(i)];
            u2 += u * u;
        }
        if (u2 / s > 1400.0) return 0.0;  // Gaussian factor below double underflow
        double lg = -std::log1p(-s);  // - log(1 - s) > 0
        return std::exp(-u2 / s) * std::pow(s, -0.5 * n) * std::pow(1.0 - s, 0.5 * n - 1.0) *
               std::pow(lg, beta - 1.0);
    };
    const double s0 = 0.5;
    const double t0 = -0.5 * std::log1p(-s0);
    double Ihead =
        integrate_segments(integrand, detail::s_breakpoints(std::max(d, 1e-8), n, s0), opt.tol);
    auto tail = [&](double t) -> double {
        KernelQuery q{n, t, x, y};
        return mehler_kernel(q) * std::pow(t, beta - 1.0);
    };
    double Itail = integrate_segments(tail, detail::t_tail_breakpoints(t0, opt.t_cut + 10.0), opt.tol);
    return (std::pow(M_PI, -0.5 * n) * std::pow(2.0, -beta) * std::exp(y2 - x2) * Ihead + Itail) /
           std::tgamma(beta);
}

// Kbar_beta(x,y) = Gamma(beta)^{-1} int_0^infty (Tbar_t(x,y) - pi^{-n/2} e^{-|x|^2}) t^{beta-1} dt.
// The subtracted term is the exact ground-state kernel, so the integrand
// decays like e^{-t}.
inline double kbar_kernel(double beta, const std::vector<double>& x,
                          const std::vector<double>& y,
                          const SingularKernelOptions& opt = {}) {
    if (!(beta > 0.0)) throw std::invalid_argument("kbar_kernel: beta must be > 0");
    const int n = static_cast<int>(x.size());
    if (y.size() != x.size()) throw std::invalid_argument("kbar_kernel: dimension mismatch");
    const double d = detail::vdist(x, y);
    if (d == 0.0 && beta <= 0.5 * n) throw KernelDivergence("kbar_kernel: divergent at x = y");
    double x2 = 0.0;
    for (double c : x) x2 += c * c;
    const double ground = std::pow(M_PI, -0.5 * n) * std::exp(-x2);
    auto integrand = [&](double t) -> double {
        KernelQuery q{n, t, x, y};
        return (tbar_kernel(q) - ground) * std::pow(t, beta - 1.0);
    };
    double I = integrate_segments(integrand, detail::time_breakpoints(std::max(d, 1e-8), n, opt.t_cut),
                                  opt.tol);
    return I / std::tgamma(beta);
}

// Local comparison term for Rbar_alpha:
//   J(x,y) = 2^{-|a|} e^{|y|^2-|x|^2} RR_alpha(y - x).
inline double riesz_bar_comparison(const MultiIndex& a, const std::vector<double>& x,
                                   const std::vector<double>& y) {
    double x2 = 0.0, y2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x2 += x[i] * x[i];
        y2 += y[i] * y[i];
    }
    return std::pow(2.0, -mi_order(a)) * std::exp(y2 - x2) *
           classical_riesz_kernel(a, detail::vsub(y, x));
}

// Rbar_alpha(x,y) = Gamma(|a|/2)^{-1} int_0^infty delta_x^a Tbar_t(x,y) t^{|a|/2-1} dt
// (decay e^{-|a| t} is automatic).
inline double riesz_bar_kernel(const MultiIndex& a, const std::vector<double>& x,
                               const std::vector<double>& y,
                               const SingularKernelOptions& opt = {}) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("riesz_bar_kernel: alpha = 0");
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(a.size()) != n || y.size() != x.size())
        throw std::invalid_argument("riesz_bar_kernel: dimension mismatch");
    const double d = detail::vdist(x, y);
    if (d == 0.0) throw KernelDivergence("riesz_bar_kernel: x = y");
    const int A = mi_order(a);
    const double pref = 1.0 / std::tgamma(0.5 * A);

    if (in_region(x, y, RegionSpec{opt.local_beta, n})) {
        // local: J(x,y) plus the difference with the matched classical part
        //   E d^a W_t(y-x),  E = 2^{-|a|} e^{|y|^2-|x|^2},
        // whose near-diagonal spike cancels against delta^a Tbar_t.
        const double T = opt.t_cut;
        const std::vector<double> zb = detail::vsub(y, x);
        double x2 = 0.0, y2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x2 += x[i] * x[i];
            y2 += y[i] * y[i];
        }
        const double E = std::pow(2.0, -A) * std::exp(y2 - x2);
        auto diff = [&](double t) -> double {
            KernelQuery q{n, t, x, y};
            return (delta_dx_tbar(a, q) - E * classical_heat(a, t, zb)) *
                   std::pow(t, 0.5 * A - 1.0);
        };
        double I = integrate_segments(diff, detail::time_breakpoints(d, n + A, T), opt.tol);
        auto wrem = [&](double v) -> double {
            std::vector<double> arg(zb.size());
            for (std::size_t i = 0; i < zb.size(); ++i) arg[i] = v * zb[i];
            return std::pow(v, n - 1) * hermite_tilde(a, arg);
        };
        double signA = (A % 2 == 0) ? 1.0 : -1.0;
        double wtail = signA * std::pow(M_PI, -0.5 * n) * std::pow(2.0, 1.0 - 0.5 * A) *
                       adaptive_gk(wrem, 0.0, 1.0 / std::sqrt(2.0 * T), opt.tol);
        return riesz_bar_comparison(a, x, y) + pref * (I - E * wtail);
    }

    auto integrand = [&](double t) -> double {
        KernelQuery q{n, t, x, y};
        return delta_dx_tbar(a, q) * std::pow(t, 0.5 * A - 1.0);
    };
    double I = integrate_segments(integrand, detail::time_breakpoints(d, n + A, opt.t_cut), opt.tol);
    return pref * I;
}

// phi_gamma(t) = t^{-i gamma} / Gamma(1 - i gamma).
inline cplx phi_gamma(double gamma, double t) {
    double lt = std::log(t);
    return cplx(std::cos(gamma * lt), -std::sin(gamma * lt)) / cgamma(cplx(1.0, -gamma));
}

// K_gamma^A(x,y) = -int_0^infty phi_gamma(t) dT_t/dt (x,y) dt.
// Outside N_beta: direct quadrature (the Mehler kernel relaxes like e^{-nt},
// so the far tail is exponentially certified).  Inside N_beta: difference
// with the classical heat kernel plus the closed-form K_gamma(x-y); the slow
// algebraic far tail of the classical part is restored via the incomplete
// gamma series.
inline cplx imaginary_kernel(double gamma, const std::vector<double>& x,
                             const std::vector<double>& y,
                             const SingularKernelOptions& opt = {}) {
    if (gamma == 0.0) throw std::invalid_argument("imaginary_kernel: gamma = 0");
    const int n = static_cast<int>(x.size());
    if (y.size() != x.size()) throw std::invalid_argument("imaginary_kernel: dimension mismatch");
    const double d = detail::vdist(x, y);
    if (d == 0.0) throw KernelDivergence("imaginary_kernel: x = y");
    const double T = std::max(opt.t_cut, 45.0);

    if (in_region(x, y, RegionSpec{opt.local_beta, n})) {
        const std::vector<double> z = detail::vsub(x, y);
        auto diff = [&](double t) -> cplx {
            KernelQuery q{n, t, x, y};
            return phi_gamma(gamma, t) * (mehler_dt(q) - classical_heat_dt(t, z));
        };
        cplx I = integrate_segments(diff, detail::time_breakpoints(d, n + 2, T), opt.tol);
        // W far-tail: int_T^infty phi_gamma dW/dt dt via the incomplete gamma series
        double z2 = d * d;
        double a = 0.5 * z2;
        double WT = std::pow(2.0 * M_PI * T, -0.5 * n) * std::exp(-a / T);
        cplx Tpow = std::exp(cplx(0.0, -gamma * std::log(T)));
        double la = std::log(a);
        cplx apow = std::exp(cplx(-0.5 * n * la, -gamma * la));
        cplx wtail = (-Tpow * WT + cplx(0.0, gamma) * std::pow(2.0 * M_PI, -0.5 * n) * apow *
                                       cgamma_lower(cplx(0.5 * n, gamma), a / T)) /
                     cgamma(cplx(1.0, -gamma));
        return classical_imaginary_kernel(gamma, z) - I + wtail;
    }

    auto integrand = [&](double t) -> cplx {
        KernelQuery q{n, t, x, y};
        return phi_gamma(gamma, t) * mehler_dt(q);
    };
    return -integrate_segments(integrand, detail::time_breakpoints(d, n + 2, T), opt.tol);
}

// alpha(eps) = (eps^2/4)^{-i gamma} Gamma(n/2 + i gamma) / (Gamma(n/2) Gamma(1 - i gamma)).
inline cplx alpha_eps(double gamma, int n, double eps) {
    if (gamma == 0.0) throw std::invalid_argument("alpha_eps: gamma = 0");
    if (!(eps > 0.0)) throw std::invalid_argument("alpha_eps: eps must be > 0");
    double le = std::log(0.25 * eps * eps);
    cplx epow(std::cos(gamma * le), -std::sin(gamma * le));
    return epow * cgamma(cplx(0.5 * n, gamma)) /
           (std::tgamma(0.5 * n) * cgamma(cplx(1.0, -gamma)));
}

// Defining-integral oracle for alpha(eps):
//   Gamma(n/2)^{-1} int_0^infty phi_gamma(eps^2/(4u)) e^{-u} u^{n/2-1} du.
// After pulling out (eps^2/4)^{-i gamma}/Gamma(1-i gamma), the u-integral is
// int u^{n/2 + i gamma - 1} e^{-u} du, evaluated through u = e^w (the endpoint
// oscillation e^{i gamma ln u} becomes a plain bounded oscillation in w).
inline cplx alpha_eps_quadrature(double gamma, int n, double eps, double tol = 1e-13) {
    if (gamma == 0.0) throw std::invalid_argument("alpha_eps_quadrature: gamma = 0");
    if (!(eps > 0.0)) throw std::invalid_argument("alpha_eps_quadrature: eps must be > 0");
    const double W = 2.0 * std::log(10.0 / tol) / n;
    auto integrand = [&](double w) -> cplx {
        double ew = std::exp(w);
        double mod = std::exp(0.5 * n * w - ew);
        return mod * cplx(std::cos(gamma * w), std::sin(gamma * w));
    };
    cplx I = adaptive_gk(integrand, -W, 6.0, tol);
    double le = std::log(0.25 * eps * eps);
    cplx epow(std::cos(gamma * le), -std::sin(gamma * le));
    return epow / (std::tgamma(0.5 * n) * cgamma(cplx(1.0, -gamma))) * I;
}

// Sign-change diagnostic: psi(r) = r^n (1-r^2)^{-n/2} exp(-|x - r y|^2/(1-r^2)).
inline double psi_profile(double r, const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double s = 1.0 - r * r;
    double u2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = x[i] - r * y[i];
        u2 += u * u;
    }
    return std::pow(r, n) * std::pow(s, -0.5 * n) * std::exp(-u2 / s);
}

// Number of sign changes of dpsi/dr over a uniform grid of (0, 1).
inline int psi_derivative_sign_changes(const std::vector<double>& x, const std::vector<double>& y,
                                       int grid_points = 10000) {
    int changes = 0, last = 0;
    double prev = psi_profile(1.0 / (grid_points + 1), x, y);
    for (int i = 2; i <= grid_points; ++i) {
        double r = static_cast<double>(i) / (grid_points + 1);
        double v = psi_profile(r, x, y);
        double dv = v - prev;
        int s = (dv > 0.0) - (dv < 0.0);
        if (s != 0) {
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        prev = v;
    }
    return changes;
}

}  // namespace invgauss
