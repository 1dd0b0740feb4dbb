#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invgauss/expansion.hpp"
#include "invgauss/hermite.hpp"
#include "invgauss/quadrature.hpp"
#include "invgauss/regions.hpp"
#include "invgauss/singular.hpp"
#include "invgauss/spectral.hpp"

namespace invgauss {

// Which singular operator a PV computation drives.
struct PVKernelId {
    enum Kind { Riesz, RieszBar, Imaginary } kind = Riesz;
    MultiIndex alpha;   // Riesz / RieszBar
    double gamma = 0.0; // Imaginary

    static PVKernelId riesz(MultiIndex a) { return {Riesz, std::move(a), 0.0}; }
    static PVKernelId riesz_bar(MultiIndex a) { return {RieszBar, std::move(a), 0.0}; }
    static PVKernelId imaginary(double g) { return {Imaginary, {}, g}; }
};

struct PVResult {
    cplx value{};
    std::vector<double> epsilon_sequence;
    std::vector<cplx> shell_values;      // truncated integrals per epsilon
    std::vector<cplx> corrected_values;  // shell + alpha(eps) f(x) for imaginary powers
    double extrapolation_error = 0.0;
    bool converged = false;
};

struct PVOptions {
    double tol = 1e-6;
    int max_depth = 12;        // epsilon ladder length
    int angular_density = 32;  // n >= 2 shells
    double outer_radius = 0.0; // 0: pick from the global envelopes (|x| + 9)
    SingularKernelOptions kernel;
};

namespace detail {

inline cplx pv_kernel_eval(const PVKernelId& id, const std::vector<double>& x,
                           const std::vector<double>& y, const SingularKernelOptions& opt) {
    switch (id.kind) {
        case PVKernelId::Riesz:
            return riesz_kernel(id.alpha, x, y, opt);
        case PVKernelId::RieszBar:
            return riesz_bar_kernel(id.alpha, x, y, opt);
        case PVKernelId::Imaginary:
            return imaginary_kernel(id.gamma, x, y, opt);
    }
    throw std::logic_error("pv_kernel_eval: unreachable");
}

// One sweep of Aitken's delta-squared acceleration, with a no-contraction guard.
inline std::vector<cplx> aitken_sweep(const std::vector<cplx>& w) {
    if (w.size() < 3) return w;
    std::vector<cplx> out;
    out.reserve(w.size() - 2);
    for (std::size_t j = 0; j + 2 < w.size(); ++j) {
        cplx d1 = w[j + 1] - w[j];
        cplx d2 = w[j + 2] - w[j + 1];
        cplx den = d2 - d1;
        if (std::abs(den) < 0.05 * std::max(std::abs(d1), std::abs(d2)) || den == cplx(0.0))
            out.push_back(w[j + 2]);
        else
            out.push_back(w[j + 2] - d2 * d2 / den);
    }
    return out;
}

// Iterated Aitken extrapolation of a PV ladder; the truncation orders are not
// assumed, each sweep removes the empirically dominant geometric component.
inline void extrapolate(const std::vector<cplx>& w, double tol, cplx& value, double& err,
                        bool& converged) {
    if (w.empty()) {
        value = 0.0;
        err = 0.0;
        converged = false;
        return;
    }
    value = w.back();
    err = (w.size() >= 2) ? std::abs(w.back() - w[w.size() - 2]) : 0.0;
    if (err <= 0.1 * tol) {  // already at the noise floor: do not accelerate noise
        converged = true;
        return;
    }
    std::vector<cplx> cur = w;
    for (int sweep = 0; sweep < 3 && cur.size() >= 4; ++sweep) {
        std::vector<cplx> next = aitken_sweep(cur);
        double nerr = (next.size() >= 2) ? std::abs(next.back() - next[next.size() - 2])
                                         : std::abs(next.back() - cur.back());
        if (nerr < err) {
            value = next.back();
            err = nerr;
        }
        cur = std::move(next);
        if (err <= 0.1 * tol) break;
    }
    // The epsilon ladder is exactly geometric with ratio 1/2, and the shell
    // truncation error expands in half-integer powers of epsilon; eliminate
    // the 2^{-p j/2} components in turn (Richardson with known exponents).
    std::vector<cplx> v = w;
    for (int p = 1; p <= 5 && v.size() >= 3; ++p) {
        double rho = std::pow(2.0, -0.5 * p);
        std::vector<cplx> next(v.size() - 1);
        for (std::size_t j = 0; j + 1 < v.size(); ++j)
            next[j] = (v[j + 1] - rho * v[j]) / (1.0 - rho);
        v = std::move(next);
        if (v.size() >= 2) {
            double nerr = std::abs(v.back() - v[v.size() - 2]);
            if (nerr < err) {
                value = v.back();
                err = nerr;
            }
        }
    }
    converged = err <= tol;
}

// Truncated integral over the shell {eps < |x-y| < R} of K(x,y) f(y).
inline cplx pv_shell(const PVKernelId& id, const EnvelopedFunction& f,
                     const std::vector<double>& x, double eps, double R, const PVOptions& opt) {
    auto integrand = [&](const std::vector<double>& y) -> cplx {
        return pv_kernel_eval(id, x, y, opt.kernel) * f.eval(y);
    };
    return shell_integral(integrand, x, eps, R, opt.angular_density, 0.25 * opt.tol);
}

inline double vec_norm(const std::vector<double>& x) {
    return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

// Extrapolated shell limit lim_{eps->0} int_{|x-y|>eps} K f dy, no correction
// term.  Fills the ladder fields of the result.
inline PVResult pv_shell_limit(const PVKernelId& id, const EnvelopedFunction& f,
                               const std::vector<double>& x, double R, const PVOptions& opt) {
    PVResult res;
    const double eps0 = std::min(1.0, std::sqrt(m_fn(x)));
    cplx acc = pv_shell(id, f, x, eps0, R, opt);
    res.epsilon_sequence.push_back(eps0);
    res.shell_values.push_back(acc);
    for (int j = 1; j <= opt.max_depth; ++j) {
        double ej = eps0 * std::pow(2.0, -j);
        acc += pv_shell(id, f, x, ej, 2.0 * ej, opt);
        res.epsilon_sequence.push_back(ej);
        res.shell_values.push_back(acc);
    }
    extrapolate(res.shell_values, opt.tol, res.value, res.extrapolation_error, res.converged);
    return res;
}

// Absolutely convergent evaluation of the shell limit for Riesz kernels.
// The spherical rule pairs antipodes exactly, so the odd leading singularity
// cancels in each ring and the radial profile is O(r^{-1/2}) times the
// measure; the substitution r = w^2 then removes the remaining edge.  No
// epsilon ladder or extrapolation is involved.
inline cplx pv_symmetric_limit(const PVKernelId& id, const EnvelopedFunction& f,
                               const std::vector<double>& x, double R, const PVOptions& opt) {
    const int n = static_cast<int>(x.size());
    auto Kf = [&](const std::vector<double>& y) -> cplx {
        return pv_kernel_eval(id, x, y, opt.kernel) * f.eval(y);
    };
    double xn = vec_norm(x);
    auto g = [&](double w) -> cplx {
        double r = w * w;
        // the envelope/kernel product develops angular harmonics at a rate
        // that grows with r(1+|x|) until the Gaussian envelope kills the ring
        // entirely; raise the trapezoid density accordingly (even count keeps
        // the antipodal cancellation)
        int M = opt.angular_density;
        if (r > 0.6 && r - xn < 5.0) {
            int need = opt.angular_density +
                       static_cast<int>(std::ceil(1.5 * r * (1.0 + xn)));
            M = std::min(40, need + (need & 1));
        }
        return sphere_ring(Kf, x, r, M) * (2.0 * w);
    };
    const double wmin = 1e-3;
    const double wmax = std::sqrt(R);
    std::vector<double> br = {wmin};
    double rloc = opt.kernel.local_beta * n * std::min(1.0, (xn > 0.0) ? 1.0 / xn : 1.0);
    for (double w : {0.1, 0.3, std::sqrt(rloc), 1.0, 2.0}) {
        if (w > wmin && w < wmax) br.push_back(w);
    }
    br.push_back(wmax);
    std::sort(br.begin(), br.end());
    cplx I = integrate_segments(g, br, 0.5 * opt.tol);
    // head patch on (0, wmin): g extends continuously to w = 0; Richardson
    // value g(0) ~ 2g(w) - g(2w), then the trapezoid closes the gap
    cplx g1 = g(wmin), g2 = g(2.0 * wmin);
    I += wmin * 0.5 * ((2.0 * g1 - g2) + g1);
    return I;
}

}  // namespace detail

// c_alpha: the even-order PV correction constant (0 whenever some
// alpha_i is odd; otherwise an explicit Gamma-type integral).
inline double c_alpha(const MultiIndex& a, int n, double tol = 1e-12) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("c_alpha: alpha = 0");
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("c_alpha: dimension mismatch");
    for (int c : a)
        if (c % 2 == 1) return 0.0;
    const int A = mi_order(a);
    if (n == 1) {
        // -Gamma(A/2)^{-1} 2^{-(A/2-1)} pi^{-1/2} int_0^inf Htilde_{A-1}(sqrt(s)) s^{-1} ds,
        // with s = v^2 (the integrand H_{A-1}(v)/v is an even polynomial times
        // the Gaussian; the quadrature never touches v = 0).
        auto integrand = [&](double v) -> double {
            return hermite_tilde_1d(a[0] - 1, v) / v;
        };
        double I = 2.0 * adaptive_gk(integrand, 0.0, 10.0, tol);
        return -I * std::pow(2.0, -(0.5 * A - 1.0)) * std::pow(M_PI, -0.5) / std::tgamma(0.5 * A);
    }
    // n > 1, all components even.  WLOG the distinguished coordinate has
    // alpha_1 >= 1: rotate a nonzero component to the front.
    MultiIndex ap = a;
    std::size_t lead = 0;
    while (lead < ap.size() && ap[lead] == 0) ++lead;
    std::swap(ap[0], ap[lead]);
    // integral over the (n-1)-ball {|zbar| < 1} and s in (0, inf) of
    //   H_{a1-1}(sqrt(s(1-|zbar|^2))) prod_{i=2}^{n} H_{ai}(z_i sqrt(s)) e^{-s} s^{(n-3)/2};
    // substituting s = v^2 gives weight 2 v^{n-2} e^{-v^2}.
    auto radial = [&](const std::vector<double>& zbar) -> double {
        double zb2 = 0.0;
        for (double c : zbar) zb2 += c * c;
        double rad = std::sqrt(std::max(0.0, 1.0 - zb2));
        auto iv = [&](double v) -> double {
            double w = hermite_poly(ap[0] - 1, v * rad);
            for (std::size_t i = 1; i < ap.size(); ++i) w *= hermite_poly(ap[i], zbar[i - 1] * v);
            return 2.0 * std::pow(v, n - 2) * std::exp(-v * v) * w;
        };
        return adaptive_gk(iv, 0.0, 9.0, tol);
    };
    double I = 0.0;
    if (n == 2) {
        // z = sin(theta) removes the sqrt(1-z^2) endpoint kink
        const QuadratureRule& gl = gauss_legendre_rule(64);
        std::vector<double> parts(gl.nodes.size());
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            double th = 0.5 * M_PI * gl.nodes[i];
            parts[i] = gl.weights[i] * 0.5 * M_PI * std::cos(th) * radial({std::sin(th)});
        }
        I = pairwise_sum(parts);
    } else if (n == 3) {
        // rho = sin(phi) likewise smooths the disk boundary
        const QuadratureRule& gl = gauss_legendre_rule(48);
        const int M = 64;
        std::vector<double> parts;
        parts.reserve(gl.nodes.size() * static_cast<std::size_t>(M));
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            double phi = 0.25 * M_PI * (gl.nodes[i] + 1.0);
            double rho = std::sin(phi);
            double wr = 0.25 * M_PI * gl.weights[i] * rho * std::cos(phi);
            for (int j = 0; j < M; ++j) {
                double th = 2.0 * M_PI * j / M;
                parts.push_back(wr * (2.0 * M_PI / M) *
                                radial({rho * std::cos(th), rho * std::sin(th)}));
            }
        }
        I = pairwise_sum(parts);
    } else {
        throw std::invalid_argument("c_alpha: n > 3 not supported");
    }
    return -I * std::pow(2.0, -(0.5 * A - 1.0)) * std::pow(M_PI, -0.5 * n) / std::tgamma(0.5 * A);
}

// Oracle-difference evaluation of c_alpha: the spectral value of R_alpha f
// minus the extrapolated shell limit at a reference point, divided by f(x).
// Independent of the Gamma-integral route; used to cross-validate it.
inline double c_alpha_oracle_difference(const MultiIndex& a, int n, double tol = 1e-8) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("c_alpha_oracle_difference: alpha = 0");
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("c_alpha_oracle_difference: dimension mismatch");
    MultiIndex k(static_cast<std::size_t>(n), 0);  // f = Htilde_0
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn(k);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[0] = 0.4;
    if (n > 1) x[1] = -0.3;
    HermiteExpansion e(n, 0);
    e.at(k) = 1.0;
    cplx spectral = synthesize(riesz_apply(e, a), x);
    PVOptions opt;
    opt.tol = tol;
    cplx limit =
        detail::pv_symmetric_limit(PVKernelId::riesz(a), f, x, detail::vec_norm(x) + 9.0, opt);
    return ((spectral - limit) / f.eval(x)).real();
}

// Correction constant for Rbar_alpha.  No closed form is available; the same
// parity rule gives 0 for odd components, and the even case is obtained once
// by the oracle-difference method (spectral value minus shell limit at a
// reference pair) and cached.
inline double c_alpha_bar(const MultiIndex& a, int n) {
    mi_validate(a);
    if (mi_is_zero(a)) throw std::invalid_argument("c_alpha_bar: alpha = 0");
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("c_alpha_bar: dimension mismatch");
    for (int c : a)
        if (c % 2 == 1) return 0.0;
    static std::map<std::pair<MultiIndex, int>, double> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(a, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // reference input f = Htilde_a (satisfies k >= alpha, k != 0) at a fixed x
    EnvelopedFunction f = EnvelopedFunction::hermite_tilde_fn(a);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[0] = 0.4;
    if (n > 1) x[1] = -0.3;
    HermiteExpansion e(n, mi_order(a));
    e.at(a) = 1.0;
    cplx spectral = synthesize(riesz_bar_apply(e, a), x);
    PVOptions opt;
    opt.tol = 1e-8;
    cplx limit =
        detail::pv_symmetric_limit(PVKernelId::riesz_bar(a), f, x, detail::vec_norm(x) + 9.0, opt);
    double c = ((spectral - limit) / f.eval(x)).real();
    cache.emplace(key, c);
    return c;
}

// Principal-value application of R_alpha / Rbar_alpha:
//   lim_{eps->0} int_{|x-y|>eps} K(x,y) f(y) dy + c_alpha f(x).
// The shell limit is evaluated by the absolutely convergent symmetrized
// radial integral (antipodal cancellation); record_ladder additionally fills
// the epsilon ladder diagnostics from truncated shells.
inline PVResult pv_apply(const PVKernelId& id, const EnvelopedFunction& f,
                         const std::vector<double>& x, const PVOptions& opt = {},
                         bool record_ladder = false) {
    if (id.kind == PVKernelId::Imaginary)
        throw std::invalid_argument("pv_apply: use pv_apply_imaginary for imaginary powers");
    const int n = static_cast<int>(x.size());
    const double R = (opt.outer_radius > 0.0) ? opt.outer_radius : detail::vec_norm(x) + 9.0;
    cplx corr = 0.0;
    if (id.kind == PVKernelId::Riesz)
        corr = c_alpha(id.alpha, n) * f.eval(x);
    else
        corr = c_alpha_bar(id.alpha, n) * f.eval(x);

    PVResult res;
    if (record_ladder) res = detail::pv_shell_limit(id, f, x, R, opt);
    res.value = detail::pv_symmetric_limit(id, f, x, R, opt) + corr;
    res.converged = true;
    res.extrapolation_error = opt.tol;
    return res;
}

// alpha(eps)-corrected principal value for A^{i gamma}:
// the corrected sequence shell + alpha(eps) f(x) is extrapolated; the raw
// shell sequence oscillates and is reported as-is.
inline PVResult pv_apply_imaginary(double gamma, const EnvelopedFunction& f,
                                   const std::vector<double>& x, const PVOptions& opt = {}) {
    const int n = static_cast<int>(x.size());
    const double R = (opt.outer_radius > 0.0) ? opt.outer_radius : detail::vec_norm(x) + 9.0;
    PVKernelId id = PVKernelId::imaginary(gamma);
    const cplx fx = f.eval(x);
    const double eps0 = std::min(1.0, std::sqrt(m_fn(x)));
    PVResult res;
    cplx acc = detail::pv_shell(id, f, x, eps0, R, opt);
    res.epsilon_sequence.push_back(eps0);
    res.shell_values.push_back(acc);
    res.corrected_values.push_back(acc + alpha_eps(gamma, n, eps0) * fx);
    for (int j = 1; j <= opt.max_depth; ++j) {
        double ej = eps0 * std::pow(2.0, -j);
        acc += detail::pv_shell(id, f, x, ej, 2.0 * ej, opt);
        res.epsilon_sequence.push_back(ej);
        res.shell_values.push_back(acc);
        res.corrected_values.push_back(acc + alpha_eps(gamma, n, ej) * fx);
    }
    detail::extrapolate(res.corrected_values, opt.tol, res.value, res.extrapolation_error,
                        res.converged);
    return res;
}

// Maximal operator on a finite epsilon grid: max over eps of the truncated
// integral magnitude (a lower bound for the true supremum).
inline double maximal_apply(const PVKernelId& id, const EnvelopedFunction& f,
                            const std::vector<double>& x, const std::vector<double>& eps_grid,
                            const PVOptions& opt = {}) {
    if (eps_grid.empty()) throw std::invalid_argument("maximal_apply: empty epsilon grid");
    const double R = (opt.outer_radius > 0.0) ? opt.outer_radius : detail::vec_norm(x) + 9.0;
    double best = 0.0;
    for (double e : eps_grid)
        best = std::max(best, std::abs(detail::pv_shell(id, f, x, e, R, opt)));
    return best;
}

// Local/global split: the local part is the PV limit over N_beta(x) (a ball
// of radius beta n min{1, 1/|x|} around x), the global part the plain
// integral over its complement up to the outer radius.
inline std::pair<cplx, cplx> split_apply(const PVKernelId& id, const EnvelopedFunction& f,
                                         const std::vector<double>& x, const RegionSpec& spec,
                                         const PVOptions& opt = {}) {
    const int n = static_cast<int>(x.size());
    double xn = detail::vec_norm(x);
    double rloc = spec.beta * n * ((xn > 1.0) ? 1.0 / xn : 1.0);
    const double R = (opt.outer_radius > 0.0) ? opt.outer_radius : xn + 9.0;
    PVOptions lopt = opt;
    lopt.outer_radius = std::min(rloc, R);
    PVResult local = (id.kind == PVKernelId::Imaginary)
                         ? pv_apply_imaginary(id.gamma, f, x, lopt)
                         : pv_apply(id, f, x, lopt);
    cplx global = 0.0;
    if (rloc < R) {
        auto integrand = [&](const std::vector<double>& y) -> cplx {
            return detail::pv_kernel_eval(id, x, y, opt.kernel) * f.eval(y);
        };
        global = shell_integral(integrand, x, rloc, R, opt.angular_density, 0.25 * opt.tol);
    }
    return {local.value, global};
}

}  // namespace invgauss
