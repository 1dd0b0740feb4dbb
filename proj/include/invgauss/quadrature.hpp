#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace invgauss {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Fixed rules
// ---------------------------------------------------------------------------

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the recurrence,
// weights are mu0 * (first eigenvector component)^2.
inline QuadratureRule golub_welsch(const std::vector<double>& offdiag, double mu0) {
    const int n = static_cast<int>(offdiag.size()) + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        J(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
        J(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        r.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        r.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    // Symmetrize about 0 (both rules below are even-weight rules).
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        double a = 0.5 * (r.nodes[static_cast<std::size_t>(i)] - r.nodes[static_cast<std::size_t>(j)]);
        r.nodes[static_cast<std::size_t>(i)] = a;
        r.nodes[static_cast<std::size_t>(j)] = -a;
        double w = 0.5 * (r.weights[static_cast<std::size_t>(i)] + r.weights[static_cast<std::size_t>(j)]);
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(j)] = w;
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

}  // namespace detail

// Gauss-Hermite rule of given order: int f(z) e^{-z^2} dz ~= sum w_i f(z_i),
// exact for polynomials of degree <= 2*order-1.
inline const QuadratureRule& gauss_hermite_rule(int order) {
    if (order < 1 || order > 256) throw std::invalid_argument("gauss_hermite_rule: order out of [1,256]");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    std::vector<double> off(static_cast<std::size_t>(order) - 1);
    for (int i = 1; i < order; ++i) off[static_cast<std::size_t>(i) - 1] = std::sqrt(i / 2.0);
    auto r = detail::golub_welsch(off, std::sqrt(M_PI));
    return cache.emplace(order, std::move(r)).first->second;
}

// Gauss-Legendre rule on (-1, 1).
inline const QuadratureRule& gauss_legendre_rule(int order) {
    if (order < 1 || order > 256) throw std::invalid_argument("gauss_legendre_rule: order out of [1,256]");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    std::vector<double> off(static_cast<std::size_t>(order) - 1);
    for (int i = 1; i < order; ++i) off[static_cast<std::size_t>(i) - 1] = i / std::sqrt(4.0 * i * i - 1.0);
    auto r = detail::golub_welsch(off, 2.0);
    return cache.emplace(order, std::move(r)).first->second;
}

// Pairwise summation in fixed order (deterministic, low roundoff).
template <class T>
inline T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 4) {
        T s{};
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <class T>
inline T pairwise_sum(const std::vector<T>& v) {
    return v.empty() ? T{} : pairwise_sum(v, 0, v.size());
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod 7-15 on finite intervals
// ---------------------------------------------------------------------------

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1,1] (QUADPACK).
inline constexpr double kGK_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGK_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kG_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F, class T>
inline void gk15(F&& f, double a, double b, T& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fv[15];
    // order: nodes c - h*x[0..6], c, c + h*x[6..0]
    for (int i = 0; i < 7; ++i) fv[i] = f(c - h * kGK_x[i]);
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) fv[8 + i] = f(c + h * kGK_x[6 - i]);
    T resk{};
    for (int i = 0; i < 7; ++i) resk += kGK_wk[i] * (fv[i] + fv[14 - i]);
    resk += kGK_wk[7] * fv[7];
    T resg{};
    // Gauss nodes are the odd-indexed Kronrod abscissae.
    for (int j = 0; j < 3; ++j) resg += kG_w[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    resg += kG_w[3] * fv[7];
    resk *= h;
    resg *= h;
    result = resk;
    err = std::abs(resk - resg);
}

// Globally adaptive Gauss-Kronrod: always refine the worst interval, stop
// when the summed error estimate meets tol (absolute, with a relative floor
// so integrals of large magnitude are not over-refined into rounding noise)
// or when the interval budget is exhausted.  Budgeted refinement keeps the
// cost bounded even when cancellation noise makes the error estimate sticky.
template <class F, class T>
inline T adaptive_gk_global(F&& f, const std::vector<double>& breaks, double tol,
                            int max_intervals) {
    struct Interval {
        double a, b, err;
        T val;
    };
    std::vector<Interval> heap;  // max-heap on err
    auto cmp = [](const Interval& p, const Interval& q) { return p.err < q.err; };
    heap.reserve(static_cast<std::size_t>(max_intervals));
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1])) continue;
        Interval iv{breaks[i], breaks[i + 1], 0.0, T{}};
        gk15(f, iv.a, iv.b, iv.val, iv.err);
        heap.push_back(iv);
        std::push_heap(heap.begin(), heap.end(), cmp);
    }
    if (heap.empty()) return T{};
    auto totals = [&](T& v, double& e) {
        v = T{};
        e = 0.0;
        for (const auto& iv : heap) {
            v += iv.val;
            e += iv.err;
        }
    };
    T total;
    double toterr;
    totals(total, toterr);
    while (static_cast<int>(heap.size()) < max_intervals &&
           toterr > tol * std::max(1.0, std::abs(total))) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Interval worst = heap.back();
        heap.pop_back();
        double m = 0.5 * (worst.a + worst.b);
        if (!(worst.a < m && m < worst.b)) {  // interval at double resolution
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        Interval left{worst.a, m, 0.0, T{}}, right{m, worst.b, 0.0, T{}};
        gk15(f, left.a, left.b, left.val, left.err);
        gk15(f, right.a, right.b, right.val, right.err);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        totals(total, toterr);
    }
    // deterministic assembly: sum in interval order
    std::sort(heap.begin(), heap.end(),
              [](const Interval& p, const Interval& q) { return p.a < q.a; });
    std::vector<T> parts(heap.size());
    for (std::size_t i = 0; i < heap.size(); ++i) parts[i] = heap[i].val;
    return pairwise_sum(parts);
}

}  // namespace detail

// Adaptive quadrature of f over [a, b] to tolerance tol (absolute, relative
// above magnitude 1).
template <class F>
inline auto adaptive_gk(F&& f, double a, double b, double tol, int max_intervals = 2000) {
    using T = decltype(f(a));
    if (!(a < b)) return T{};
    return detail::adaptive_gk_global<F, T>(std::forward<F>(f), {a, b}, tol, max_intervals);
}

// Adaptive quadrature over a breakpoint list (shared global error budget).
template <class F>
inline auto integrate_segments(F&& f, const std::vector<double>& breaks, double tol,
                               int max_intervals = 2000) {
    using T = decltype(f(breaks.front()));
    return detail::adaptive_gk_global<F, T>(std::forward<F>(f), breaks, tol, max_intervals);
}

// ---------------------------------------------------------------------------
// Improper time integrals over (0, infinity)
// ---------------------------------------------------------------------------

struct TimeIntegrandSpec {
    double power_at_zero = 1.0;  // integrand ~ t^{p-1} as t -> 0+
    double decay_rate = 1.0;     // integrand ~ e^{-lambda t} as t -> infinity
    double split_point = 1.0;
};

// int_0^infty f(t) dt where f ~ t^{p-1} near 0 and ~ e^{-lambda t} at infinity.
// Head (0, split]: substitution t = u^{1/p} flattens the endpoint power.
// Tail (split, T_cut]: T_cut certified so the dropped exponential tail is
// below tol/10 relative to the integrand size at the split.
template <class F>
inline auto integrate_time(F&& f, const TimeIntegrandSpec& spec, double tol) {
    using T = decltype(f(1.0));
    const double p = spec.power_at_zero;
    const double lam = spec.decay_rate;
    const double split = spec.split_point;
    if (!(p > 0.0)) throw std::invalid_argument("integrate_time: power_at_zero must be > 0");
    if (!(lam > 0.0)) throw std::invalid_argument("integrate_time: decay_rate must be > 0");
    auto head_integrand = [&](double u) -> T {
        double t = std::pow(u, 1.0 / p);
        return f(t) * (std::pow(u, 1.0 / p - 1.0) / p);
    };
    T head = adaptive_gk(head_integrand, 0.0, std::pow(split, p), 0.5 * tol);
    double fsplit = std::abs(f(split));
    double Tcut = split + (std::log(10.0 / tol) + std::log1p(fsplit)) / lam;
    T tail = adaptive_gk(std::forward<F>(f), split, Tcut, 0.5 * tol);
    return head + tail;
}

// ---------------------------------------------------------------------------
// Shell integrals  int_{eps < |x-y| < R} f(y) dy,  n in {1,2,3}
// ---------------------------------------------------------------------------

// Surface integral of f over the sphere |y - x| = r (including the r^{n-1}
// measure factor).  n=1: the two endpoints; n=2: equispaced trapezoid (exact
// for trigonometric degree < M); n=3: Gauss-Legendre in the polar cosine
// (density/2 nodes) x trapezoid in azimuth.  For even M every node has its
// exact antipode in the rule, so odd angular components cancel exactly.
template <class F>
inline cplx sphere_ring(F&& f, const std::vector<double>& x, double r, int angular_density) {
    const int n = static_cast<int>(x.size());
    if (n < 1 || n > 3) throw std::invalid_argument("sphere_ring: n must be in {1,2,3}");
    if (n > 1 && angular_density < 4)
        throw std::invalid_argument("sphere_ring: angular density too small");
    if (n == 1) return f(std::vector<double>{x[0] + r}) + f(std::vector<double>{x[0] - r});
    const int M = angular_density;
    if (n == 2) {
        std::vector<cplx> vals(static_cast<std::size_t>(M));
        std::vector<double> y(2);
        for (int j = 0; j < M; ++j) {
            double th = 2.0 * M_PI * j / M;
            y[0] = x[0] + r * std::cos(th);
            y[1] = x[1] + r * std::sin(th);
            vals[static_cast<std::size_t>(j)] = f(y);
        }
        return pairwise_sum(vals) * (2.0 * M_PI / M) * r;
    }
    const int Mc = std::max(4, M / 2);
    const QuadratureRule& gl = gauss_legendre_rule(Mc);
    std::vector<cplx> vals;
    vals.reserve(static_cast<std::size_t>(M * Mc));
    std::vector<double> y(3);
    for (int i = 0; i < Mc; ++i) {
        double c = gl.nodes[static_cast<std::size_t>(i)];
        double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int j = 0; j < M; ++j) {
            double th = 2.0 * M_PI * j / M;
            y[0] = x[0] + r * s * std::cos(th);
            y[1] = x[1] + r * s * std::sin(th);
            y[2] = x[2] + r * c;
            vals.push_back(f(y) * gl.weights[static_cast<std::size_t>(i)]);
        }
    }
    return pairwise_sum(vals) * (2.0 * M_PI / M) * r * r;
}

// Shell integral int_{eps < |x-y| < R} f(y) dy via adaptive radial quadrature
// of the ring profile.
template <class F>
inline cplx shell_integral(F&& f, const std::vector<double>& x, double eps, double R,
                           int angular_density, double tol) {
    const int n = static_cast<int>(x.size());
    if (!(eps > 0.0) || !(eps < R)) throw std::invalid_argument("shell_integral: need 0 < eps < R");
    if (n == 1) {
        auto g = [&](double y) -> cplx { return f(std::vector<double>{y}); };
        cplx right = adaptive_gk(g, x[0] + eps, x[0] + R, 0.5 * tol);
        cplx left = adaptive_gk(g, x[0] - R, x[0] - eps, 0.5 * tol);
        return left + right;
    }
    auto ring = [&](double r) -> cplx { return sphere_ring(f, x, r, angular_density); };
    return adaptive_gk(ring, eps, R, tol);
}

// Tensor Gauss-Hermite: int_{R^n} g(z) e^{-|z|^2} dz.
template <class F>
inline auto gh_tensor_integrate(F&& g, int n, int order) {
    using T = decltype(g(std::vector<double>(static_cast<std::size_t>(n), 0.0)));
    const QuadratureRule& r = gauss_hermite_rule(order);
    const std::size_t N = r.nodes.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<T> vals;
    while (true) {
        double w = 1.0;
        for (int d = 0; d < n; ++d) {
            z[static_cast<std::size_t>(d)] = r.nodes[idx[static_cast<std::size_t>(d)]];
            w *= r.weights[idx[static_cast<std::size_t>(d)]];
        }
        vals.push_back(g(z) * w);
        int d = 0;
        for (; d < n; ++d) {
            if (++idx[static_cast<std::size_t>(d)] < N) break;
            idx[static_cast<std::size_t>(d)] = 0;
        }
        if (d == n) break;
    }
    return pairwise_sum(vals);
}

}  // namespace invgauss
