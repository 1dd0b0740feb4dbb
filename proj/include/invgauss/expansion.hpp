#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "invgauss/hermite.hpp"
#include "invgauss/multi_index.hpp"
#include "invgauss/quadrature.hpp"

namespace invgauss {

// A function f(x) = g(x) e^{-|x|^2}; g is either a polynomial given by
// monomial terms or an arbitrary callable.  The envelope is applied exactly
// once, at evaluation.
struct EnvelopedFunction {
    struct Term {
        MultiIndex exponents;
        cplx coeff;
    };

    int dim = 1;
    std::vector<Term> terms;                                       // polynomial payload
    std::function<cplx(const std::vector<double>&)> sampled;       // or callable payload

    bool is_polynomial() const { return !static_cast<bool>(sampled); }

    int poly_degree() const {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, mi_order(t.exponents));
        return d;
    }

    // The bare factor g(x).
    cplx eval_g(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != dim)
            throw std::invalid_argument("EnvelopedFunction: dimension mismatch");
        if (sampled) return sampled(x);
        cplx s = 0.0;
        for (const auto& t : terms) {
            double mono = 1.0;
            for (std::size_t i = 0; i < t.exponents.size(); ++i)
                mono *= std::pow(x[i], t.exponents[i]);
            s += t.coeff * mono;
        }
        return s;
    }

    // f(x) = g(x) e^{-|x|^2}.
    cplx eval(const std::vector<double>& x) const {
        double x2 = 0.0;
        for (double c : x) x2 += c * c;
        return eval_g(x) * std::exp(-x2);
    }

    // Convenience: f = Htilde_k as an enveloped polynomial (g = H_k).
    static EnvelopedFunction hermite_tilde_fn(const MultiIndex& k) {
        EnvelopedFunction f;
        f.dim = static_cast<int>(k.size());
        // expand tensor product of 1-d Hermite coefficient lists
        std::vector<Term> acc = {Term{MultiIndex(k.size(), 0), 1.0}};
        for (std::size_t axis = 0; axis < k.size(); ++axis) {
            auto c1 = hermite_poly_coeffs(k[axis]);
            std::vector<Term> next;
            for (const auto& t : acc)
                for (std::size_t j = 0; j < c1.size(); ++j) {
                    if (c1[j] == 0.0) continue;
                    Term nt = t;
                    nt.exponents[axis] = static_cast<int>(j);
                    nt.coeff *= c1[j];
                    next.push_back(nt);
                }
            acc = std::move(next);
        }
        f.terms = std::move(acc);
        return f;
    }
};

// Finite spectral expansion f = sum_{|k| <= K} c_k Htilde_k, stored densely
// in graded-lexicographic index order.
struct HermiteExpansion {
    int dim = 1;
    int degree_cap = 0;
    std::vector<MultiIndex> indices;  // graded-lex, all |k| <= K
    std::vector<cplx> coeff;          // parallel to indices

    HermiteExpansion() = default;
    HermiteExpansion(int n, int K)
        : dim(n), degree_cap(K), indices(mi_enumerate(n, K)), coeff(indices.size(), 0.0) {}

    std::size_t position(const MultiIndex& k) const {
        // binary search in graded-lex order
        auto it = std::lower_bound(indices.begin(), indices.end(), k, mi_graded_lex_less);
        if (it == indices.end() || *it != k)
            throw std::out_of_range("HermiteExpansion: index not stored");
        return static_cast<std::size_t>(it - indices.begin());
    }

    cplx& at(const MultiIndex& k) { return coeff[position(k)]; }
    cplx at(const MultiIndex& k) const { return coeff[position(k)]; }

    double norm_sq() const {
        std::vector<double> parts(coeff.size());
        for (std::size_t i = 0; i < coeff.size(); ++i)
            parts[i] = std::norm(coeff[i]) * hermite_tilde_norm_sq(indices[i], dim);
        return pairwise_sum(parts);
    }
    double norm() const { return std::sqrt(norm_sq()); }
};

// Synthesis: f(x) = sum c_k Htilde_k(x), deterministic graded-lex pairwise sum.
inline cplx synthesize(const HermiteExpansion& e, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != e.dim)
        throw std::invalid_argument("synthesize: dimension mismatch");
    std::vector<cplx> parts(e.coeff.size());
    for (std::size_t i = 0; i < e.coeff.size(); ++i)
        parts[i] = e.coeff[i] * hermite_tilde(e.indices[i], x);
    return pairwise_sum(parts);
}

// Analysis: c_k = pi^{n/2} ||Htilde_k||^{-2} int f Htilde_k e^{|y|^2} dy
//             = pi^{n/2} ||Htilde_k||^{-2} int g(y) H_k(y) e^{-|y|^2} dy,
// by tensor Gauss-Hermite of order `order` per axis (default K + 12), exact
// for polynomial g of degree <= 2*order - 1 - |k|.
inline HermiteExpansion analyze(const EnvelopedFunction& f, int K, int order = -1,
                                double tail_tol = -1.0) {
    const int n = f.dim;
    if (order < 1) order = K + 12;
    HermiteExpansion e(n, K);
    for (std::size_t i = 0; i < e.indices.size(); ++i) {
        const MultiIndex& k = e.indices[i];
        auto integrand = [&](const std::vector<double>& y) -> cplx {
            return f.eval_g(y) * hermite_poly_tensor(k, y);
        };
        cplx integral = gh_tensor_integrate(integrand, n, order);
        e.coeff[i] = std::pow(M_PI, 0.5 * n) / hermite_tilde_norm_sq(k, n) * integral;
    }
    if (tail_tol > 0.0) {
        double tail = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < e.indices.size(); ++i) {
            peak = std::max(peak, std::abs(e.coeff[i]));
            if (mi_order(e.indices[i]) == K) tail = std::max(tail, std::abs(e.coeff[i]));
        }
        if (tail > tail_tol * std::max(1.0, peak))
            throw std::runtime_error("analyze: tail coefficient above tolerance; raise K or order");
    }
    return e;
}

// The enveloped form of a finite expansion: g(x) = sum c_k H_k(x).
inline EnvelopedFunction to_enveloped(const HermiteExpansion& e) {
    std::map<MultiIndex, cplx> mono;
    for (std::size_t i = 0; i < e.indices.size(); ++i) {
        if (e.coeff[i] == cplx(0.0)) continue;
        EnvelopedFunction hk = EnvelopedFunction::hermite_tilde_fn(e.indices[i]);
        for (const auto& t : hk.terms) mono[t.exponents] += e.coeff[i] * t.coeff;
    }
    EnvelopedFunction f;
    f.dim = e.dim;
    for (const auto& [ex, c] : mono) f.terms.push_back({ex, c});
    return f;
}

}  // namespace invgauss
