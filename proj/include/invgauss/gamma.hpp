#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace invgauss {

using cplx = std::complex<double>;

namespace detail {
// Lanczos approximation, g = 7, 9 coefficients.  Relative error below 1e-13
// on the half-plane Re z >= 1/2; the reflection formula covers the rest.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
}  // namespace detail

// Complex Gamma function.
inline cplx cgamma(cplx z) {
    using namespace detail;
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * cgamma(1.0 - z));
    }
    z -= 1.0;
    cplx x = kLanczosCoeff[0];
    for (int i = 1; i < 9; ++i) x += kLanczosCoeff[i] / (z + static_cast<double>(i));
    cplx t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// Lower incomplete gamma gamma(s, x) = int_0^x u^{s-1} e^{-u} du for complex
// s (Re s > 0 effectively; here only |Im s| modest) and small real x >= 0,
// via the alternating power series x^s sum_k (-x)^k / (k! (s+k)).
inline cplx cgamma_lower(cplx s, double x) {
    if (x < 0.0) throw std::invalid_argument("cgamma_lower: x < 0");
    if (x == 0.0) return 0.0;
    cplx sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 0; k < 200; ++k) {
        cplx add = term / (s + static_cast<double>(k));
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) && k > 2) break;
        term *= -x / (k + 1.0);
    }
    return std::pow(cplx(x), s) * sum;
}

}  // namespace invgauss
