#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace invgauss {

// m(x) = min{1, 1/|x|^2}, m(0) = 1.
inline double m_fn(const std::vector<double>& x) {
    double x2 = 0.0;
    for (double c : x) x2 += c * c;
    if (x2 <= 1.0) return 1.0;
    return 1.0 / x2;
}

struct RegionSpec {
    double beta = 1.0;
    int dimension = 1;
};

// N_beta = {(x,y) : |x - y| <= beta * n * min{1, 1/|x|}} (non-strict).
inline bool in_region(const std::vector<double>& x, const std::vector<double>& y,
                      const RegionSpec& spec) {
    if (x.size() != y.size() || static_cast<int>(x.size()) != spec.dimension)
        throw std::invalid_argument("in_region: dimension mismatch");
    double x2 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x2 += x[i] * x[i];
        double u = x[i] - y[i];
        d2 += u * u;
    }
    double cap = std::min(1.0, 1.0 / std::sqrt(x2));
    if (x2 == 0.0) cap = 1.0;
    return std::sqrt(d2) <= spec.beta * spec.dimension * cap;
}

// Angle theta(x,y) in [0, pi]; 0 by convention when n = 1 or either point is 0.
inline double angle(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("angle: dimension mismatch");
    if (x.size() == 1) return 0.0;
    double xx = 0.0, yy = 0.0, xy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx += x[i] * x[i];
        yy += y[i] * y[i];
        xy += x[i] * y[i];
    }
    if (xx == 0.0 || yy == 0.0) return 0.0;
    double c = xy / std::sqrt(xx * yy);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

}  // namespace invgauss
