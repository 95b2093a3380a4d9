#ifndef EITBEAM_TEST_HELPERS_HPP
#define EITBEAM_TEST_HELPERS_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "eitbeam/atomic.hpp"

namespace eitbeam::test {

// Atom with a prescribed coupling density eta.  Unit-scale rates keep the
// closed-form width laws evaluable by hand; the density is back-solved from
// eta = 3 lambda^2 N gamma_r / (8 pi).
inline AtomicParams atom_with_eta(double eta, double gamma, double gamma_cb,
                                  double detuning = 0.0) {
    const double lambda = 1.0e-6;
    const double gamma_r = 2.0 * gamma;
    const double density =
        eta * 8.0 * std::numbers::pi / (3.0 * lambda * lambda * gamma_r);
    return AtomicParams::make(lambda, density, gamma_r, gamma_cb, detuning,
                              gamma);
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

}  // namespace eitbeam::test

#endif
