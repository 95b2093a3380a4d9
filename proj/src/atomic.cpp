#include "eitbeam/atomic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eitbeam {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

AtomicParams AtomicParams::make(double lambda, double density, double gamma_r,
                                double gamma_cb, double detuning,
                                std::optional<double> gamma) {
    require(std::isfinite(lambda) && lambda > 0.0,
            "wavelength must be positive, got " + num(lambda));
    require(std::isfinite(density) && density >= 0.0,
            "density must be non-negative, got " + num(density));
    require(std::isfinite(gamma_r) && gamma_r > 0.0,
            "gamma_r must be positive, got " + num(gamma_r));
    require(std::isfinite(gamma_cb) && gamma_cb >= 0.0,
            "gamma_cb must be non-negative, got " + num(gamma_cb));
    require(std::isfinite(detuning), "detuning must be finite");

    AtomicParams p;
    p.lambda = lambda;
    p.density = density;
    p.gamma_r = gamma_r;
    p.gamma = gamma.value_or(gamma_r / 2.0);
    p.gamma_cb = gamma_cb;
    p.detuning = detuning;

    // Radiative decay alone already dephases the optical coherence at
    // gamma_r/2; anything slower is unphysical.
    require(std::isfinite(p.gamma) && p.gamma >= gamma_r / 2.0,
            "gamma must be >= gamma_r/2 = " + num(gamma_r / 2.0) + ", got " +
                num(p.gamma));
    require(p.gamma_cb <= p.gamma,
            "gamma_cb must not exceed gamma (" + num(p.gamma) + "), got " +
                num(p.gamma_cb));

    p.eta = 3.0 * lambda * lambda * density * gamma_r / (8.0 * M_PI);
    return p;
}

std::pair<ComplexRate, ComplexRate> complex_rates(const AtomicParams& p) {
    return {ComplexRate{p.gamma, p.detuning},
            ComplexRate{p.gamma_cb, p.detuning}};
}

std::complex<double> kappa(const AtomicParams& p, double drive_intensity) {
    if (!(drive_intensity >= 0.0))
        throw std::invalid_argument("drive intensity must be >= 0, got " +
                                    num(drive_intensity));
    auto [gab, gcb] = complex_rates(p);
    const std::complex<double> denom =
        gab.value() * gcb.value() + drive_intensity;
    if (std::abs(denom) == 0.0)
        throw std::domain_error(
            "degenerate medium: zero drive with gamma_cb = detuning = 0 "
            "leaves the response undefined");
    return p.eta * gcb.value() / denom;
}

double kappa_expanded(const AtomicParams& p, double omega0_sq,
                      double x_over_L) {
    if (!(omega0_sq > 0.0))
        throw std::invalid_argument("peak drive intensity must be > 0, got " +
                                    num(omega0_sq));
    const double w2 = omega0_sq;
    const double om2 = p.detuning * p.detuning;
    const double u2 = x_over_L * x_over_L;
    const double flat = p.gamma_cb / w2 + p.gamma * om2 / (w2 * w2);
    const double curved = p.gamma_cb / w2 + 2.0 * p.gamma * om2 / (w2 * w2);
    return p.eta * (flat + curved * u2);
}

DarkState dark_state(double omega_p, double omega_d) {
    const double s = omega_p * omega_p + omega_d * omega_d;
    if (!(s > 0.0))
        throw std::invalid_argument(
            "dark state undefined for omega_p = omega_d = 0");
    const double norm = std::sqrt(s);
    return DarkState{omega_p / norm, -omega_d / norm};
}

} // namespace eitbeam
