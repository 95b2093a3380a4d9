#ifndef EITBEAM_ATOMIC_HPP
#define EITBEAM_ATOMIC_HPP

#include <complex>
#include <optional>
#include <utility>

namespace eitbeam {

// Three-level medium parameters, all in SI base units and angular
// frequencies [rad/s].  eta = 3*lambda^2*density*gamma_r/(8*pi) is the
// coupling density [rad/(s*m)]; it is filled in by make() and must be kept
// consistent with the other fields.
struct AtomicParams {
    double lambda = 0.0;    // probe wavelength [m]
    double density = 0.0;   // atomic number density [1/m^3]
    double gamma_r = 0.0;   // radiative decay rate of the excited state
    double gamma = 0.0;     // optical coherence decay rate, >= gamma_r/2
    double gamma_cb = 0.0;  // ground-state coherence decay rate, << gamma
    double detuning = 0.0;  // two-photon detuning omega [rad/s]
    double eta = 0.0;       // cached coupling density

    // Validates and caches eta.  gamma defaults to gamma_r/2 (purely
    // radiative coherence decay) when not given.  Throws
    // std::invalid_argument on non-physical input.
    static AtomicParams make(double lambda, double density, double gamma_r,
                             double gamma_cb, double detuning = 0.0,
                             std::optional<double> gamma = std::nullopt);
};

// A decay rate combined with the two-photon detuning, Gamma = rate + i*omega.
struct ComplexRate {
    double rate = 0.0;
    double omega = 0.0;
    std::complex<double> value() const { return {rate, omega}; }
};

// (Gamma_ab, Gamma_cb) = (gamma + i*omega, gamma_cb + i*omega).
std::pair<ComplexRate, ComplexRate> complex_rates(const AtomicParams& p);

// Complex attenuation coefficient [1/m] of a weak probe,
//
//     kappa = eta * Gamma_cb / (Gamma_ab * Gamma_cb + |Omega_d|^2),
//
// where drive_intensity = |Omega_d|^2 [rad^2/s^2].  The real part
// attenuates the probe amplitude as exp(-Re(kappa) z); the imaginary part
// is dispersive.  Throws std::domain_error when the denominator is
// degenerate (zero drive with gamma_cb = detuning = 0).
std::complex<double> kappa(const AtomicParams& p, double drive_intensity);

// Small-(x/L) expansion of Re(kappa) for a drive intensity
// |Omega|^2 (1 - (x/L)^2):
//
//     eta * [ gamma_cb/|Omega|^2 + gamma*omega^2/|Omega|^4
//             + (gamma_cb/|Omega|^2 + 2*gamma*omega^2/|Omega|^4) (x/L)^2 ]
//
// Valid deep in the transparency regime (|Omega|^2 >> gamma*gamma_cb,
// omega^2) and for |x/L| well below 1.
double kappa_expanded(const AtomicParams& p, double omega0_sq,
                      double x_over_L);

// Ground-state amplitudes of the non-absorbing superposition for real Rabi
// frequencies (omega_p, omega_d), normalised to 1:
//
//     amp_c =  omega_p / sqrt(omega_p^2 + omega_d^2)
//     amp_b = -omega_d / sqrt(omega_p^2 + omega_d^2)
//
// The extinguished coupling is omega_d*amp_c + omega_p*amp_b = 0 (each
// ground state is weighted by the field addressing the other leg).
// Requires omega_p^2 + omega_d^2 > 0.
struct DarkState {
    double amp_c = 0.0;
    double amp_b = 0.0;
};

DarkState dark_state(double omega_p, double omega_d);

} // namespace eitbeam

#endif
