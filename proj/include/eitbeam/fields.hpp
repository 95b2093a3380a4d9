#ifndef EITBEAM_FIELDS_HPP
#define EITBEAM_FIELDS_HPP

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "eitbeam/grid.hpp"

namespace eitbeam {

// Complex probe envelope Omega_p(x) [rad/s] on a transverse grid.
struct ComplexField {
    TransverseGrid grid;
    std::vector<std::complex<double>> values;
};

// Integrated |Omega_p|^2 dx; the conserved quantity of lossless transport.
double field_power(const ComplexField& f);
std::vector<double> field_intensity(const ComplexField& f);
double max_abs(const ComplexField& f);

// Descriptors for the drive patterns this package knows how to build.  The
// drive enters the physics only through its intensity |Omega_d(x)|^2.
struct InterferenceSpec {
    double omega0 = 0.0;        // peak Rabi frequency [rad/s]
    double fringe_period = 0.0; // Lambda [m]
    double x0 = 0.0;            // fringe-pattern offset [m]
};

struct ParabolicMaxSpec {
    double omega0 = 0.0;       // peak Rabi frequency at x = x0
    double length_scale = 0.0; // L [m]
    double x0 = 0.0;
};

struct ParabolicNullSpec {
    double omega0 = 0.0;       // scale of the linear Rabi ramp
    double length_scale = 0.0; // L [m]; intensity omega0^2 (x/L)^2
};

struct FromFileSpec {
    std::string path;
};

using DriveSpec =
    std::variant<InterferenceSpec, ParabolicMaxSpec, ParabolicNullSpec,
                 FromFileSpec>;

// Sampled drive intensity |Omega_d(x)|^2 >= 0 with the descriptor that
// produced it.
struct DriveProfile {
    TransverseGrid grid;
    std::vector<double> intensity;
    DriveSpec descriptor;
};

ComplexField plane_probe(const TransverseGrid& g, double amplitude);

// exp(-(x - center)^2 / waist^2); 1/e amplitude half-width = waist.
ComplexField gaussian_probe(const TransverseGrid& g, double amplitude,
                            double waist, double center = 0.0);

// Thin converging lens (focal_length > 0): multiplies the field by
// exp(+i k x^2 / (2 f)) with k = 2 pi / wavelength.  The sign pairs with
// the spectral propagator (exp(+i kx^2 dz / (2k)) per unit step) so that a
// positive f brings the beam to a focus a distance ~f downstream.
ComplexField lens_phase(const ComplexField& f, double focal_length,
                        double wavelength);

// omega0^2 cos^2(pi (x - x0) / Lambda); requires Lambda > 2 dx so the
// fringes are resolved.
DriveProfile interference_drive(const TransverseGrid& g, double omega0,
                                double fringe_period, double x0 = 0.0);

enum class ParabolicBranch {
    Max,  // omega0^2 (1 - ((x-x0)/L)^2), clamped to 0 outside |x-x0| > L
    Null, // omega0^2 (x/L)^2, a quadratic null at the origin
};

DriveProfile parabolic_drive(const TransverseGrid& g, ParabolicBranch branch,
                             double omega0, double length_scale,
                             double x0 = 0.0);

// CSV columns "x_m,omega_d_sq"; samples are linearly interpolated onto the
// grid, clamped to the file's end values outside its x range.
DriveProfile drive_from_csv(const TransverseGrid& g, const std::string& path);

DriveProfile make_drive(const TransverseGrid& g, const DriveSpec& spec);

double drive_peak_intensity(const DriveProfile& d);
double drive_peak_rabi(const DriveProfile& d);

// Length scale L of the parabola osculating a cos^2 fringe peak of period
// Lambda: cos^2(pi u / Lambda) = 1 - (u/L)^2 + O(u^4) with L = Lambda/pi,
// i.e. equal second derivatives -2/L^2 = -2 (pi/Lambda)^2.
double fringe_parabolic_scale(double fringe_period);

} // namespace eitbeam

#endif
