#ifndef EITBEAM_PROPAGATION_HPP
#define EITBEAM_PROPAGATION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "eitbeam/atomic.hpp"
#include "eitbeam/fields.hpp"

namespace eitbeam {

enum class Solver {
    SplitStep,    // symmetric split-step spectral (diffraction + medium)
    BeerLambert,  // local attenuation only, Omega(z) = Omega(0) exp(-kappa z)
};

enum class Boundary {
    Periodic,      // plain FFT wrap-around
    AbsorbingPad,  // super-Gaussian amplitude mask on the outer pad_fraction
};

struct PropagationConfig {
    double cell_length = 0.0;  // z extent of the medium [m]
    // Step size [m].  When unset: dz = min over the applicable resolution
    // caps, max|Re kappa| dz <= 0.05 and kx_max^2 dz / (2k) <= 0.5, capped
    // at cell_length.
    std::optional<double> dz;
    Solver solver = Solver::SplitStep;
    Boundary boundary = Boundary::Periodic;
    double pad_fraction = 0.1;   // absorbed window fraction per side
    double wavenumber = 0.0;     // k = 2 pi / lambda [rad/m]
    bool diffraction = true;     // false: medium factor only (testing hook)
    int snapshot_every = 0;      // record field every m-th step; 0 = never
};

struct PropagationRecord {
    ComplexField input;
    ComplexField output;
    std::vector<std::pair<int, ComplexField>> snapshots; // (step index, field)
    std::vector<double> power_trace;  // power after each step
    int steps = 0;
    double dz = 0.0;                  // effective step actually used
    bool weak_probe_warning = false;  // max|Omega_p| > 0.1 max|Omega_d|
};

// Step size the resolution rule would pick for this problem.
double default_step(const ComplexField& probe, const DriveProfile& drive,
                    const AtomicParams& atom, const PropagationConfig& cfg);

// One symmetric split step of size cfg.dz (or the default rule's step):
// half diffraction, full medium attenuation exp(-kappa(x) dz), half
// diffraction.  Grids of probe and drive must match.
ComplexField step_splitstep(const ComplexField& probe,
                            const DriveProfile& drive,
                            const AtomicParams& atom,
                            const PropagationConfig& cfg);

// March the probe through the cell.  Throws SolverError if any amplitude
// goes non-finite, identifying the step and sample.
PropagationRecord propagate(const ComplexField& probe,
                            const DriveProfile& drive,
                            const AtomicParams& atom,
                            const PropagationConfig& cfg);

// Exact paraxial free-space transport over `distance` in a single spectral
// step (the medium-free limit of the propagator; distance may be any sign).
ComplexField free_space(const ComplexField& probe, double distance,
                        double wavenumber);

// Pointwise Re(kappa(x)) |Omega_p(x)|^2: where the medium is being excited.
// This is the quantity whose spatial structure the transmitted probe maps.
std::vector<double> excited_population_map(const ComplexField& probe,
                                           const DriveProfile& drive,
                                           const AtomicParams& atom);

} // namespace eitbeam

#endif
