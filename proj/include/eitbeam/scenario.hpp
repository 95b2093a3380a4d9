#ifndef EITBEAM_SCENARIO_HPP
#define EITBEAM_SCENARIO_HPP

#include <optional>
#include <variant>

#include "eitbeam/atomic.hpp"
#include "eitbeam/fields.hpp"
#include "eitbeam/propagation.hpp"

namespace eitbeam {

struct PlaneProbeSpec {
    double amplitude = 0.0;  // [rad/s]
};

struct GaussianProbeSpec {
    double amplitude = 0.0;
    double waist = 0.0;   // 1/e amplitude half-width [m]
    double center = 0.0;
};

using ProbeSpec = std::variant<PlaneProbeSpec, GaussianProbeSpec>;

// How the transmitted probe should be reduced to feature widths:
// bright transmitted peaks (structured-transparency morphology), or the
// absorption feature on the optical-depth profile -ln(I_out/I_in)
// (narrow-dip morphology, where transmission has a notch rather than peaks).
enum class ProbeFeature {
    TransmittedPeaks,
    AbsorptionFeature,
};

// A fully specified single run: medium, drive pattern, probe, grid and
// solver settings, in internal units (rad/s, m).
struct Scenario {
    AtomicParams atom;
    int grid_n = 4096;
    double grid_width = 0.0;
    DriveSpec drive;
    ProbeSpec probe;
    // Thin lens a focal length upstream of the cell centre: the entrance
    // field is the lens output propagated through f - cell_length/2 of free
    // space, so the waist falls mid-cell.
    std::optional<double> lens_focal;
    PropagationConfig prop;
    ProbeFeature feature = ProbeFeature::TransmittedPeaks;
    double min_prominence = 0.2;
};

TransverseGrid scenario_grid(const Scenario& s);
DriveProfile scenario_drive(const Scenario& s, const TransverseGrid& g);

// Probe at the cell entrance (lens and pre-propagation applied).
ComplexField scenario_probe(const Scenario& s, const TransverseGrid& g);

} // namespace eitbeam

#endif
