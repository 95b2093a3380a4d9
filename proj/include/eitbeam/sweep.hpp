#ifndef EITBEAM_SWEEP_HPP
#define EITBEAM_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "eitbeam/scenario.hpp"

namespace eitbeam {

enum class SweepAxis {
    Detuning,      // axis values in Hz (two-photon detuning)
    CellLength,    // metres
    DriveStrength, // peak drive Rabi frequency, Hz
    Density,       // atoms per m^3
};

// CSV column name / axis-spec key for an axis.
std::string axis_key(SweepAxis axis);

// Base scenario with one parameter replaced by `value` (user-facing units:
// Hz axes are converted to rad/s internally).  DriveStrength rescales the
// descriptor's omega0; file-based drives cannot be strength-swept.
Scenario scenario_with(const Scenario& base, SweepAxis axis, double value);

struct SweepSpec {
    Scenario base;
    SweepAxis axis = SweepAxis::Detuning;
    std::vector<double> values;  // user-facing units, CSV order
};

// One sweep point.  On failure the metrics are NaN and `error` holds the
// reason; on success `error` is empty.
struct SweepRow {
    double axis_value = 0.0;
    double probe_fwhm = 0.0;
    double drive_fwhm = 0.0;
    double ratio_measured = 0.0;   // drive_fwhm / probe_fwhm
    double ratio_predicted = 0.0;
    double power_fraction = 0.0;   // transmitted/incident probe power
    std::string error;
};

// Runs every value on a pool of `jobs` worker threads (0 = hardware
// concurrency).  Row order always follows spec.values, independent of
// scheduling, and identical inputs yield identical rows.  Throws
// SolverError only if every row failed.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 0);

// Header "axis_name,axis_value,probe_fwhm_m,drive_fwhm_m,ratio_measured,
// ratio_predicted,power_fraction,error"; the axis key repeats in every
// row's first column.  NaN fields are serialised as "nan"; commas in error
// text become ';'.
void write_sweep_csv(std::ostream& os, SweepAxis axis,
                     const std::vector<SweepRow>& rows);

} // namespace eitbeam

#endif
