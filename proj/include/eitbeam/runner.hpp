#ifndef EITBEAM_RUNNER_HPP
#define EITBEAM_RUNNER_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "eitbeam/analysis.hpp"
#include "eitbeam/scenario.hpp"

namespace eitbeam {

// Everything a single propagation produces, measured.
struct ScenarioResult {
    DriveProfile drive;
    PropagationRecord record;
    std::optional<BeamMetrics> drive_metrics;   // unset if unmeasurable
    std::optional<BeamMetrics> probe_metrics;   // on the feature profile
    std::string drive_measure_error;            // why drive_metrics is unset
    std::string probe_measure_error;
    std::vector<double> feature_profile;        // intensity or optical depth
    double power_fraction = 0.0;
    double predicted_ratio = 0.0;  // NaN when prediction is inapplicable
    std::string notes;             // warnings and caveats, one per line
};

ScenarioResult run_scenario(const Scenario& s);

// Output options resolved from config + CLI flags.
struct OutputOptions {
    std::filesystem::path dir = ".";
    int snapshot_every = 0;
};

// Runs the scenario and writes profile.csv
// (x_m,drive_intensity,probe_in,probe_out), metrics.txt, and optional
// snap_NNNNNN.csv field snapshots.  Measurement failures are recorded in
// metrics.txt rather than raised; solver failures propagate.
ScenarioResult run_single(const Scenario& s, const OutputOptions& out);

} // namespace eitbeam

#endif
