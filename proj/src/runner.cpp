#include "eitbeam/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "eitbeam/csv.hpp"
#include "eitbeam/errors.hpp"

namespace eitbeam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Optical depth -ln(I_out/I_in), evaluated where the input carries light.
// Entries with negligible input intensity are reported as zero depth (the
// probe never sampled the medium there); fully extinguished outputs are
// clamped so the profile stays finite.
std::vector<double> optical_depth(const ComplexField& in,
                                  const ComplexField& out) {
    std::vector<double> od(in.values.size(), 0.0);
    double imax = 0.0;
    for (const auto& v : in.values) imax = std::max(imax, std::norm(v));
    const double lo = 1e-12 * imax;
    const double out_floor = 1e-30 * imax;
    for (size_t i = 0; i < od.size(); ++i) {
        const double ii = std::norm(in.values[i]);
        const double io = std::norm(out.values[i]);
        if (ii > lo) od[i] = -std::log(std::max(io, out_floor) / ii);
    }
    return od;
}

void append_note(std::string& notes, const std::string& line) {
    notes += line;
    notes += '\n';
}

void write_file(const std::filesystem::path& p, const std::string& body) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw SolverError("cannot write output file '" + p.string() + "'");
    os << body;
}

} // namespace

ScenarioResult run_scenario(const Scenario& s) {
    const TransverseGrid grid = scenario_grid(s);
    ScenarioResult res;
    res.drive = scenario_drive(s, grid);
    const ComplexField probe0 = scenario_probe(s, grid);

    PropagationConfig cfg = s.prop;
    if (cfg.wavenumber <= 0.0) cfg.wavenumber = 2.0 * M_PI / s.atom.lambda;
    res.record = propagate(probe0, res.drive, s.atom, cfg);

    const double pin = field_power(res.record.input);
    const double pout = field_power(res.record.output);
    res.power_fraction = pin > 0.0 ? pout / pin : kNaN;

    if (res.record.weak_probe_warning)
        append_note(res.notes,
                    "note: probe is not weak relative to the drive "
                    "(max|probe| > 0.1 max|drive|); the linear-response "
                    "medium model is being stretched");

    const double rabi = drive_peak_rabi(res.drive);
    try {
        res.predicted_ratio =
            predicted_narrowing_ratio(s.atom, rabi, cfg.cell_length);
    } catch (const std::invalid_argument&) {
        res.predicted_ratio = kNaN;
    }

    try {
        res.drive_metrics = measure(res.drive.intensity, grid, s.min_prominence);
    } catch (const MeasureError& e) {
        res.drive_measure_error = e.what();
        append_note(res.notes, std::string("drive profile unmeasurable: ") +
                                   e.what());
    }

    res.feature_profile = s.feature == ProbeFeature::AbsorptionFeature
                              ? optical_depth(res.record.input, res.record.output)
                              : field_intensity(res.record.output);
    try {
        res.probe_metrics = measure(res.feature_profile, grid, s.min_prominence);
    } catch (const MeasureError& e) {
        res.probe_measure_error = e.what();
        append_note(res.notes, std::string("probe profile unmeasurable: ") +
                                   e.what());
    }
    return res;
}

ScenarioResult run_single(const Scenario& s, const OutputOptions& out) {
    Scenario run = s;
    run.prop.snapshot_every = out.snapshot_every;
    ScenarioResult res = run_scenario(run);

    std::filesystem::create_directories(out.dir);

    {
        std::ostringstream os;
        os << "x_m,drive_intensity,probe_in,probe_out\n";
        const auto& g = res.drive.grid;
        const auto iin = field_intensity(res.record.input);
        const auto iout = field_intensity(res.record.output);
        for (int i = 0; i < g.n; ++i)
            os << format_double(g.x[i], 12) << ','
               << format_double(res.drive.intensity[i], 12) << ','
               << format_double(iin[i], 12) << ','
               << format_double(iout[i], 12) << '\n';
        write_file(out.dir / "profile.csv", os.str());
    }

    for (const auto& [step, field] : res.record.snapshots) {
        std::ostringstream os;
        os << "x_m,re,im,intensity\n";
        for (int i = 0; i < field.grid.n; ++i) {
            const auto v = field.values[i];
            os << format_double(field.grid.x[i], 12) << ','
               << format_double(v.real(), 12) << ','
               << format_double(v.imag(), 12) << ','
               << format_double(std::norm(v), 12) << '\n';
        }
        char name[32];
        std::snprintf(name, sizeof name, "snap_%06d.csv", step);
        write_file(out.dir / name, os.str());
    }

    {
        std::ostringstream os;
        os << "steps: " << res.record.steps << '\n'
           << "dz_m: " << format_double(res.record.dz, 9) << '\n'
           << "power_in: " << format_double(field_power(res.record.input), 9)
           << '\n'
           << "power_out: " << format_double(field_power(res.record.output), 9)
           << '\n'
           << "power_fraction: " << format_double(res.power_fraction, 9)
           << '\n';
        if (res.drive_metrics)
            os << "drive_peaks: " << res.drive_metrics->peak_positions.size()
               << '\n'
               << "drive_fwhm_m: " << format_double(mean_fwhm(*res.drive_metrics), 9)
               << '\n';
        if (res.probe_metrics)
            os << "probe_peaks: " << res.probe_metrics->peak_positions.size()
               << '\n'
               << "probe_fwhm_m: " << format_double(mean_fwhm(*res.probe_metrics), 9)
               << '\n';
        bool reported = false;
        if (res.drive_metrics && res.probe_metrics) {
            try {
                const NarrowingReport rep =
                    narrowing_report(*res.drive_metrics, *res.probe_metrics,
                                     res.predicted_ratio);
                os << narrowing_text(rep);
                reported = true;
            } catch (const MeasureError&) {
                // fewer than two peaks on a profile; fall through to the
                // bare prediction
            }
        }
        if (!reported)
            os << "predicted drive/probe scale ratio: "
               << format_double(res.predicted_ratio, 9) << '\n';
        if (!res.notes.empty()) os << res.notes;
        write_file(out.dir / "metrics.txt", os.str());
    }
    return res;
}

} // namespace eitbeam
