#include "eitbeam/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "eitbeam/csv.hpp"
#include "eitbeam/errors.hpp"
#include "eitbeam/runner.hpp"

namespace eitbeam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

// True when the row produced no usable physics at all (propagation threw).
bool hard_failure(const SweepRow& r) {
    return !std::isfinite(r.power_fraction);
}

SweepRow run_one(const SweepSpec& spec, double value) {
    SweepRow row;
    row.axis_value = value;
    row.probe_fwhm = kNaN;
    row.drive_fwhm = kNaN;
    row.ratio_measured = kNaN;
    row.ratio_predicted = kNaN;
    row.power_fraction = kNaN;
    try {
        const Scenario s = scenario_with(spec.base, spec.axis, value);
        const ScenarioResult res = run_scenario(s);
        row.power_fraction = res.power_fraction;
        row.ratio_predicted = res.predicted_ratio;
        if (res.probe_metrics) row.probe_fwhm = mean_fwhm(*res.probe_metrics);
        if (res.drive_metrics) row.drive_fwhm = mean_fwhm(*res.drive_metrics);
        if (res.probe_metrics && res.drive_metrics)
            row.ratio_measured = row.drive_fwhm / row.probe_fwhm;
        std::string err;
        if (!res.drive_measure_error.empty())
            err += "drive: " + res.drive_measure_error;
        if (!res.probe_measure_error.empty()) {
            if (!err.empty()) err += "; ";
            err += "probe: " + res.probe_measure_error;
        }
        row.error = sanitize(err);
    } catch (const std::exception& e) {
        row.error = sanitize(e.what());
    }
    return row;
}

} // namespace

std::string axis_key(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Detuning: return "detuning_hz";
        case SweepAxis::CellLength: return "cell_length_m";
        case SweepAxis::DriveStrength: return "omega0_hz";
        case SweepAxis::Density: return "density_m3";
    }
    return "unknown";
}

Scenario scenario_with(const Scenario& base, SweepAxis axis, double value) {
    Scenario s = base;
    switch (axis) {
        case SweepAxis::Detuning:
            s.atom.detuning = 2.0 * M_PI * value;
            break;
        case SweepAxis::CellLength:
            s.prop.cell_length = value;
            break;
        case SweepAxis::DriveStrength: {
            const double omega0 = 2.0 * M_PI * value;
            std::visit(
                [&](auto& d) {
                    using T = std::decay_t<decltype(d)>;
                    if constexpr (std::is_same_v<T, FromFileSpec>)
                        throw ConfigError(
                            "file-based drive profiles cannot be swept in "
                            "omega0_hz");
                    else
                        d.omega0 = omega0;
                },
                s.drive);
            break;
        }
        case SweepAxis::Density:
            // Re-derive so the cached eta follows the new density.
            s.atom = AtomicParams::make(base.atom.lambda, value,
                                        base.atom.gamma_r, base.atom.gamma_cb,
                                        base.atom.detuning, base.atom.gamma);
            break;
    }
    return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs) {
    if (spec.values.empty())
        throw ConfigError("sweep needs at least one axis value");
    for (size_t i = 0; i < spec.values.size(); ++i) {
        if (!std::isfinite(spec.values[i]))
            throw ConfigError("sweep axis values must be finite");
        if (i > 0 && !(spec.values[i] > spec.values[i - 1]))
            throw ConfigError(
                "sweep axis values must be strictly increasing");
    }
    const size_t count = spec.values.size();
    std::vector<SweepRow> rows(count);

    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));

    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i)
            rows[i] = run_one(spec, spec.values[i]);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < count;
                     i = next.fetch_add(1))
                    rows[i] = run_one(spec, spec.values[i]);
            });
        for (auto& t : pool) t.join();
    }

    if (std::all_of(rows.begin(), rows.end(), hard_failure))
        throw SolverError("every sweep row failed; first error: " +
                          rows.front().error);
    return rows;
}

void write_sweep_csv(std::ostream& os, SweepAxis axis,
                     const std::vector<SweepRow>& rows) {
    const std::string key = axis_key(axis);
    os << "axis_name,axis_value,probe_fwhm_m,drive_fwhm_m,ratio_measured,"
          "ratio_predicted,power_fraction,error\n";
    for (const auto& r : rows) {
        os << key << ',' << format_double(r.axis_value, 12) << ','
           << format_double(r.probe_fwhm, 12) << ','
           << format_double(r.drive_fwhm, 12) << ','
           << format_double(r.ratio_measured, 12) << ','
           << format_double(r.ratio_predicted, 12) << ','
           << format_double(r.power_fraction, 12) << ',' << r.error << '\n';
    }
}

} // namespace eitbeam
