// Command-line front end: single runs, parameter sweeps, and built-in
// physics selfchecks for the structured-transparency beam simulator.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "eitbeam/config.hpp"
#include "eitbeam/csv.hpp"
#include "eitbeam/errors.hpp"
#include "eitbeam/runner.hpp"
#include "eitbeam/selfcheck.hpp"
#include "eitbeam/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelfcheck = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct CliOptions {
    std::string config_path;
    std::string axis_spec;
    std::string out_dir;
    int jobs = 0;
    int snapshots = -1;  // -1: keep the config's setting
};

eitbeam::OutputOptions resolve_output(const eitbeam::RunConfig& rc,
                                      const CliOptions& opt) {
    eitbeam::OutputOptions oo;
    oo.dir = !opt.out_dir.empty() ? opt.out_dir : rc.dir.value_or(".");
    oo.snapshot_every =
        opt.snapshots >= 0 ? opt.snapshots : rc.snapshots_every.value_or(0);
    return oo;
}

int do_run(const CliOptions& opt) {
    const auto rc = eitbeam::load_config(opt.config_path);
    const auto scenario = eitbeam::build_scenario(rc);
    const auto out = resolve_output(rc, opt);
    const auto res = eitbeam::run_single(scenario, out);

    std::cout << "propagated " << res.record.steps << " steps (dz = "
              << eitbeam::format_double(res.record.dz, 6)
              << " m), transmitted power fraction "
              << eitbeam::format_double(res.power_fraction, 6) << "\n";
    if (res.drive_metrics)
        std::cout << "drive: " << res.drive_metrics->peak_positions.size()
                  << " peak(s), mean FWHM "
                  << eitbeam::format_double(mean_fwhm(*res.drive_metrics), 6)
                  << " m\n";
    if (res.probe_metrics)
        std::cout << "probe: " << res.probe_metrics->peak_positions.size()
                  << " peak(s), mean FWHM "
                  << eitbeam::format_double(mean_fwhm(*res.probe_metrics), 6)
                  << " m\n";
    if (!res.notes.empty()) std::cerr << res.notes;
    std::cout << "outputs in " << out.dir.string() << "\n";
    return kExitOk;
}

int do_sweep(const CliOptions& opt) {
    const auto rc = eitbeam::load_config(opt.config_path);
    eitbeam::SweepSpec spec;
    spec.base = eitbeam::build_scenario(rc);
    const auto axis = eitbeam::parse_axis_spec(opt.axis_spec);
    spec.axis = axis.axis;
    spec.values = axis.values;

    const auto rows = eitbeam::run_sweep(spec, opt.jobs);

    const std::filesystem::path dir =
        !opt.out_dir.empty() ? opt.out_dir : rc.dir.value_or(".");
    std::filesystem::create_directories(dir);
    const auto path = dir / "sweep.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw eitbeam::SolverError("cannot write '" + path.string() + "'");
    eitbeam::write_sweep_csv(os, spec.axis, rows);

    size_t errors = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) ++errors;
    std::cout << "wrote " << path.string() << " (" << rows.size()
              << " rows, " << errors << " with errors)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subwavelength probe structuring in a drive-patterned "
                 "transparency medium"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* run = app.add_subcommand("run", "Propagate one configuration and "
                                          "write profile.csv / metrics.txt");
    run->add_option("config", opt.config_path, "Run configuration file")
        ->required();
    run->add_option("--out", opt.out_dir, "Output directory (overrides config)");
    run->add_option("--snapshots", opt.snapshots,
                    "Write a field snapshot every M steps");

    auto* sweep = app.add_subcommand(
        "sweep", "Run one propagation per axis value and write sweep.csv");
    sweep->add_option("config", opt.config_path, "Run configuration file")
        ->required();
    sweep->add_option("--axis", opt.axis_spec,
                      "Axis spec, e.g. detuning_hz=-2e6:2e6:21")
        ->required();
    sweep->add_option("--jobs", opt.jobs,
                      "Worker threads (0 = hardware concurrency)");
    sweep->add_option("--out", opt.out_dir, "Output directory (overrides config)");

    auto* selfcheck = app.add_subcommand(
        "selfcheck", "Verify the solver against closed-form physics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (selfcheck->parsed())
            return eitbeam::report_selfcheck(std::cout) ? kExitOk
                                                        : kExitSelfcheck;
        if (run->parsed()) return do_run(opt);
        return do_sweep(opt);
    } catch (const eitbeam::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const eitbeam::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
