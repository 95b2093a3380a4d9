#ifndef EITBEAM_CONFIG_HPP
#define EITBEAM_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eitbeam/scenario.hpp"
#include "eitbeam/sweep.hpp"

namespace eitbeam {

// Parsed run configuration in user-facing units (Hz for rates and
// frequencies, metres for lengths).  Optional fields record whether the key
// appeared, so dump_config() reproduces exactly the keys that were given.
//
// INI-style format: [section] headers, key = value pairs, '#' or ';'
// comments.  Unknown sections or keys are errors naming the offender.
struct RunConfig {
    // [atom]
    std::optional<double> lambda_m;      // default 794.979e-9
    double density_m3 = 0.0;             // required
    double gamma_r_hz = 0.0;             // required
    std::optional<double> gamma_hz;      // default gamma_r/2
    double gamma_cb_hz = 0.0;            // required
    std::optional<double> detuning_hz;   // default 0

    // [drive]
    std::string pattern;                 // interference|parabolic_max|parabolic_null|file
    std::optional<double> omega0_hz;     // required except for file
    std::optional<double> fringe_period_m;
    std::optional<double> L_m;
    std::optional<double> x0_m;
    std::optional<std::string> file;

    // [probe]
    std::string shape;                   // gaussian|plane
    double amplitude_hz = 0.0;           // required
    std::optional<double> waist_m;       // required for gaussian
    std::optional<double> lens_focal_m;

    // [grid]
    std::optional<int> n;                // default 4096
    std::optional<double> width_m;       // default 8 x widest drive/probe feature

    // [cell]
    double length_m = 0.0;               // required
    std::optional<double> dz_m;          // default: resolution rule

    // [solver]
    std::optional<std::string> kind;     // splitstep|beerlambert
    std::optional<std::string> boundary; // periodic|absorbing
    std::optional<double> pad_fraction;

    // [output]
    std::optional<std::string> dir;
    std::optional<int> snapshots_every;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

// Serialises exactly the keys present; parse(dump(c)) reproduces every
// value bit-for-bit (shortest round-trip number formatting).
std::string dump_config(const RunConfig& c);

// Converts to internal units (angular frequencies), applies defaults, and
// validates cross-field requirements.  Throws ConfigError with the
// offending key in the message.
Scenario build_scenario(const RunConfig& c);

// Sweep axis request parsed from "name=start:stop:count" with count >= 1
// evenly spaced values inclusive of both endpoints (count = 1 -> start).
// Axis names: detuning_hz, cell_length_m, omega0_hz, density_m3.
struct AxisRequest {
    SweepAxis axis = SweepAxis::Detuning;
    std::vector<double> values;  // user-facing units
};

AxisRequest parse_axis_spec(const std::string& spec);

} // namespace eitbeam

#endif
