#include "eitbeam/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "eitbeam/csv.hpp"
#include "eitbeam/errors.hpp"

namespace eitbeam {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// section -> allowed keys; the parser rejects anything else by name.
const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"atom",
         {"lambda_m", "density_m3", "gamma_r_hz", "gamma_hz", "gamma_cb_hz",
          "detuning_hz"}},
        {"drive",
         {"pattern", "omega0_hz", "fringe_period_m", "L_m", "x0_m", "file"}},
        {"probe", {"shape", "amplitude_hz", "waist_m", "lens_focal_m"}},
        {"grid", {"n", "width_m"}},
        {"cell", {"length_m", "dz_m"}},
        {"solver", {"kind", "boundary", "pad_fraction"}},
        {"output", {"dir", "snapshots_every"}},
    };
    return s;
}

double num_value(const std::string& section, const std::string& key,
                 const std::string& value) {
    try {
        return parse_double(value);
    } catch (const std::invalid_argument&) {
        throw ConfigError("[" + section + "] " + key + ": not a number: '" +
                          value + "'");
    }
}

int int_value(const std::string& section, const std::string& key,
              const std::string& value) {
    int v = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("[" + section + "] " + key +
                          ": not an integer: '" + value + "'");
    return v;
}

struct KV {
    std::string section;
    std::string key;
    std::string value;
};

std::vector<KV> tokenize(const std::string& text) {
    std::vector<KV> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": unterminated section header '" + line +
                                  "'");
            section = trim(line.substr(1, line.size() - 2));
            if (schema().find(section) == schema().end())
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": key outside any [section]");
        KV kv{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        const auto& allowed = schema().at(section);
        if (allowed.find(kv.key) == allowed.end())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": unknown key '" + kv.key + "' in [" + section +
                              "]");
        if (!seen.insert(section + "." + kv.key).second)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": duplicate key '" + kv.key + "' in [" +
                              section + "]");
        if (kv.value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key '" +
                              kv.key + "' has no value");
        out.push_back(std::move(kv));
    }
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::set<std::string> present;
    for (const auto& kv : tokenize(text)) {
        present.insert(kv.section + "." + kv.key);
        const std::string& s = kv.section;
        const std::string& k = kv.key;
        const std::string& v = kv.value;
        if (s == "atom") {
            if (k == "lambda_m") c.lambda_m = num_value(s, k, v);
            else if (k == "density_m3") c.density_m3 = num_value(s, k, v);
            else if (k == "gamma_r_hz") c.gamma_r_hz = num_value(s, k, v);
            else if (k == "gamma_hz") c.gamma_hz = num_value(s, k, v);
            else if (k == "gamma_cb_hz") c.gamma_cb_hz = num_value(s, k, v);
            else c.detuning_hz = num_value(s, k, v);
        } else if (s == "drive") {
            if (k == "pattern") c.pattern = v;
            else if (k == "omega0_hz") c.omega0_hz = num_value(s, k, v);
            else if (k == "fringe_period_m") c.fringe_period_m = num_value(s, k, v);
            else if (k == "L_m") c.L_m = num_value(s, k, v);
            else if (k == "x0_m") c.x0_m = num_value(s, k, v);
            else c.file = v;
        } else if (s == "probe") {
            if (k == "shape") c.shape = v;
            else if (k == "amplitude_hz") c.amplitude_hz = num_value(s, k, v);
            else if (k == "waist_m") c.waist_m = num_value(s, k, v);
            else c.lens_focal_m = num_value(s, k, v);
        } else if (s == "grid") {
            if (k == "n") c.n = int_value(s, k, v);
            else c.width_m = num_value(s, k, v);
        } else if (s == "cell") {
            if (k == "length_m") c.length_m = num_value(s, k, v);
            else c.dz_m = num_value(s, k, v);
        } else if (s == "solver") {
            if (k == "kind") c.kind = v;
            else if (k == "boundary") c.boundary = v;
            else c.pad_fraction = num_value(s, k, v);
        } else {  // output
            if (k == "dir") c.dir = v;
            else c.snapshots_every = int_value(s, k, v);
        }
    }

    const char* required[] = {"atom.density_m3", "atom.gamma_r_hz",
                              "atom.gamma_cb_hz", "drive.pattern",
                              "probe.shape",     "probe.amplitude_hz",
                              "cell.length_m"};
    for (const char* r : required)
        if (present.find(r) == present.end()) {
            const std::string key(r);
            const auto dot = key.find('.');
            throw ConfigError("missing required key '" + key.substr(dot + 1) +
                              "' in [" + key.substr(0, dot) + "]");
        }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream body;
    body << in.rdbuf();
    return parse_config(body.str());
}

std::string dump_config(const RunConfig& c) {
    std::ostringstream os;
    auto put = [&os](const char* key, const std::string& v) {
        os << key << " = " << v << '\n';
    };
    auto putd = [&put](const char* key, double v) { put(key, format_double(v)); };

    os << "[atom]\n";
    if (c.lambda_m) putd("lambda_m", *c.lambda_m);
    putd("density_m3", c.density_m3);
    putd("gamma_r_hz", c.gamma_r_hz);
    if (c.gamma_hz) putd("gamma_hz", *c.gamma_hz);
    putd("gamma_cb_hz", c.gamma_cb_hz);
    if (c.detuning_hz) putd("detuning_hz", *c.detuning_hz);

    os << "[drive]\n";
    put("pattern", c.pattern);
    if (c.omega0_hz) putd("omega0_hz", *c.omega0_hz);
    if (c.fringe_period_m) putd("fringe_period_m", *c.fringe_period_m);
    if (c.L_m) putd("L_m", *c.L_m);
    if (c.x0_m) putd("x0_m", *c.x0_m);
    if (c.file) put("file", *c.file);

    os << "[probe]\n";
    put("shape", c.shape);
    putd("amplitude_hz", c.amplitude_hz);
    if (c.waist_m) putd("waist_m", *c.waist_m);
    if (c.lens_focal_m) putd("lens_focal_m", *c.lens_focal_m);

    if (c.n || c.width_m) {
        os << "[grid]\n";
        if (c.n) put("n", std::to_string(*c.n));
        if (c.width_m) putd("width_m", *c.width_m);
    }

    os << "[cell]\n";
    putd("length_m", c.length_m);
    if (c.dz_m) putd("dz_m", *c.dz_m);

    if (c.kind || c.boundary || c.pad_fraction) {
        os << "[solver]\n";
        if (c.kind) put("kind", *c.kind);
        if (c.boundary) put("boundary", *c.boundary);
        if (c.pad_fraction) putd("pad_fraction", *c.pad_fraction);
    }

    if (c.dir || c.snapshots_every) {
        os << "[output]\n";
        if (c.dir) put("dir", *c.dir);
        if (c.snapshots_every)
            put("snapshots_every", std::to_string(*c.snapshots_every));
    }
    return os.str();
}

Scenario build_scenario(const RunConfig& c) {
    Scenario s;

    try {
        s.atom = AtomicParams::make(
            c.lambda_m.value_or(794.979e-9), c.density_m3,
            kTwoPi * c.gamma_r_hz, kTwoPi * c.gamma_cb_hz,
            kTwoPi * c.detuning_hz.value_or(0.0),
            c.gamma_hz ? std::optional<double>(kTwoPi * *c.gamma_hz)
                       : std::nullopt);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[atom] ") + e.what());
    }

    // -- drive ------------------------------------------------------------
    auto need = [](const std::optional<double>& v, const char* key,
                   const char* pattern) {
        if (!v)
            throw ConfigError(std::string("[drive] pattern '") + pattern +
                              "' requires key '" + key + "'");
        return *v;
    };
    double feature = 0.0;  // widest transverse feature, for the width default
    if (c.pattern == "interference") {
        InterferenceSpec d;
        d.omega0 = kTwoPi * need(c.omega0_hz, "omega0_hz", "interference");
        d.fringe_period =
            need(c.fringe_period_m, "fringe_period_m", "interference");
        d.x0 = c.x0_m.value_or(0.0);
        s.drive = d;
        feature = std::max(feature, d.fringe_period);
    } else if (c.pattern == "parabolic_max" || c.pattern == "parabolic_null") {
        const bool is_max = c.pattern == "parabolic_max";
        const double omega0 =
            kTwoPi * need(c.omega0_hz, "omega0_hz", c.pattern.c_str());
        const double L = need(c.L_m, "L_m", c.pattern.c_str());
        if (is_max)
            s.drive = ParabolicMaxSpec{omega0, L, c.x0_m.value_or(0.0)};
        else
            s.drive = ParabolicNullSpec{omega0, L};
        feature = std::max(feature, L);
    } else if (c.pattern == "file") {
        if (!c.file)
            throw ConfigError("[drive] pattern 'file' requires key 'file'");
        s.drive = FromFileSpec{*c.file};
    } else {
        throw ConfigError("[drive] unknown pattern '" + c.pattern +
                          "' (expected interference, parabolic_max, "
                          "parabolic_null or file)");
    }

    // -- probe ------------------------------------------------------------
    if (c.shape == "gaussian") {
        if (!c.waist_m)
            throw ConfigError("[probe] shape 'gaussian' requires key 'waist_m'");
        s.probe = GaussianProbeSpec{kTwoPi * c.amplitude_hz, *c.waist_m, 0.0};
        feature = std::max(feature, *c.waist_m);
    } else if (c.shape == "plane") {
        s.probe = PlaneProbeSpec{kTwoPi * c.amplitude_hz};
    } else {
        throw ConfigError("[probe] unknown shape '" + c.shape +
                          "' (expected gaussian or plane)");
    }
    if (c.lens_focal_m) s.lens_focal = *c.lens_focal_m;

    // -- grid -------------------------------------------------------------
    s.grid_n = c.n.value_or(4096);
    if (c.width_m) {
        s.grid_width = *c.width_m;
    } else if (feature > 0.0) {
        s.grid_width = 8.0 * feature;
    } else {
        throw ConfigError(
            "[grid] width_m is required when no transverse feature scale "
            "(probe waist, fringe period or drive length scale) is available "
            "to derive it");
    }
    try {
        (void)make_grid(s.grid_n, s.grid_width);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[grid] ") + e.what());
    }

    // -- cell / solver ----------------------------------------------------
    s.prop.cell_length = c.length_m;
    if (c.dz_m) s.prop.dz = *c.dz_m;
    s.prop.wavenumber = kTwoPi / s.atom.lambda;
    const std::string kind = c.kind.value_or("splitstep");
    if (kind == "splitstep") s.prop.solver = Solver::SplitStep;
    else if (kind == "beerlambert") s.prop.solver = Solver::BeerLambert;
    else
        throw ConfigError("[solver] unknown kind '" + kind +
                          "' (expected splitstep or beerlambert)");
    const std::string boundary = c.boundary.value_or("periodic");
    if (boundary == "periodic") s.prop.boundary = Boundary::Periodic;
    else if (boundary == "absorbing") s.prop.boundary = Boundary::AbsorbingPad;
    else
        throw ConfigError("[solver] unknown boundary '" + boundary +
                          "' (expected periodic or absorbing)");
    if (c.pad_fraction) {
        if (*c.pad_fraction < 0.0 || *c.pad_fraction > 0.45)
            throw ConfigError("[solver] pad_fraction must be in [0, 0.45], got " +
                              format_double(*c.pad_fraction));
        s.prop.pad_fraction = *c.pad_fraction;
    }
    if (!(c.length_m > 0.0))
        throw ConfigError("[cell] length_m must be positive, got " +
                          format_double(c.length_m));
    if (c.dz_m && (!(*c.dz_m > 0.0) || *c.dz_m > c.length_m))
        throw ConfigError("[cell] dz_m must satisfy 0 < dz_m <= length_m, got " +
                          format_double(*c.dz_m));
    if (c.snapshots_every) {
        if (*c.snapshots_every < 0)
            throw ConfigError("[output] snapshots_every must be >= 0, got " +
                              std::to_string(*c.snapshots_every));
        s.prop.snapshot_every = *c.snapshots_every;
    }

    // Dip-shaped transparency (a drive null) leaves no transmitted peaks to
    // measure; such runs are reduced on the optical-depth profile instead.
    s.feature = c.pattern == "parabolic_null" ? ProbeFeature::AbsorptionFeature
                                              : ProbeFeature::TransmittedPeaks;
    return s;
}

AxisRequest parse_axis_spec(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("axis spec must look like 'name=start:stop:count', "
                          "got '" + spec + "'");
    const std::string name = trim(spec.substr(0, eq));
    const std::string range = trim(spec.substr(eq + 1));

    AxisRequest req;
    if (name == "detuning_hz") req.axis = SweepAxis::Detuning;
    else if (name == "cell_length_m") req.axis = SweepAxis::CellLength;
    else if (name == "omega0_hz") req.axis = SweepAxis::DriveStrength;
    else if (name == "density_m3") req.axis = SweepAxis::Density;
    else
        throw ConfigError("unknown sweep axis '" + name +
                          "' (expected detuning_hz, cell_length_m, omega0_hz "
                          "or density_m3)");

    const auto c1 = range.find(':');
    const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        range.find(':', c2 + 1) != std::string::npos)
        throw ConfigError("axis range must be 'start:stop:count', got '" +
                          range + "'");
    double start, stop;
    int count;
    try {
        start = parse_double(range.substr(0, c1));
        stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("axis range: ") + e.what());
    }
    count = int_value("axis", "count", trim(range.substr(c2 + 1)));
    if (count < 1)
        throw ConfigError("axis count must be >= 1, got " +
                          std::to_string(count));
    if (count == 1) {
        if (start != stop)
            throw ConfigError("axis count 1 requires start == stop, got " +
                              range);
        req.values = {start};
        return req;
    }
    if (!(stop > start))
        throw ConfigError("axis values must be strictly increasing "
                          "(start < stop), got '" + range + "'");
    req.values.resize(count);
    for (int i = 0; i < count; ++i)
        req.values[i] = start + (stop - start) * i / (count - 1);
    return req;
}

} // namespace eitbeam
