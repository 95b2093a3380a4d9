#include "eitbeam/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eitbeam/csv.hpp"
#include "eitbeam/errors.hpp"

namespace eitbeam {

namespace {

void check_grid(const TransverseGrid& g) {
    if (g.n <= 0 || static_cast<int>(g.x.size()) != g.n)
        throw std::invalid_argument("field construction needs a built grid");
}

} // namespace

double field_power(const ComplexField& f) {
    double p = 0.0;
    for (const auto& v : f.values) p += std::norm(v);
    return p * f.grid.dx;
}

std::vector<double> field_intensity(const ComplexField& f) {
    std::vector<double> out(f.values.size());
    std::transform(f.values.begin(), f.values.end(), out.begin(),
                   [](const std::complex<double>& v) { return std::norm(v); });
    return out;
}

double max_abs(const ComplexField& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::norm(v));
    return std::sqrt(m);
}

ComplexField plane_probe(const TransverseGrid& g, double amplitude) {
    check_grid(g);
    if (!(amplitude > 0.0))
        throw std::invalid_argument("probe amplitude must be positive");
    return ComplexField{g, std::vector<std::complex<double>>(
                               g.n, std::complex<double>(amplitude, 0.0))};
}

ComplexField gaussian_probe(const TransverseGrid& g, double amplitude,
                            double waist, double center) {
    check_grid(g);
    if (!(amplitude > 0.0))
        throw std::invalid_argument("probe amplitude must be positive");
    if (!(waist > 0.0))
        throw std::invalid_argument("probe waist must be positive");
    ComplexField f{g, std::vector<std::complex<double>>(g.n)};
    for (int i = 0; i < g.n; ++i) {
        const double u = (g.x[i] - center) / waist;
        f.values[i] = amplitude * std::exp(-u * u);
    }
    return f;
}

ComplexField lens_phase(const ComplexField& f, double focal_length,
                        double wavelength) {
    // f = +-inf is legal (zero phase, the identity lens); only 0 and NaN are
    // meaningless.
    if (focal_length == 0.0 || std::isnan(focal_length))
        throw std::invalid_argument("lens focal length must be non-zero");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavelength must be positive");
    const double k = 2.0 * M_PI / wavelength;
    ComplexField out{f.grid, std::vector<std::complex<double>>(f.grid.n)};
    for (int i = 0; i < f.grid.n; ++i) {
        const double x = f.grid.x[i];
        const double phase = k * x * x / (2.0 * focal_length);
        out.values[i] = f.values[i] * std::polar(1.0, phase);
    }
    return out;
}

DriveProfile interference_drive(const TransverseGrid& g, double omega0,
                                double fringe_period, double x0) {
    check_grid(g);
    if (!(omega0 > 0.0))
        throw std::invalid_argument("drive omega0 must be positive");
    if (!(fringe_period > 2.0 * g.dx))
        throw std::invalid_argument(
            "fringe period " + format_double(fringe_period) +
            " m is not resolved by the grid (dx = " + format_double(g.dx) +
            " m); need period > 2 dx");
    DriveProfile d{g, std::vector<double>(g.n),
                   InterferenceSpec{omega0, fringe_period, x0}};
    const double w2 = omega0 * omega0;
    for (int i = 0; i < g.n; ++i) {
        const double c = std::cos(M_PI * (g.x[i] - x0) / fringe_period);
        d.intensity[i] = w2 * c * c;
    }
    return d;
}

DriveProfile parabolic_drive(const TransverseGrid& g, ParabolicBranch branch,
                             double omega0, double length_scale, double x0) {
    check_grid(g);
    if (!(omega0 > 0.0))
        throw std::invalid_argument("drive omega0 must be positive");
    if (!(length_scale > 0.0))
        throw std::invalid_argument("drive length scale must be positive");
    const double w2 = omega0 * omega0;
    DriveProfile d{g, std::vector<double>(g.n), {}};
    if (branch == ParabolicBranch::Max) {
        d.descriptor = ParabolicMaxSpec{omega0, length_scale, x0};
        for (int i = 0; i < g.n; ++i) {
            const double u = (g.x[i] - x0) / length_scale;
            d.intensity[i] = std::max(0.0, w2 * (1.0 - u * u));
        }
    } else {
        // The null branch models the neighbourhood of a drive zero at the
        // origin; x0 is not part of this profile.
        d.descriptor = ParabolicNullSpec{omega0, length_scale};
        for (int i = 0; i < g.n; ++i) {
            const double u = g.x[i] / length_scale;
            d.intensity[i] = w2 * u * u;
        }
    }
    return d;
}

DriveProfile drive_from_csv(const TransverseGrid& g, const std::string& path) {
    check_grid(g);
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open drive profile file '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("drive profile file '" + path + "' is empty");
    // Trim a UTF-8 BOM and trailing CR before checking the header.
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x_m,omega_d_sq")
        throw ConfigError("drive profile file '" + path +
                          "': expected header 'x_m,omega_d_sq', got '" + line +
                          "'");

    std::vector<double> xs, ys;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError("drive profile file '" + path + "' line " +
                              std::to_string(lineno) + ": expected 2 columns");
        double x, y;
        try {
            x = parse_double(line.substr(0, comma));
            y = parse_double(line.substr(comma + 1));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("drive profile file '" + path + "' line " +
                              std::to_string(lineno) + ": " + e.what());
        }
        if (!std::isfinite(x) || !std::isfinite(y) || y < 0.0)
            throw ConfigError("drive profile file '" + path + "' line " +
                              std::to_string(lineno) +
                              ": intensity must be finite and >= 0");
        if (!xs.empty() && x <= xs.back())
            throw ConfigError("drive profile file '" + path + "' line " +
                              std::to_string(lineno) +
                              ": x_m must be strictly increasing");
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 2)
        throw ConfigError("drive profile file '" + path +
                          "' needs at least 2 samples");

    DriveProfile d{g, std::vector<double>(g.n), FromFileSpec{path}};
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x[i];
        if (x <= xs.front()) {
            d.intensity[i] = ys.front();
        } else if (x >= xs.back()) {
            d.intensity[i] = ys.back();
        } else {
            const auto it = std::upper_bound(xs.begin(), xs.end(), x);
            const size_t j = static_cast<size_t>(it - xs.begin());
            const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
            d.intensity[i] = ys[j - 1] + t * (ys[j] - ys[j - 1]);
        }
    }
    return d;
}

DriveProfile make_drive(const TransverseGrid& g, const DriveSpec& spec) {
    return std::visit(
        [&](const auto& s) -> DriveProfile {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, InterferenceSpec>)
                return interference_drive(g, s.omega0, s.fringe_period, s.x0);
            else if constexpr (std::is_same_v<T, ParabolicMaxSpec>)
                return parabolic_drive(g, ParabolicBranch::Max, s.omega0,
                                       s.length_scale, s.x0);
            else if constexpr (std::is_same_v<T, ParabolicNullSpec>)
                return parabolic_drive(g, ParabolicBranch::Null, s.omega0,
                                       s.length_scale);
            else
                return drive_from_csv(g, s.path);
        },
        spec);
}

double drive_peak_intensity(const DriveProfile& d) {
    double m = 0.0;
    for (double v : d.intensity) m = std::max(m, v);
    return m;
}

double drive_peak_rabi(const DriveProfile& d) {
    return std::sqrt(drive_peak_intensity(d));
}

double fringe_parabolic_scale(double fringe_period) {
    if (!(fringe_period > 0.0))
        throw std::invalid_argument("fringe period must be positive");
    return fringe_period / M_PI;
}

} // namespace eitbeam
