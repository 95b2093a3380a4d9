#include "eitbeam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eitbeam/csv.hpp"
#include "eitbeam/errors.hpp"

namespace eitbeam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Peak {
    int index = 0;          // sample of the maximum (plateau centre)
    double position = 0.0;  // refined by parabolic interpolation
    double height = 0.0;
    double prominence = 0.0;
    double fwhm = 0.0;
};

// Topographic prominence: walk outward until a strictly higher sample (or
// the window edge) bounds the peak; the reference floor is the higher of
// the two interval minima.
double prominence_of(const std::vector<double>& y, int p) {
    double left_min = y[p];
    for (int i = p - 1; i >= 0 && y[i] <= y[p]; --i)
        left_min = std::min(left_min, y[i]);
    double right_min = y[p];
    const int n = static_cast<int>(y.size());
    for (int i = p + 1; i < n && y[i] <= y[p]; ++i)
        right_min = std::min(right_min, y[i]);
    return y[p] - std::max(left_min, right_min);
}

// Half-height width about sample p at level `level`, linearly interpolated
// at the two crossings.
double width_at_level(const std::vector<double>& y, const TransverseGrid& g,
                      int p, double level) {
    const int n = static_cast<int>(y.size());
    int l = p;
    while (l > 0 && y[l] > level) --l;
    int r = p;
    while (r < n - 1 && y[r] > level) ++r;
    if (y[l] > level || y[r] > level)
        throw MeasureError("feature at x = " + format_double(g.x[p]) +
                           " m does not fall to its half level inside the "
                           "window");
    const double xl =
        g.x[l] + g.dx * (level - y[l]) / (y[l + 1] - y[l]);
    const double xr =
        g.x[r] - g.dx * (level - y[r]) / (y[r - 1] - y[r]);
    return xr - xl;
}

double refine_position(const std::vector<double>& y, const TransverseGrid& g,
                       int p) {
    if (p <= 0 || p >= static_cast<int>(y.size()) - 1) return g.x[p];
    const double denom = y[p - 1] - 2.0 * y[p] + y[p + 1];
    if (denom == 0.0) return g.x[p];
    double delta = 0.5 * (y[p - 1] - y[p + 1]) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    return g.x[p] + delta * g.dx;
}

} // namespace

BeamMetrics measure(const std::vector<double>& profile,
                    const TransverseGrid& grid, double min_prominence) {
    const int n = static_cast<int>(profile.size());
    if (n != grid.n)
        throw std::invalid_argument("profile length " + std::to_string(n) +
                                    " does not match grid n = " +
                                    std::to_string(grid.n));
    if (!(min_prominence > 0.0) || min_prominence > 1.0)
        throw std::invalid_argument("min_prominence must be in (0, 1]");
    for (double v : profile)
        if (!std::isfinite(v))
            throw std::invalid_argument("profile contains non-finite values");

    const double gmax = *std::max_element(profile.begin(), profile.end());
    if (!(gmax > 0.0))
        throw MeasureError("profile has no positive maximum; nothing to "
                           "measure");
    const double floor = min_prominence * gmax;

    // 1) discrete local maxima; a flat plateau counts once, at its leftmost
    //    sample
    std::vector<int> candidates;
    for (int i = 1; i < n - 1;) {
        if (profile[i] <= profile[i - 1]) {
            ++i;
            continue;
        }
        int j = i;  // plateau [i, j]
        while (j < n - 1 && profile[j + 1] == profile[i]) ++j;
        if (j < n - 1 && profile[j + 1] < profile[i]) candidates.push_back(i);
        i = j + 1;
    }

    // 2) maxima need at least 2 samples between them; closer ones merge and
    //    the higher sample represents the pair
    std::vector<int> merged;
    for (int idx : candidates) {
        if (!merged.empty() && idx - merged.back() <= 2) {
            if (profile[idx] > profile[merged.back()]) merged.back() = idx;
        } else {
            merged.push_back(idx);
        }
    }

    // 3) prominence filter, then per-peak width at the half level above the
    //    local valley floor
    std::vector<Peak> peaks;
    for (int p : merged) {
        const double prom = prominence_of(profile, p);
        if (prom < floor) continue;
        Peak pk;
        pk.index = p;
        pk.height = profile[p];
        pk.prominence = prom;
        pk.position = refine_position(profile, grid, p);
        pk.fwhm =
            width_at_level(profile, grid, p, pk.height - 0.5 * prom);
        peaks.push_back(pk);
    }

    if (peaks.empty())
        throw MeasureError("no peaks with prominence >= " +
                           format_double(floor) + " (profile maximum " +
                           format_double(gmax) + ")");

    BeamMetrics m;
    m.total_power = 0.0;
    for (double v : profile) m.total_power += v;
    m.total_power *= grid.dx;

    for (const auto& pk : peaks) {
        m.peak_positions.push_back(pk.position);
        m.peak_fwhm.push_back(pk.fwhm);
    }

    if (peaks.size() >= 2) {
        double spacing = 0.0;
        for (size_t i = 1; i < peaks.size(); ++i)
            spacing += m.peak_positions[i] - m.peak_positions[i - 1];
        m.peak_spacing = spacing / (peaks.size() - 1);
        m.finesse = m.peak_spacing / mean_fwhm(m);
        const auto lo = profile.begin() + peaks.front().index;
        const auto hi = profile.begin() + peaks.back().index + 1;
        m.valley_minimum = *std::min_element(lo, hi) / gmax;
    } else {
        m.peak_spacing = kNaN;
        m.finesse = kNaN;
        m.valley_minimum = kNaN;
    }
    return m;
}

double full_width_at_fraction(const std::vector<double>& profile,
                              const TransverseGrid& grid, double fraction) {
    if (profile.size() != static_cast<size_t>(grid.n))
        throw std::invalid_argument("profile length does not match grid");
    if (!(fraction > 0.0) || !(fraction < 1.0))
        throw std::invalid_argument("fraction must be in (0, 1)");
    const auto mx = std::max_element(profile.begin(), profile.end());
    if (!(*mx > 0.0))
        throw MeasureError("profile has no positive maximum");
    const int p = static_cast<int>(mx - profile.begin());
    return width_at_level(profile, grid, p, fraction * *mx);
}

double mean_fwhm(const BeamMetrics& m) {
    if (m.peak_fwhm.empty()) return kNaN;
    double s = 0.0;
    for (double w : m.peak_fwhm) s += w;
    return s / m.peak_fwhm.size();
}

double predicted_width_low_od(const AtomicParams& p, double drive_rabi,
                              double length_scale) {
    if (!(drive_rabi > 0.0) || !(length_scale > 0.0))
        throw std::invalid_argument(
            "low-OD width needs positive drive Rabi and length scale");
    auto [gab, gcb] = complex_rates(p);
    return length_scale * std::sqrt(std::abs(gab.value() * gcb.value())) /
           drive_rabi;
}

double predicted_width_high_od(const AtomicParams& p, double drive_rabi,
                               double length_scale, double cell_length) {
    if (!(drive_rabi > 0.0) || !(length_scale > 0.0) || !(cell_length > 0.0))
        throw std::invalid_argument(
            "high-OD width needs positive drive Rabi, length scale and cell "
            "length");
    if (!(p.eta > 0.0) || !(p.gamma_cb > 0.0))
        throw std::invalid_argument(
            "high-OD width needs eta > 0 and gamma_cb > 0");
    return length_scale * drive_rabi /
           std::sqrt(p.eta * p.gamma_cb * cell_length);
}

double predicted_narrowing_ratio(const AtomicParams& p, double drive_rabi,
                                 double cell_length) {
    if (!(drive_rabi > 0.0) || !(cell_length > 0.0))
        throw std::invalid_argument(
            "narrowing ratio needs positive drive Rabi and cell length");
    const double w2 = drive_rabi * drive_rabi;
    const double om2 = p.detuning * p.detuning;
    return std::sqrt(p.eta * cell_length *
                     (p.gamma_cb / w2 + 2.0 * p.gamma * om2 / (w2 * w2)));
}

NarrowingReport narrowing_report(const BeamMetrics& drive,
                                 const BeamMetrics& probe,
                                 double predicted_ratio) {
    if (drive.peak_fwhm.size() < 2 || probe.peak_fwhm.size() < 2)
        throw MeasureError("narrowing report needs at least two measured "
                           "peaks on each profile");
    NarrowingReport r;
    r.drive_fwhm = mean_fwhm(drive);
    r.probe_fwhm = mean_fwhm(probe);
    r.fwhm_ratio = r.drive_fwhm / r.probe_fwhm;
    r.drive_finesse = drive.finesse;
    r.probe_finesse = probe.finesse;
    r.finesse_ratio = probe.finesse / drive.finesse;
    r.predicted_ratio = predicted_ratio;
    return r;
}

std::string narrowing_text(const NarrowingReport& r) {
    std::ostringstream os;
    os << "drive FWHM:       " << format_double(r.drive_fwhm, 9) << " m\n"
       << "probe FWHM:       " << format_double(r.probe_fwhm, 9) << " m\n"
       << "FWHM ratio (d/p): " << format_double(r.fwhm_ratio, 9) << "\n"
       << "drive finesse:    " << format_double(r.drive_finesse, 9) << "\n"
       << "probe finesse:    " << format_double(r.probe_finesse, 9) << "\n"
       << "finesse ratio:    " << format_double(r.finesse_ratio, 9) << "\n"
       << "predicted drive/probe scale ratio: "
       << format_double(r.predicted_ratio, 9) << "\n";
    return os.str();
}

std::string narrowing_csv_header() {
    return "drive_fwhm_m,probe_fwhm_m,fwhm_ratio,drive_finesse,"
           "probe_finesse,finesse_ratio,predicted_ratio";
}

std::string narrowing_csv_row(const NarrowingReport& r) {
    std::ostringstream os;
    os << format_double(r.drive_fwhm, 12) << ',' << format_double(r.probe_fwhm, 12)
       << ',' << format_double(r.fwhm_ratio, 12) << ','
       << format_double(r.drive_finesse, 12) << ','
       << format_double(r.probe_finesse, 12) << ','
       << format_double(r.finesse_ratio, 12) << ','
       << format_double(r.predicted_ratio, 12);
    return os.str();
}

} // namespace eitbeam
