#ifndef EITBEAM_ANALYSIS_HPP
#define EITBEAM_ANALYSIS_HPP

#include <string>
#include <vector>

#include "eitbeam/atomic.hpp"
#include "eitbeam/grid.hpp"

namespace eitbeam {

// Peak structure of a non-negative transverse profile.
//
// Peaks are local maxima whose topographic prominence exceeds
// min_prominence * (global max); a flat plateau counts as one maximum at
// its leftmost sample, and maxima separated by fewer than two samples are
// merged (the higher one represents the pair).  Positions are refined by a
// parabolic fit through the three samples around each maximum.  Each FWHM
// is measured at half height above the higher of the two valley floors
// flanking the peak, with linear interpolation between samples.
//
// Everything but total_power is invariant under scaling the profile by a
// positive constant; valley_minimum is therefore stored as a fraction of
// the global maximum.
struct BeamMetrics {
    std::vector<double> peak_positions;  // [m], ascending
    std::vector<double> peak_fwhm;       // [m], same order
    double peak_spacing = 0.0;  // mean adjacent spacing; NaN if < 2 peaks
    double finesse = 0.0;       // peak_spacing / mean FWHM; NaN if < 2 peaks
    double total_power = 0.0;   // sum y dx
    double valley_minimum = 0.0;  // min between outermost peaks / global max
};

BeamMetrics measure(const std::vector<double>& profile,
                    const TransverseGrid& grid, double min_prominence = 0.2);

// Width of the global-maximum feature at fraction*max above zero baseline,
// linearly interpolated.  Helper for single-feature profiles (Gaussian
// waists, absorption features).
double full_width_at_fraction(const std::vector<double>& profile,
                              const TransverseGrid& grid, double fraction);

double mean_fwhm(const BeamMetrics& m);

// Half-width scales of the transparency structure written by a drive
// intensity |Omega|^2 (1 - (x/L)^2) near its maximum (low optical depth)
//
//     dx_low = L sqrt(|Gamma_ab Gamma_cb|) / |Omega|
//
// and of the surviving bright feature after an optically thick cell
// (two-photon resonant case)
//
//     dx_high = L |Omega| / sqrt(eta gamma_cb z).
double predicted_width_low_od(const AtomicParams& p, double drive_rabi,
                              double length_scale);
double predicted_width_high_od(const AtomicParams& p, double drive_rabi,
                               double length_scale, double cell_length);

// Ratio of drive-pattern scale to transmitted-feature scale at the end of
// the cell, R = sqrt(eta z (gamma_cb/|Omega|^2 + 2 gamma omega^2/|Omega|^4)):
// how much finer than the drive pattern the transmitted structure is.
double predicted_narrowing_ratio(const AtomicParams& p, double drive_rabi,
                                 double cell_length);

// Side-by-side comparison of drive pattern and transmitted probe.
// fwhm_ratio = drive/probe, oriented like the predicted scale ratio R
// (> 1 means the probe features are narrower); finesse_ratio = probe/drive
// (> 1 likewise means narrowing, finer probe structure per spacing).
// Requires at least two measured peaks on each profile so the finesse
// ratios are defined.
struct NarrowingReport {
    double drive_fwhm = 0.0;
    double probe_fwhm = 0.0;
    double fwhm_ratio = 0.0;       // drive/probe
    double drive_finesse = 0.0;
    double probe_finesse = 0.0;
    double finesse_ratio = 0.0;    // probe/drive
    double predicted_ratio = 0.0;  // drive/probe scale prediction; may be NaN
};

NarrowingReport narrowing_report(const BeamMetrics& drive,
                                 const BeamMetrics& probe,
                                 double predicted_ratio);

std::string narrowing_text(const NarrowingReport& r);
std::string narrowing_csv_header();
std::string narrowing_csv_row(const NarrowingReport& r);

} // namespace eitbeam

#endif
