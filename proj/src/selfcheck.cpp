#include "eitbeam/selfcheck.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "eitbeam/analysis.hpp"
#include "eitbeam/csv.hpp"
#include "eitbeam/propagation.hpp"

namespace eitbeam {

namespace {

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
    return CheckResult{name, pass, detail};
}

std::string got_want(double got, double want, double tol) {
    std::ostringstream os;
    os << "got " << format_double(got, 9) << ", want " << format_double(want, 9)
       << " (tol " << format_double(tol, 3) << ")";
    return os.str();
}

// Vacuum medium: eta = 0, so kappa vanishes and only diffraction acts.
AtomicParams vacuum() {
    return AtomicParams::make(795e-9, 0.0, 1e7, 1.0);
}

CheckResult free_space_spreading() {
    const double w0 = 2e-4;
    const auto g = make_grid(2048, 16.0 * w0);
    const auto atom = vacuum();
    const double k = 2.0 * M_PI / atom.lambda;
    const double zr = k * w0 * w0 / 2.0;  // Rayleigh range, pi w0^2 / lambda

    PropagationConfig cfg;
    cfg.cell_length = zr;
    cfg.dz = zr / 200.0;
    cfg.wavenumber = k;
    const auto drive = parabolic_drive(g, ParabolicBranch::Max, 1.0, 1.0);
    const auto rec = propagate(gaussian_probe(g, 1.0, w0), drive, atom, cfg);

    // 1/e amplitude half-width after one Rayleigh range: w0 sqrt(2).
    const double w = full_width_at_fraction(field_intensity(rec.output), g,
                                            std::exp(-2.0)) /
                     2.0;
    const double want = w0 * std::sqrt(2.0);
    const double rel = std::abs(w - want) / want;
    return check("free-space Gaussian spreading", rel < 5e-3,
                 got_want(w, want, 5e-3));
}

CheckResult uniform_attenuation() {
    // eta chosen so kappa = 1 exactly at unit drive intensity:
    // kappa = eta*gamma_cb/(gamma*gamma_cb + 1) with gamma = 1.
    const double lambda = 795e-9, gamma_r = 2.0, gamma_cb = 0.01;
    const double eta = (1.0 * gamma_cb + 1.0) / gamma_cb;
    const double density = eta * 8.0 * M_PI / (3.0 * lambda * lambda * gamma_r);
    const auto atom = AtomicParams::make(lambda, density, gamma_r, gamma_cb);

    const auto g = make_grid(256, 1e-3);
    DriveProfile drive{g, std::vector<double>(g.n, 1.0),
                       ParabolicMaxSpec{1.0, 1.0, 0.0}};
    PropagationConfig cfg;
    cfg.cell_length = 1.0;
    cfg.dz = 0.01;
    cfg.wavenumber = 2.0 * M_PI / lambda;
    const auto rec = propagate(plane_probe(g, 1e-3), drive, atom, cfg);
    const double frac =
        field_power(rec.output) / field_power(rec.input);
    const double want = std::exp(-2.0);
    const double rel = std::abs(frac - want) / want;
    return check("uniform-medium attenuation exp(-2)", rel < 1e-6,
                 got_want(frac, want, 1e-6));
}

CheckResult transparency_expansion() {
    const double lambda = 795e-9, gamma_r = 2e-4, gamma_cb = 1e-6;
    const double eta_target = 100.0;
    const double density =
        eta_target * 8.0 * M_PI / (3.0 * lambda * lambda * gamma_r);
    const auto atom = AtomicParams::make(lambda, density, gamma_r, gamma_cb);

    const double w2 = 1.0;
    const double us[4] = {0.0125, 0.025, 0.05, 0.1};
    double r[4];
    for (int i = 0; i < 4; ++i) {
        const double exact = kappa(atom, w2 * (1.0 - us[i] * us[i])).real();
        r[i] = std::abs(kappa_expanded(atom, w2, us[i]) - exact);
    }
    // Residual is quartic: C fitted from the two smallest samples bounds
    // the rest (5% headroom for the next order in u^2).
    const double C = std::max(r[0] / std::pow(us[0], 4),
                              r[1] / std::pow(us[1], 4));
    const bool bound_ok = r[2] <= 1.05 * C * std::pow(us[2], 4) &&
                          r[3] <= 1.05 * C * std::pow(us[3], 4);
    const double order = std::log(r[3] / r[2]) / std::log(us[3] / us[2]);
    const bool order_ok = order > 3.9;
    std::ostringstream os;
    os << "residual order " << format_double(order, 4)
       << " (want > 3.9), quartic bound "
       << (bound_ok ? "holds" : "violated");
    return check("transparency-profile expansion", bound_ok && order_ok,
                 os.str());
}

CheckResult high_od_identity() {
    // L / dx_high == predicted narrowing ratio, exactly, on resonance.
    std::mt19937 rng(20260815);
    std::uniform_real_distribution<double> uni(0.1, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double lambda = 795e-9 * uni(rng);
        const double gamma_r = 1e6 * uni(rng);
        const double gamma_cb = 1e-4 * gamma_r * uni(rng) / 10.0;
        const double density = 1e14 * uni(rng);
        const auto atom =
            AtomicParams::make(lambda, density, gamma_r, gamma_cb);
        const double rabi = 1e5 * uni(rng);
        const double L = 1e-4 * uni(rng);
        const double z = 0.01 * uni(rng);
        const double dx = predicted_width_high_od(atom, rabi, L, z);
        const double ratio = predicted_narrowing_ratio(atom, rabi, z);
        worst = std::max(worst, std::abs(L / dx - ratio) / ratio);
    }
    return check("high-OD width/narrowing identity", worst < 1e-12,
                 "worst relative mismatch " + format_double(worst, 3) +
                     " (tol 1e-12)");
}

CheckResult dark_state_algebra() {
    std::mt19937 rng(8157);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    double worst_norm = 0.0, worst_coupling = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double op = uni(rng), od = uni(rng);
        if (op == 0.0 && od == 0.0) op = 1.0;
        const auto d = dark_state(op, od);
        worst_norm = std::max(
            worst_norm,
            std::abs(d.amp_c * d.amp_c + d.amp_b * d.amp_b - 1.0));
        const double scale = std::sqrt(op * op + od * od);
        worst_coupling = std::max(
            worst_coupling, std::abs(od * d.amp_c + op * d.amp_b) / scale);
    }
    const bool ok = worst_norm < 1e-12 && worst_coupling < 1e-12;
    return check("dark-state normalisation and zero coupling", ok,
                 "worst norm err " + format_double(worst_norm, 3) +
                     ", worst coupling " + format_double(worst_coupling, 3) +
                     " (tol 1e-12)");
}

} // namespace

std::vector<CheckResult> run_selfcheck() {
    return {free_space_spreading(), uniform_attenuation(),
            transparency_expansion(), high_od_identity(),
            dark_state_algebra()};
}

bool report_selfcheck(std::ostream& os) {
    bool all = true;
    for (const auto& c : run_selfcheck()) {
        os << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail
           << '\n';
        all = all && c.pass;
    }
    os << (all ? "selfcheck passed\n" : "selfcheck FAILED\n");
    return all;
}

} // namespace eitbeam
