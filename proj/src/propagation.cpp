#include "eitbeam/propagation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "eitbeam/errors.hpp"

namespace eitbeam {

namespace {

// FFTW planning mutates global state; execution is thread-safe once the
// plan exists.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_inputs(const ComplexField& probe, const DriveProfile& drive,
                  const PropagationConfig& cfg) {
    if (!same_grid(probe.grid, drive.grid))
        throw SolverError("probe and drive grids differ (n " +
                          std::to_string(probe.grid.n) + " vs " +
                          std::to_string(drive.grid.n) + ", width " +
                          fmt(probe.grid.width) + " vs " +
                          fmt(drive.grid.width) + ")");
    if (!(cfg.cell_length > 0.0))
        throw std::invalid_argument("cell length must be positive, got " +
                                    fmt(cfg.cell_length));
    if (cfg.dz && (!(*cfg.dz > 0.0) || *cfg.dz > cfg.cell_length))
        throw std::invalid_argument("dz must satisfy 0 < dz <= cell length, got " +
                                    fmt(*cfg.dz));
    if (cfg.solver == Solver::SplitStep && cfg.diffraction &&
        !(cfg.wavenumber > 0.0))
        throw std::invalid_argument("wavenumber must be positive, got " +
                                    fmt(cfg.wavenumber));
    if (cfg.boundary == Boundary::AbsorbingPad &&
        (cfg.pad_fraction < 0.0 || cfg.pad_fraction > 0.45))
        throw std::invalid_argument("pad fraction must be in [0, 0.45], got " +
                                    fmt(cfg.pad_fraction));
}

std::vector<std::complex<double>> kappa_profile(const DriveProfile& drive,
                                                const AtomicParams& atom) {
    std::vector<std::complex<double>> k(drive.intensity.size());
    for (size_t i = 0; i < k.size(); ++i)
        k[i] = kappa(atom, drive.intensity[i]);
    return k;
}

double max_re_kappa(const std::vector<std::complex<double>>& k) {
    double m = 0.0;
    for (const auto& v : k) m = std::max(m, std::abs(v.real()));
    return m;
}

// Super-Gaussian amplitude mask: 1 in the interior, falling to 1e-6 at the
// window edge over the outer pad_fraction of each side.  Applied once per
// step, it soaks up light before it can wrap around the periodic window.
std::vector<double> pad_mask(const TransverseGrid& g, double pad_fraction) {
    std::vector<double> mask(g.n, 1.0);
    const double edge = pad_fraction * g.width;
    if (edge <= 0.0) return mask;
    const double inner = g.width / 2.0 - edge;
    const double strength = std::log(1e6);
    for (int i = 0; i < g.n; ++i) {
        const double d = std::abs(g.x[i]) - inner;
        if (d > 0.0) {
            const double t = std::min(1.0, d / edge);
            mask[i] = std::exp(-strength * std::pow(t, 8));
        }
    }
    return mask;
}

// Owns the FFTW plans and per-step factors for one propagation problem.
class SplitStepper {
public:
    SplitStepper(const TransverseGrid& grid,
                 const std::vector<std::complex<double>>& kap,
                 const PropagationConfig& cfg, double dz)
        : n_(grid.n), buf_(grid.n) {
        half_.resize(n_);
        medium_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            // exp(+i kx^2 dz / (4k)) per half step; the +i sign pairs with
            // the envelope convention in which exp(-kappa z) attenuates.
            std::complex<double> h{1.0, 0.0};
            if (cfg.diffraction) {
                const double phase =
                    grid.kx[i] * grid.kx[i] * dz / (4.0 * cfg.wavenumber);
                h = std::polar(1.0, phase);
            }
            half_[i] = h;
            medium_[i] = std::exp(-kap[i] * dz);
        }
        if (cfg.boundary == Boundary::AbsorbingPad)
            mask_ = pad_mask(grid, cfg.pad_fraction);

        std::lock_guard<std::mutex> lock(plan_mutex());
        auto* p = reinterpret_cast<fftw_complex*>(buf_.data());
        fwd_ = fftw_plan_dft_1d(n_, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n_, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw SolverError("FFT planning failed");
    }

    ~SplitStepper() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }

    SplitStepper(const SplitStepper&) = delete;
    SplitStepper& operator=(const SplitStepper&) = delete;

    std::vector<std::complex<double>>& buffer() { return buf_; }

    void step() {
        half_diffraction();
        for (int i = 0; i < n_; ++i) buf_[i] *= medium_[i];
        half_diffraction();
        if (!mask_.empty())
            for (int i = 0; i < n_; ++i) buf_[i] *= mask_[i];
    }

private:
    void half_diffraction() {
        fftw_execute(fwd_);
        const double scale = 1.0 / n_;  // FFTW transforms are unnormalised
        for (int i = 0; i < n_; ++i) buf_[i] *= half_[i] * scale;
        fftw_execute(bwd_);
    }

    int n_;
    std::vector<std::complex<double>> buf_;
    std::vector<std::complex<double>> half_;
    std::vector<std::complex<double>> medium_;
    std::vector<double> mask_;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

double buffer_power(const std::vector<std::complex<double>>& v, double dx) {
    double p = 0.0;
    for (const auto& c : v) p += std::norm(c);
    return p * dx;
}

void check_finite(const std::vector<std::complex<double>>& v, int step) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            throw SolverError("non-finite amplitude at step " +
                              std::to_string(step) + ", sample " +
                              std::to_string(i));
    }
}

int step_count(double cell_length, double dz) {
    const int n = static_cast<int>(std::lround(cell_length / dz));
    return std::max(1, n);
}

} // namespace

double default_step(const ComplexField& probe, const DriveProfile& drive,
                    const AtomicParams& atom, const PropagationConfig& cfg) {
    check_inputs(probe, drive, cfg);
    double dz = cfg.cell_length;
    const double mk = max_re_kappa(kappa_profile(drive, atom));
    if (mk > 0.0) dz = std::min(dz, 0.05 / mk);
    if (cfg.solver == Solver::SplitStep && cfg.diffraction) {
        const double kx_max = M_PI / probe.grid.dx;
        dz = std::min(dz, 0.5 * 2.0 * cfg.wavenumber / (kx_max * kx_max));
    }
    return dz;
}

ComplexField step_splitstep(const ComplexField& probe,
                            const DriveProfile& drive,
                            const AtomicParams& atom,
                            const PropagationConfig& cfg) {
    check_inputs(probe, drive, cfg);
    const double dz = cfg.dz.value_or(default_step(probe, drive, atom, cfg));
    SplitStepper stepper(probe.grid, kappa_profile(drive, atom), cfg, dz);
    stepper.buffer() = probe.values;
    stepper.step();
    check_finite(stepper.buffer(), 1);
    return ComplexField{probe.grid, stepper.buffer()};
}

PropagationRecord propagate(const ComplexField& probe,
                            const DriveProfile& drive,
                            const AtomicParams& atom,
                            const PropagationConfig& cfg) {
    check_inputs(probe, drive, cfg);

    PropagationRecord rec;
    rec.input = probe;
    rec.weak_probe_warning =
        max_abs(probe) > 0.1 * drive_peak_rabi(drive);

    const auto kap = kappa_profile(drive, atom);

    if (cfg.solver == Solver::BeerLambert) {
        // Closed-form local attenuation: one "step" across the whole cell.
        rec.steps = 1;
        rec.dz = cfg.cell_length;
        rec.output = probe;
        for (int i = 0; i < probe.grid.n; ++i)
            rec.output.values[i] *= std::exp(-kap[i] * cfg.cell_length);
        check_finite(rec.output.values, 1);
        rec.power_trace.push_back(field_power(rec.output));
        if (cfg.snapshot_every > 0)
            rec.snapshots.emplace_back(1, rec.output);
        return rec;
    }

    const double dz0 = cfg.dz.value_or(default_step(probe, drive, atom, cfg));
    const int nsteps = step_count(cfg.cell_length, dz0);
    const double dz = cfg.cell_length / nsteps;  // exact cell coverage
    rec.steps = nsteps;
    rec.dz = dz;

    SplitStepper stepper(probe.grid, kap, cfg, dz);
    stepper.buffer() = probe.values;
    rec.power_trace.reserve(nsteps);
    for (int s = 1; s <= nsteps; ++s) {
        stepper.step();
        check_finite(stepper.buffer(), s);
        rec.power_trace.push_back(buffer_power(stepper.buffer(), probe.grid.dx));
        if (cfg.snapshot_every > 0 &&
            (s % cfg.snapshot_every == 0 || s == nsteps))
            rec.snapshots.emplace_back(s,
                                       ComplexField{probe.grid, stepper.buffer()});
    }
    rec.output = ComplexField{probe.grid, std::move(stepper.buffer())};
    return rec;
}

ComplexField free_space(const ComplexField& probe, double distance,
                        double wavenumber) {
    if (!(wavenumber > 0.0))
        throw std::invalid_argument("wavenumber must be positive");
    if (distance == 0.0) return probe;

    const int n = probe.grid.n;
    std::vector<std::complex<double>> buf = probe.values;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_plan fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_plan bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw SolverError("FFT planning failed");
        // Plans were created on buf which still holds the input; execute
        // outside the lock is fine, but keeping this simple and serial.
        fftw_execute(fwd);
        for (int i = 0; i < n; ++i) {
            const double kx = probe.grid.kx[i];
            buf[i] *= std::polar(1.0 / n,
                                 kx * kx * distance / (2.0 * wavenumber));
        }
        fftw_execute(bwd);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    check_finite(buf, 1);
    return ComplexField{probe.grid, std::move(buf)};
}

std::vector<double> excited_population_map(const ComplexField& probe,
                                           const DriveProfile& drive,
                                           const AtomicParams& atom) {
    if (!same_grid(probe.grid, drive.grid))
        throw SolverError("probe and drive grids differ");
    std::vector<double> map(probe.values.size());
    for (size_t i = 0; i < map.size(); ++i)
        map[i] = kappa(atom, drive.intensity[i]).real() *
                 std::norm(probe.values[i]);
    return map;
}

} // namespace eitbeam
