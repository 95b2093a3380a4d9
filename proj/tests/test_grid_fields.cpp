#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "eitbeam/analysis.hpp"
#include "eitbeam/errors.hpp"
#include "eitbeam/fields.hpp"
#include "eitbeam/grid.hpp"
#include "eitbeam/propagation.hpp"

using namespace eitbeam;

namespace {

constexpr double kPi = std::numbers::pi;

std::filesystem::path write_temp_csv(const std::string& name,
                                     const std::string& text) {
    const auto dir =
        std::filesystem::temp_directory_path() / "eitbeam_fields_csv";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::ofstream os(p, std::ios::binary);
    os << text;
    return p;
}

}  // namespace

TEST_CASE("grids centre on zero and carry transform-ordered frequencies") {
    const TransverseGrid g = make_grid(16, 1.6e-3);
    CHECK(g.dx == 1e-4);
    CHECK(g.x[0] == -8e-4);
    CHECK(g.x[8] == 0.0);
    CHECK(g.x[15] == doctest::Approx(7e-4).epsilon(1e-15));

    const double dk = 2.0 * kPi / g.width;
    CHECK(g.kx[0] == 0.0);
    CHECK(g.kx[1] == dk);
    CHECK(g.kx[7] == 7.0 * dk);
    CHECK(g.kx[8] == -8.0 * dk);   // Nyquist slot carries -n/2
    CHECK(g.kx[15] == -dk);

    const TransverseGrid big = make_grid(4096, 8e-3);
    CHECK(big.dx == 1.953125e-6);
    CHECK(big.x[2048] == 0.0);

    CHECK(same_grid(g, make_grid(16, 1.6e-3)));
    CHECK_FALSE(same_grid(g, make_grid(32, 1.6e-3)));

    CHECK_THROWS_AS(make_grid(15, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1024, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1024, -1.0), std::invalid_argument);
}

TEST_CASE("probe builders realise their closed forms") {
    const TransverseGrid g = make_grid(256, 2.56e-2);  // dx = 1e-4

    const ComplexField pl = plane_probe(g, 3.0);
    for (const auto& v : pl.values) CHECK(v == std::complex<double>(3.0, 0.0));
    CHECK(field_power(pl) == doctest::Approx(9.0 * g.width).epsilon(1e-12));
    CHECK(max_abs(pl) == 3.0);

    // 1/e amplitude point one waist from the centre (64 samples here).
    const ComplexField gs = gaussian_probe(g, 2.5, 6.4e-3);
    CHECK(gs.values[128] == std::complex<double>(2.5, 0.0));
    CHECK(gs.values[128 + 64].real() ==
          doctest::Approx(2.5 / std::exp(1.0)).epsilon(1e-14));
    CHECK(gs.values[128 + 64].imag() == 0.0);
    CHECK(gs.values[128 - 64].real() ==
          doctest::Approx(2.5 / std::exp(1.0)).epsilon(1e-14));

    const ComplexField moved = gaussian_probe(g, 2.5, 6.4e-3, 3e-3);
    CHECK(moved.values[128 + 30].real() == 2.5);

    CHECK_THROWS_AS(plane_probe(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_probe(g, -1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_probe(g, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("a thin lens leaves amplitudes alone and the infinite lens is the identity") {
    const TransverseGrid g = make_grid(512, 5e-3);
    const ComplexField in = gaussian_probe(g, 1.5, 8e-4);

    const ComplexField out = lens_phase(in, 0.4, 795e-9);
    CHECK(field_power(out) == doctest::Approx(field_power(in)).epsilon(1e-12));
    for (int i = 0; i < g.n; ++i)
        CHECK(std::abs(out.values[i]) ==
              doctest::Approx(std::abs(in.values[i])).epsilon(1e-12));

    const double inf = std::numeric_limits<double>::infinity();
    const ComplexField id = lens_phase(in, inf, 795e-9);
    for (int i = 0; i < g.n; ++i) CHECK(id.values[i] == in.values[i]);
    CHECK_NOTHROW(lens_phase(in, -inf, 795e-9));

    CHECK_THROWS_AS(lens_phase(in, 0.0, 795e-9), std::invalid_argument);
    CHECK_THROWS_AS(
        lens_phase(in, std::numeric_limits<double>::quiet_NaN(), 795e-9),
        std::invalid_argument);
    CHECK_THROWS_AS(lens_phase(in, 0.4, 0.0), std::invalid_argument);
}

TEST_CASE("a converging lens focuses a gaussian to its transform-limited size") {
    // Waist at the lens; at the back focal plane the 1/e^2 intensity radius
    // is exactly lambda f / (pi w0), whatever the Rayleigh range.
    const double lambda = 794.979e-9;
    const double w0 = 7e-4;
    const double f = 0.75;
    const double k = 2.0 * kPi / lambda;
    const TransverseGrid g = make_grid(4096, 5.6e-3);

    const ComplexField in = gaussian_probe(g, 1.0, w0);
    const ComplexField bent = lens_phase(in, f, lambda);

    const ComplexField focal = free_space(bent, f, k);
    const double wf = lambda * f / (kPi * w0);
    const double measured =
        full_width_at_fraction(field_intensity(focal), g, std::exp(-2.0));
    CHECK(measured == doctest::Approx(2.0 * wf).epsilon(0.01));

    // On the way to the focus the beam is converging, not spreading.
    const ComplexField mid = free_space(bent, f / 2.0, k);
    const double wmid =
        full_width_at_fraction(field_intensity(mid), g, std::exp(-2.0));
    CHECK(wmid < 2.0 * w0);
}

TEST_CASE("interference fringes have the stated maxima, nulls and period") {
    const TransverseGrid g = make_grid(4096, 4e-3);  // dx = 9.765625e-7
    const double lam = 1e-3;
    const double x0 = 2.5e-4;
    const DriveProfile d = interference_drive(g, 3.0, lam, x0);

    const int c = 2048 + 256;  // x = x0 exactly
    CHECK(d.intensity[c] == 9.0);
    CHECK(d.intensity[c + 512] < 1e-30);                       // null at x0 + lam/2
    CHECK(d.intensity[c + 256] == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(d.intensity[c + 1024] == doctest::Approx(9.0).epsilon(1e-12));

    CHECK(drive_peak_intensity(d) == 9.0);
    CHECK(drive_peak_rabi(d) == 3.0);

    CHECK_THROWS_AS(interference_drive(g, 3.0, 2.0 * g.dx, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(interference_drive(g, 0.0, lam, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(interference_drive(g, 3.0, 1e-7, 0.0),
                         doctest::Contains("need period > 2 dx"),
                         std::invalid_argument);
}

TEST_CASE("parabolic drives follow their branch formulas and clamps") {
    const TransverseGrid g = make_grid(1024, 1.024e-2);  // dx = 1e-5
    const double L = 1.28e-3;                            // 128 samples

    const DriveProfile mx = parabolic_drive(g, ParabolicBranch::Max, 2.0, L);
    CHECK(mx.intensity[512] == 4.0);
    CHECK(mx.intensity[512 + 128] == 0.0);   // touches zero at |x| = L
    CHECK(mx.intensity[512 + 256] == 0.0);   // clamped beyond
    CHECK(mx.intensity[512 + 64] == doctest::Approx(3.0).epsilon(1e-12));

    const DriveProfile shifted =
        parabolic_drive(g, ParabolicBranch::Max, 2.0, L, 6.4e-4);
    CHECK(shifted.intensity[512 + 64] == 4.0);

    const DriveProfile nl = parabolic_drive(g, ParabolicBranch::Null, 2.0, L);
    CHECK(nl.intensity[512] == 0.0);
    CHECK(nl.intensity[512 + 64] == 1.0);    // (L/2 / L)^2 * 4
    CHECK(nl.intensity[512 + 128] == 4.0);

    // The null branch models a zero at the origin; x0 does not move it.
    const DriveProfile nl2 =
        parabolic_drive(g, ParabolicBranch::Null, 2.0, L, 3e-4);
    CHECK(nl2.intensity == nl.intensity);

    CHECK_THROWS_AS(parabolic_drive(g, ParabolicBranch::Max, 0.0, L),
                    std::invalid_argument);
    CHECK_THROWS_AS(parabolic_drive(g, ParabolicBranch::Null, 2.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("the fringe peak and its osculating parabola agree to one percent") {
    const double lam = 6e-4;
    const double L = fringe_parabolic_scale(lam);
    CHECK(L == doctest::Approx(lam / kPi).epsilon(1e-15));

    // Equal curvature at the peak: 2 (pi/lam)^2 == 2 / L^2.
    CHECK(2.0 / (L * L) ==
          doctest::Approx(2.0 * kPi * kPi / (lam * lam)).epsilon(1e-12));

    // Within |u| <= 0.1 lam the two profiles agree to 1%.
    for (int i = -20; i <= 20; ++i) {
        const double u = 0.005 * lam * i;
        const double fringe = std::pow(std::cos(kPi * u / lam), 2);
        const double parab = 1.0 - (u / L) * (u / L);
        CHECK(std::abs(fringe - parab) <= 0.01 * fringe);
    }

    CHECK_THROWS_AS(fringe_parabolic_scale(0.0), std::invalid_argument);
}

TEST_CASE("file drive profiles are interpolated, clamped and validated") {
    const TransverseGrid g = make_grid(64, 4e-3);  // dx = 6.25e-5
    const auto path = write_temp_csv("happy.csv",
                                     "x_m,omega_d_sq\n"
                                     "-1e-3,1\n"
                                     "0,4\n"
                                     "1e-3,9\n");
    const DriveProfile d = drive_from_csv(g, path.string());
    CHECK(d.intensity[16] == 1.0);   // node x = -1e-3
    CHECK(d.intensity[32] == 4.0);   // node x = 0
    CHECK(d.intensity[40] == doctest::Approx(6.5).epsilon(1e-12));  // midpoint
    CHECK(d.intensity[0] == 1.0);    // clamped left of the table
    CHECK(d.intensity[63] == 9.0);   // clamped right of the table

    // Byte-order mark and CRLF line endings are tolerated.
    const auto bom = write_temp_csv("bom.csv",
                                    "\xEF\xBB\xBFx_m,omega_d_sq\r\n"
                                    "0,1\r\n"
                                    "1e-3,2\r\n");
    const TransverseGrid g16 = make_grid(16, 4e-3);
    const DriveProfile db = drive_from_csv(g16, bom.string());
    CHECK(db.intensity[8] == 1.0);
    CHECK(db.intensity[10] == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(drive_from_csv(g, "/nonexistent/drive.csv"),
                         doctest::Contains("cannot open"), ConfigError);
    const auto badhdr = write_temp_csv("badhdr.csv", "x,omega\n0,1\n1,2\n");
    CHECK_THROWS_AS(drive_from_csv(g, badhdr.string()), ConfigError);
    const auto one = write_temp_csv("one.csv", "x_m,omega_d_sq\n0,1\n");
    CHECK_THROWS_AS(drive_from_csv(g, one.string()), ConfigError);
    const auto dup =
        write_temp_csv("dup.csv", "x_m,omega_d_sq\n0,1\n0,2\n");
    CHECK_THROWS_AS(drive_from_csv(g, dup.string()), ConfigError);
    const auto neg =
        write_temp_csv("neg.csv", "x_m,omega_d_sq\n0,-1\n1e-3,1\n");
    CHECK_THROWS_AS(drive_from_csv(g, neg.string()), ConfigError);
    const auto junk =
        write_temp_csv("junk.csv", "x_m,omega_d_sq\n0,abc\n1e-3,1\n");
    CHECK_THROWS_AS(drive_from_csv(g, junk.string()), ConfigError);
    const auto short_row =
        write_temp_csv("short.csv", "x_m,omega_d_sq\n0\n1e-3,1\n");
    CHECK_THROWS_AS(drive_from_csv(g, short_row.string()), ConfigError);
}

TEST_CASE("the drive factory dispatches every descriptor") {
    const TransverseGrid g = make_grid(256, 4e-3);

    const DriveProfile a = make_drive(g, InterferenceSpec{2.0, 8e-4, 1e-4});
    const DriveProfile b = interference_drive(g, 2.0, 8e-4, 1e-4);
    CHECK(a.intensity == b.intensity);

    const DriveProfile c = make_drive(g, ParabolicMaxSpec{2.0, 1e-3, 0.0});
    CHECK(c.intensity ==
          parabolic_drive(g, ParabolicBranch::Max, 2.0, 1e-3).intensity);

    const DriveProfile d = make_drive(g, ParabolicNullSpec{2.0, 1e-3});
    CHECK(d.intensity ==
          parabolic_drive(g, ParabolicBranch::Null, 2.0, 1e-3).intensity);

    const auto path = write_temp_csv("factory.csv",
                                     "x_m,omega_d_sq\n-1,1\n1,1\n");
    const DriveProfile e = make_drive(g, FromFileSpec{path.string()});
    for (double v : e.intensity) CHECK(v == 1.0);
}
