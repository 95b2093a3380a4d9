// End-to-end checks of the installed command-line binary: exit codes,
// stream routing, and the files each subcommand leaves behind.  The binary
// path is injected by the build as EITBEAM_BIN_PATH.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "eitbeam/config.hpp"
#include "eitbeam/runner.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = EITBEAM_BIN_PATH;

int exit_code(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag)
        : path(fs::temp_directory_path() /
               (std::string("eitbeam_cli_") + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const char* name) const { return path / name; }
};

// A few fringes through a thin absorber, Beer-Lambert: runs in
// milliseconds and produces measurable drive and probe combs.
const char* kGoodConfig =
    "[atom]\n"
    "density_m3 = 2e14\n"
    "gamma_r_hz = 1e6\n"
    "gamma_cb_hz = 10\n"
    "[drive]\n"
    "pattern = interference\n"
    "omega0_hz = 2e4\n"
    "fringe_period_m = 4e-4\n"
    "[probe]\n"
    "shape = plane\n"
    "amplitude_hz = 1e3\n"
    "[grid]\n"
    "n = 512\n"
    "width_m = 3.2e-3\n"
    "[solver]\n"
    "kind = beerlambert\n"
    "[cell]\n"
    "length_m = 0.02\n";

fs::path write_config(const TempDir& dir, const char* name,
                      const std::string& body) {
    const fs::path p = dir.path / name;
    std::ofstream os(p, std::ios::binary);
    REQUIRE(os.good());
    os << body;
    return p;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("the binary exists and answers --help") {
    REQUIRE(fs::exists(kBin));
    TempDir dir("help");
    CHECK(exit_code(kBin + " --help > " + q(dir / "out.txt") + " 2>&1") == 0);
    const std::string out = slurp(dir / "out.txt");
    CHECK(out.find("run") != std::string::npos);
    CHECK(out.find("sweep") != std::string::npos);
    CHECK(out.find("selfcheck") != std::string::npos);
}

TEST_CASE("selfcheck passes and reports each physics check") {
    TempDir dir("selfcheck");
    CHECK(exit_code(kBin + " selfcheck > " + q(dir / "out.txt")) == 0);
    const std::string out = slurp(dir / "out.txt");
    CHECK(out.find("ok   ") != std::string::npos);
    CHECK(out.find("FAIL") == std::string::npos);
    CHECK(out.find("selfcheck passed") != std::string::npos);
}

TEST_CASE("run propagates a config and writes its outputs") {
    TempDir dir("run");
    const fs::path cfg = write_config(dir, "run.cfg", kGoodConfig);
    const fs::path out = dir / "out";

    const int rc = exit_code(kBin + " run " + q(cfg) + " --out " + q(out) +
                             " --snapshots 1 > " + q(dir / "stdout.txt") +
                             " 2> " + q(dir / "stderr.txt"));
    CHECK(rc == 0);
    const std::string so = slurp(dir / "stdout.txt");
    CHECK(so.find("transmitted power fraction") != std::string::npos);
    CHECK(so.find("probe:") != std::string::npos);
    CHECK(so.find("outputs in") != std::string::npos);

    CHECK(fs::exists(out / "profile.csv"));
    CHECK(fs::exists(out / "metrics.txt"));
    CHECK(fs::exists(out / "snap_000001.csv"));
    const std::string metrics = slurp(out / "metrics.txt");
    CHECK(metrics.find("power_fraction:") != std::string::npos);
    CHECK(metrics.find("FWHM ratio (d/p):") != std::string::npos);
}

TEST_CASE("configuration problems exit with status 2 and name the culprit") {
    TempDir dir("badcfg");
    const std::string err = q(dir / "stderr.txt");

    std::string bad = kGoodConfig;
    const std::string from = "gamma_r_hz";
    bad.replace(bad.find(from), from.size(), "gama_hz");
    const fs::path cfg = write_config(dir, "bad.cfg", bad);
    CHECK(exit_code(kBin + " run " + q(cfg) + " 2> " + err) == 2);
    std::string se = slurp(dir / "stderr.txt");
    CHECK(se.find("config error") != std::string::npos);
    CHECK(se.find("gama_hz") != std::string::npos);

    CHECK(exit_code(kBin + " run " + q(dir / "missing.cfg") + " 2> " + err) ==
          2);
    se = slurp(dir / "stderr.txt");
    CHECK(se.find("cannot open config file") != std::string::npos);

    const fs::path good = write_config(dir, "good.cfg", kGoodConfig);
    CHECK(exit_code(kBin + " sweep " + q(good) +
                    " --axis waist_m=1:2:3 2> " + err) == 2);
    CHECK(slurp(dir / "stderr.txt").find("unknown sweep axis") !=
          std::string::npos);
    CHECK(exit_code(kBin + " sweep " + q(good) +
                    " --axis detuning_hz=0:1:0 2> " + err) == 2);
    CHECK(exit_code(kBin + " sweep " + q(good) + " 2> " + err) == 2);

    CHECK(exit_code(kBin + " 2> " + err) == 2);
    CHECK(exit_code(kBin + " run " + q(good) + " --bogus 2> " + err) == 2);
}

TEST_CASE("an unwritable output directory exits with status 3") {
    TempDir dir("unwritable");
    const fs::path cfg = write_config(dir, "run.cfg", kGoodConfig);
    CHECK(exit_code(kBin + " run " + q(cfg) +
                    " --out /dev/null/out > /dev/null 2> " +
                    q(dir / "stderr.txt")) == 3);
    CHECK_FALSE(slurp(dir / "stderr.txt").empty());
}

TEST_CASE("a degenerate sweep row matches the library's own run") {
    TempDir dir("sweep1");
    const fs::path cfg = write_config(dir, "run.cfg", kGoodConfig);
    const fs::path out = dir / "out";

    REQUIRE(exit_code(kBin + " sweep " + q(cfg) +
                      " --axis detuning_hz=0:0:1 --jobs 1 --out " + q(out) +
                      " > " + q(dir / "stdout.txt")) == 0);
    CHECK(slurp(dir / "stdout.txt").find("1 rows") != std::string::npos);

    std::istringstream csv(slurp(out / "sweep.csv"));
    std::string header, row;
    REQUIRE(std::getline(csv, header));
    REQUIRE(std::getline(csv, row));
    std::vector<std::string> fields;
    std::istringstream rs(row);
    for (std::string f; std::getline(rs, f, ',');) fields.push_back(f);
    // 7 when the trailing error field is empty, 8 when it is not.
    REQUIRE(fields.size() >= 7);
    CHECK(fields[0] == "detuning_hz");

    using namespace eitbeam;
    const ScenarioResult res =
        run_scenario(build_scenario(load_config(cfg.string())));
    REQUIRE(res.probe_metrics.has_value());
    const double fwhm_csv = std::strtod(fields[2].c_str(), nullptr);
    CHECK(test::rel_diff(fwhm_csv, mean_fwhm(*res.probe_metrics)) < 1e-11);
    const double power_csv = std::strtod(fields[6].c_str(), nullptr);
    CHECK(test::rel_diff(power_csv, res.power_fraction) < 1e-11);
}

TEST_CASE("sweeps are byte-identical for any worker count") {
    TempDir dir("sweepjobs");
    const fs::path cfg = write_config(dir, "run.cfg", kGoodConfig);
    const std::string axis = " --axis detuning_hz=-100:100:5";

    REQUIRE(exit_code(kBin + " sweep " + q(cfg) + axis +
                      " --jobs 1 --out " + q(dir / "j1") + " > /dev/null") ==
            0);
    REQUIRE(exit_code(kBin + " sweep " + q(cfg) + axis +
                      " --jobs 3 --out " + q(dir / "j3") + " > /dev/null") ==
            0);
    const std::string a = slurp(dir.path / "j1" / "sweep.csv");
    const std::string b = slurp(dir.path / "j3" / "sweep.csv");
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);
    // Five rows plus the header.
    CHECK(std::count(a.begin(), a.end(), '\n') == 6);
}
