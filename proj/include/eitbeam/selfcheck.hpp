#ifndef EITBEAM_SELFCHECK_HPP
#define EITBEAM_SELFCHECK_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace eitbeam {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured vs expected
};

// Fast built-in physics checks against closed-form results: free-space
// Gaussian spreading, uniform-medium attenuation, the transparency-profile
// expansion, the high-OD width/narrowing identity, and dark-state algebra.
std::vector<CheckResult> run_selfcheck();

// Prints one "ok|FAIL name: detail" line per check; returns true when all
// checks pass.
bool report_selfcheck(std::ostream& os);

} // namespace eitbeam

#endif
