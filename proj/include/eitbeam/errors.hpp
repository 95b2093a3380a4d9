#ifndef EITBEAM_ERRORS_HPP
#define EITBEAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eitbeam {

// Malformed or inconsistent run configuration (bad key, bad value, missing
// section, unusable axis spec).  The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure while stepping a field through the medium (non-finite
// amplitudes, incompatible grids at solve time).  CLI exit code 3.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A profile that cannot be reduced to the requested beam metrics
// (no peaks above the prominence floor, feature unresolved by the grid).
class MeasureError : public std::runtime_error {
public:
    explicit MeasureError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eitbeam

#endif
