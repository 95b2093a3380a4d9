#ifndef EITBEAM_CSV_HPP
#define EITBEAM_CSV_HPP

#include <string>

namespace eitbeam {

// Locale-independent decimal formatting ('.' separator, shortest string
// that round-trips the double exactly; "nan"/"inf" spelled lowercase).
std::string format_double(double v);

// Fixed significant-digit variant (general format), digits >= 9 keeps CSV
// outputs at full working precision.
std::string format_double(double v, int digits);

// Strict double parse of a full token (no trailing junk, '.' decimal point
// regardless of locale).  Throws std::invalid_argument on failure.
double parse_double(const std::string& token);

} // namespace eitbeam

#endif
