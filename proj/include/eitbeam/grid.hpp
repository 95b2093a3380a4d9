#ifndef EITBEAM_GRID_HPP
#define EITBEAM_GRID_HPP

#include <vector>

namespace eitbeam {

// Uniform one-dimensional transverse grid, centred on x = 0.
//
// x[i] = (i - n/2) * dx, so x = 0 is an exact sample and the grid spans
// [-width/2, width/2 - dx].  kx holds the spatial angular frequencies
// [rad/m] in standard FFT ordering (non-negative frequencies first, then
// the negative ones), ready to be used on an unshifted transform.
struct TransverseGrid {
    int n = 0;
    double width = 0.0;
    double dx = 0.0;
    std::vector<double> x;
    std::vector<double> kx;
};

// n must be a power of two >= 16; width must be positive.
TransverseGrid make_grid(int n, double width);

bool same_grid(const TransverseGrid& a, const TransverseGrid& b);

} // namespace eitbeam

#endif
