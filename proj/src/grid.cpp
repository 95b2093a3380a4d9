#include "eitbeam/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eitbeam {

TransverseGrid make_grid(int n, double width) {
    if (n < 16 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid n must be a power of two >= 16, got " +
                                    std::to_string(n));
    if (!(width > 0.0) || !std::isfinite(width))
        throw std::invalid_argument("grid width must be positive, got " +
                                    std::to_string(width));

    TransverseGrid g;
    g.n = n;
    g.width = width;
    g.dx = width / n;
    g.x.resize(n);
    g.kx.resize(n);
    const double dk = 2.0 * M_PI / width;
    for (int i = 0; i < n; ++i) {
        g.x[i] = (i - n / 2) * g.dx;
        // FFT ordering: frequencies 0..n/2-1, then -n/2..-1.
        const int f = (i < n / 2) ? i : i - n;
        g.kx[i] = f * dk;
    }
    return g;
}

bool same_grid(const TransverseGrid& a, const TransverseGrid& b) {
    return a.n == b.n && a.width == b.width;
}

} // namespace eitbeam
