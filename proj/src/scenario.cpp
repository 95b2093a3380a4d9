#include "eitbeam/scenario.hpp"

#include <cmath>

namespace eitbeam {

TransverseGrid scenario_grid(const Scenario& s) {
    return make_grid(s.grid_n, s.grid_width);
}

DriveProfile scenario_drive(const Scenario& s, const TransverseGrid& g) {
    return make_drive(g, s.drive);
}

ComplexField scenario_probe(const Scenario& s, const TransverseGrid& g) {
    ComplexField f = std::visit(
        [&](const auto& p) -> ComplexField {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PlaneProbeSpec>)
                return plane_probe(g, p.amplitude);
            else
                return gaussian_probe(g, p.amplitude, p.waist, p.center);
        },
        s.probe);
    if (s.lens_focal) {
        // Lens sits one focal length before the cell centre, so the focus
        // lands mid-cell; the lead-up is exact paraxial free space.
        const double k = 2.0 * M_PI / s.atom.lambda;
        f = lens_phase(f, *s.lens_focal, s.atom.lambda);
        f = free_space(f, *s.lens_focal - s.prop.cell_length / 2.0, k);
    }
    return f;
}

} // namespace eitbeam
