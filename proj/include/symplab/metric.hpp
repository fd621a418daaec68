#pragma once

#include <string>

#include "symplab/grid.hpp"

namespace symplab {

/// Riemannian metric g = [g11 g12; g12 g22] given by coefficient fields
/// on the grid. Must be symmetric positive definite at every node.
struct MetricSpec {
    GridSpec grid;
    ScalarField g11, g12, g22;
    bool is_flat = false;
    std::string tag;

    static MetricSpec flat(const GridSpec& g) {
        MetricSpec m;
        m.grid = g;
        m.g11 = ScalarField(g, 1.0);
        m.g12 = ScalarField(g, 0.0);
        m.g22 = ScalarField(g, 1.0);
        m.is_flat = true;
        m.tag = "flat";
        return m;
    }

    static MetricSpec fields(ScalarField a11, ScalarField a12, ScalarField a22,
                             std::string tag_) {
        MetricSpec m;
        m.grid = a11.grid;
        m.g11 = std::move(a11);
        m.g12 = std::move(a12);
        m.g22 = std::move(a22);
        m.is_flat = false;
        m.tag = std::move(tag_);
        m.validate();
        return m;
    }

    /// Throws MetricNotSPD unless g11 > 0 and det g > 0 at every node.
    void validate() const;

    /// Volume density sqrt(det g) per node.
    ScalarField sqrt_det() const;
};

} // namespace symplab
