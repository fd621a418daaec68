#pragma once

#include "symplab/grid.hpp"
#include "symplab/parallel.hpp"

namespace symplab {

/// A map of the torus stored as a periodic displacement:
/// phi(p) = p + d(p) mod 1. Displacement values are kept unwrapped so
/// that time-differencing of flows stays continuous.
struct DisplacementField {
    GridSpec grid;
    std::vector<double> dx, dy;

    DisplacementField() = default;
    explicit DisplacementField(const GridSpec& g)
        : grid(g), dx(g.size(), 0.0), dy(g.size(), 0.0) {}

    static DisplacementField identity(const GridSpec& g) {
        return DisplacementField(g);
    }

    static DisplacementField translation(const GridSpec& g, Vec2 a) {
        DisplacementField d(g);
        for (std::size_t i = 0; i < d.dx.size(); ++i) {
            d.dx[i] = a.x;
            d.dy[i] = a.y;
        }
        return d;
    }
};

/// phi(p) for an arbitrary point, by bicubic interpolation of the
/// displacement. The result is unwrapped (not reduced mod 1).
Vec2 apply_map(const DisplacementField& d, Vec2 p);

/// Jacobian entries of phi = id + d by spectral differentiation:
/// j11 = 1 + dx_x, j12 = dx_y, j21 = dy_x, j22 = 1 + dy_y.
struct JacobianFields {
    ScalarField j11, j12, j21, j22;
};
JacobianFields jacobian(const DisplacementField& d);

/// Minimum of det(D phi) over nodes.
double min_jacobian(const DisplacementField& d);

/// Validates det(D phi) > 0.05 at every node; throws JacobianDegenerate.
void require_jacobian_floor(const DisplacementField& d);

/// Inverse map by the fixed-point iteration y <- x - d(y), up to 50
/// iterations to tolerance 1e-10 per node; converges when the
/// displacement has Lipschitz constant below 1. Throws
/// JacobianDegenerate if any node fails to converge.
DisplacementField invert_map(const DisplacementField& d,
                             exec::Mode mode = exec::default_mode());

/// outer(inner(p)) as a displacement field.
DisplacementField compose_maps(const DisplacementField& outer,
                               const DisplacementField& inner,
                               exec::Mode mode = exec::default_mode());

/// sup over nodes of the torus distance between the two maps' images.
double map_distance(const DisplacementField& a, const DisplacementField& b);

/// Pushforward (phi_* X)(p) = D phi(q) X(q) at q = phi^{-1}(p). Uses a
/// precomputed inverse when supplied.
VectorField pushforward(const VectorField& X, const DisplacementField& phi);
VectorField pushforward(const VectorField& X, const DisplacementField& phi,
                        const DisplacementField& phi_inv);

/// Pushforward by the inverse map without inverting it:
/// ((phi^{-1})_* X)(p) = [D phi(p)]^{-1} X(phi(p)).
VectorField pushforward_by_inverse(const VectorField& X,
                                   const DisplacementField& phi);

/// Pullback (phi^* theta)(p) = D phi(p)^T theta(phi(p)).
OneForm pullback_oneform(const OneForm& theta, const DisplacementField& phi);

/// Scalar composition u(phi(p)).
ScalarField compose_scalar(const ScalarField& u, const DisplacementField& phi);

} // namespace symplab
