#include "symplab/displacement.hpp"

#include <atomic>
#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/errors.hpp"
#include "symplab/spectral.hpp"

namespace symplab {

Vec2 apply_map(const DisplacementField& d, Vec2 p) {
    const BicubicSampler s(d.grid);
    double ox, oy;
    s.sample2(d.dx, d.dy, p.x - std::floor(p.x), p.y - std::floor(p.y), ox, oy);
    return {p.x + ox, p.y + oy};
}

JacobianFields jacobian(const DisplacementField& d) {
    ScalarField fx, fy;
    fx.grid = fy.grid = d.grid;
    fx.v = d.dx;
    fy.v = d.dy;
    JacobianFields J;
    J.j11 = spectral::deriv_x(fx);
    J.j12 = spectral::deriv_y(fx);
    J.j21 = spectral::deriv_x(fy);
    J.j22 = spectral::deriv_y(fy);
    for (std::size_t i = 0; i < J.j11.v.size(); ++i) {
        J.j11.v[i] += 1.0;
        J.j22.v[i] += 1.0;
    }
    return J;
}

double min_jacobian(const DisplacementField& d) {
    const JacobianFields J = jacobian(d);
    double lo = J.j11.v[0] * J.j22.v[0] - J.j12.v[0] * J.j21.v[0];
    for (std::size_t i = 1; i < J.j11.v.size(); ++i) {
        const double det = J.j11.v[i] * J.j22.v[i] - J.j12.v[i] * J.j21.v[i];
        lo = std::min(lo, det);
    }
    return lo;
}

void require_jacobian_floor(const DisplacementField& d) {
    const double lo = min_jacobian(d);
    if (!(lo > 0.05))
        throw JacobianDegenerate("map Jacobian determinant fell to " +
                                 std::to_string(lo));
}

DisplacementField invert_map(const DisplacementField& d, exec::Mode mode) {
    DisplacementField inv(d.grid);
    const BicubicSampler s(d.grid);
    std::atomic<bool> failed{false};
    exec::par_for(
        d.grid.size(),
        [&](std::size_t n) {
            const int i = static_cast<int>(n) % d.grid.nx;
            const int j = static_cast<int>(n) / d.grid.nx;
            const double x0 = d.grid.x(i), y0 = d.grid.y(j);
            double yx = x0, yy = y0;
            bool ok = false;
            for (int it = 0; it < 50; ++it) {
                double ex, ey;
                s.sample2(d.dx, d.dy, yx - std::floor(yx), yy - std::floor(yy),
                          ex, ey);
                const double nx_ = x0 - ex, ny_ = y0 - ey;
                const double step =
                    std::max(std::abs(nx_ - yx), std::abs(ny_ - yy));
                yx = nx_;
                yy = ny_;
                if (step <= 1e-10) {
                    ok = true;
                    break;
                }
            }
            if (!ok) failed.store(true, std::memory_order_relaxed);
            inv.dx[n] = yx - x0;
            inv.dy[n] = yy - y0;
        },
        mode);
    if (failed.load())
        throw JacobianDegenerate("map inversion did not converge in 50 steps");
    return inv;
}

DisplacementField compose_maps(const DisplacementField& outer,
                               const DisplacementField& inner, exec::Mode mode) {
    DisplacementField out(inner.grid);
    const BicubicSampler s(outer.grid);
    exec::par_for(
        inner.grid.size(),
        [&](std::size_t n) {
            const int i = static_cast<int>(n) % inner.grid.nx;
            const int j = static_cast<int>(n) / inner.grid.nx;
            const double qx = inner.grid.x(i) + inner.dx[n];
            const double qy = inner.grid.y(j) + inner.dy[n];
            double ox, oy;
            s.sample2(outer.dx, outer.dy, qx - std::floor(qx),
                      qy - std::floor(qy), ox, oy);
            out.dx[n] = inner.dx[n] + ox;
            out.dy[n] = inner.dy[n] + oy;
        },
        mode);
    return out;
}

double map_distance(const DisplacementField& a, const DisplacementField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dx.size(); ++i) {
        const double dx = wrap_diff(a.dx[i] - b.dx[i]);
        const double dy = wrap_diff(a.dy[i] - b.dy[i]);
        m = std::max(m, std::sqrt(dx * dx + dy * dy));
    }
    return m;
}

VectorField pushforward(const VectorField& X, const DisplacementField& phi) {
    return pushforward(X, phi, invert_map(phi));
}

VectorField pushforward(const VectorField& X, const DisplacementField& phi,
                        const DisplacementField& phi_inv) {
    require_jacobian_floor(phi);
    const JacobianFields J = jacobian(phi);
    const BicubicSampler s(phi.grid);
    VectorField out(X.grid);
    exec::par_for(X.grid.size(), [&](std::size_t n) {
        const int i = static_cast<int>(n) % X.grid.nx;
        const int j = static_cast<int>(n) / X.grid.nx;
        double qx = X.grid.x(i) + phi_inv.dx[n];
        double qy = X.grid.y(j) + phi_inv.dy[n];
        qx -= std::floor(qx);
        qy -= std::floor(qy );
        double vx, vy, j11, j12, j21, j22;
        s.sample2(X.vx, X.vy, qx, qy, vx, vy);
        s.sample2(J.j11.v, J.j12.v, qx, qy, j11, j12);
        s.sample2(J.j21.v, J.j22.v, qx, qy, j21, j22);
        out.vx[n] = j11 * vx + j12 * vy;
        out.vy[n] = j21 * vx + j22 * vy;
    });
    return out;
}

VectorField pushforward_by_inverse(const VectorField& X,
                                   const DisplacementField& phi) {
    require_jacobian_floor(phi);
    const JacobianFields J = jacobian(phi);
    const BicubicSampler s(phi.grid);
    VectorField out(X.grid);
    exec::par_for(X.grid.size(), [&](std::size_t n) {
        double qx = X.grid.x(static_cast<int>(n) % X.grid.nx) + phi.dx[n];
        double qy = X.grid.y(static_cast<int>(n) / X.grid.nx) + phi.dy[n];
        qx -= std::floor(qx);
        qy -= std::floor(qy);
        double vx, vy;
        s.sample2(X.vx, X.vy, qx, qy, vx, vy);
        const double det = J.j11.v[n] * J.j22.v[n] - J.j12.v[n] * J.j21.v[n];
        out.vx[n] = (J.j22.v[n] * vx - J.j12.v[n] * vy) / det;
        out.vy[n] = (-J.j21.v[n] * vx + J.j11.v[n] * vy) / det;
    });
    return out;
}

OneForm pullback_oneform(const OneForm& theta, const DisplacementField& phi) {
    const JacobianFields J = jacobian(phi);
    const BicubicSampler s(phi.grid);
    OneForm out(theta.grid);
    exec::par_for(theta.grid.size(), [&](std::size_t n) {
        double qx = theta.grid.x(static_cast<int>(n) % theta.grid.nx) + phi.dx[n];
        double qy = theta.grid.y(static_cast<int>(n) / theta.grid.nx) + phi.dy[n];
        qx -= std::floor(qx);
        qy -= std::floor(qy);
        double tx, ty;
        s.sample2(theta.cx, theta.cy, qx, qy, tx, ty);
        out.cx[n] = J.j11.v[n] * tx + J.j21.v[n] * ty;
        out.cy[n] = J.j12.v[n] * tx + J.j22.v[n] * ty;
    });
    return out;
}

ScalarField compose_scalar(const ScalarField& u, const DisplacementField& phi) {
    const BicubicSampler s(u.grid);
    ScalarField out(u.grid);
    exec::par_for(u.grid.size(), [&](std::size_t n) {
        double qx = u.grid.x(static_cast<int>(n) % u.grid.nx) + phi.dx[n];
        double qy = u.grid.y(static_cast<int>(n) / u.grid.nx) + phi.dy[n];
        out.v[n] = s.sample(u.v, qx - std::floor(qx), qy - std::floor(qy));
    });
    return out;
}

} // namespace symplab
