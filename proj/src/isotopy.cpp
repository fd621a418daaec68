#include "symplab/isotopy.hpp"

#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/errors.hpp"
#include "symplab/parallel.hpp"
#include "symplab/spectral.hpp"

namespace symplab {

namespace {

// Generator field at an arbitrary time: Lagrange combination of up to
// four neighbouring samples, evaluated on the grid.
VectorField generator_at(const GeneratorPath& gen, double t) {
    int k0;
    std::array<double, 4> w;
    time_weights(gen.nt(), t, k0, w);
    VectorField out(gen[0].grid);
    const int npts = std::min(gen.nt(), 4);
    for (int a = 0; a < npts; ++a) {
        const VectorField& s = gen[k0 + a];
        const double wa = w[a];
        if (wa == 0.0) continue;
        for (std::size_t i = 0; i < out.vx.size(); ++i) {
            out.vx[i] += wa * s.vx[i];
            out.vy[i] += wa * s.vy[i];
        }
    }
    return out;
}

struct Positions {
    std::vector<double> x, y;
};

void rk4_step(Positions& p, const VectorField& f0, const VectorField& fh,
              const VectorField& f1, double h, exec::Mode mode) {
    const BicubicSampler s0(f0.grid), sh(fh.grid), s1(f1.grid);
    exec::par_for(
        p.x.size(),
        [&](std::size_t n) {
            const double x = p.x[n], y = p.y[n];
            double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y, ax, ay;
            s0.sample2(f0.vx, f0.vy, x - std::floor(x), y - std::floor(y), k1x,
                       k1y);
            ax = x + 0.5 * h * k1x;
            ay = y + 0.5 * h * k1y;
            sh.sample2(fh.vx, fh.vy, ax - std::floor(ax), ay - std::floor(ay),
                       k2x, k2y);
            ax = x + 0.5 * h * k2x;
            ay = y + 0.5 * h * k2y;
            sh.sample2(fh.vx, fh.vy, ax - std::floor(ax), ay - std::floor(ay),
                       k3x, k3y);
            ax = x + h * k3x;
            ay = y + h * k3y;
            s1.sample2(f1.vx, f1.vy, ax - std::floor(ax), ay - std::floor(ay),
                       k4x, k4y);
            p.x[n] = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            p.y[n] = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        },
        mode);
}

double consistency(const Isotopy& iso) {
    const int nt = iso.nt();
    if (nt < 3) return 0.0;
    const double dt = iso.flow.dt();
    const GridSpec& g = iso.flow[0].grid;
    double worst = 0.0;
    for (int k = 1; k + 1 < nt; ++k) {
        const auto& prev = iso.flow[k - 1];
        const auto& next = iso.flow[k + 1];
        const auto& cur = iso.flow[k];
        const VectorField& X = iso.generator[k];
        const BicubicSampler s(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            const double vx = (next.dx[n] - prev.dx[n]) / (2.0 * dt);
            const double vy = (next.dy[n] - prev.dy[n]) / (2.0 * dt);
            double qx = g.x(static_cast<int>(n) % g.nx) + cur.dx[n];
            double qy = g.y(static_cast<int>(n) / g.nx) + cur.dy[n];
            double fx, fy;
            s.sample2(X.vx, X.vy, qx - std::floor(qx), qy - std::floor(qy), fx,
                      fy);
            worst = std::max(worst,
                             std::max(std::abs(vx - fx), std::abs(vy - fy)));
        }
    }
    return worst;
}

} // namespace

double Isotopy::max_speed() const {
    double m = 0.0;
    for (const auto& s : generator.samples) m = std::max(m, max_abs(s));
    return m;
}

double Isotopy::measure_consistency() const { return consistency(*this); }

Isotopy identity_isotopy(const GridSpec& g, int nt) {
    Isotopy iso;
    iso.generator.samples.assign(nt, VectorField(g));
    iso.flow.samples.assign(nt, DisplacementField(g));
    iso.substeps = 1;
    iso.consistency_residual = 0.0;
    return iso;
}

Isotopy integrate_flow(const GeneratorPath& gen, int substeps) {
    if (gen.nt() < 2) throw ConfigError("generator path needs at least 2 samples");
    if (substeps < 1) throw ConfigError("substeps must be positive");
    const GridSpec& g = gen[0].grid;
    const int nt = gen.nt();
    const double dt = gen.dt();
    const double h = dt / substeps;

    Isotopy iso;
    iso.generator = gen;
    iso.substeps = substeps;
    iso.flow.samples.reserve(nt);
    iso.flow.samples.emplace_back(g); // identity at t = 0

    Positions p;
    p.x.resize(g.size());
    p.y.resize(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        p.x[n] = g.x(static_cast<int>(n) % g.nx);
        p.y[n] = g.y(static_cast<int>(n) / g.nx);
    }

    const exec::Mode mode = exec::default_mode();
    for (int k = 0; k + 1 < nt; ++k) {
        const double t0 = gen.time(k);
        VectorField f0 = generator_at(gen, t0);
        for (int m = 0; m < substeps; ++m) {
            const double ts = t0 + m * h;
            VectorField fh = generator_at(gen, ts + 0.5 * h);
            VectorField f1 = generator_at(gen, ts + h);
            rk4_step(p, f0, fh, f1, h, mode);
            f0 = std::move(f1);
        }
        DisplacementField snap(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            snap.dx[n] = p.x[n] - g.x(static_cast<int>(n) % g.nx);
            snap.dy[n] = p.y[n] - g.y(static_cast<int>(n) / g.nx);
        }
        require_jacobian_floor(snap);
        iso.flow.samples.push_back(std::move(snap));
    }
    iso.consistency_residual = consistency(iso);
    return iso;
}

GeneratorPath generator_from_flow(const TimeSeries<DisplacementField>& flow) {
    const int nt = flow.nt();
    if (nt < 3) throw ConfigError("flow needs at least 3 samples");
    const double dt = flow.dt();
    const GridSpec& g = flow[0].grid;

    GeneratorPath gen;
    gen.samples.reserve(nt);
    for (int k = 0; k < nt; ++k) {
        // Velocity of the flow at sample k per start point (second-order
        // differences, one-sided at the ends).
        VectorField vel(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            double vx, vy;
            if (k == 0) {
                vx = (-3.0 * flow[0].dx[n] + 4.0 * flow[1].dx[n] -
                      flow[2].dx[n]) /
                     (2.0 * dt);
                vy = (-3.0 * flow[0].dy[n] + 4.0 * flow[1].dy[n] -
                      flow[2].dy[n]) /
                     (2.0 * dt);
            } else if (k == nt - 1) {
                vx = (3.0 * flow[k].dx[n] - 4.0 * flow[k - 1].dx[n] +
                      flow[k - 2].dx[n]) /
                     (2.0 * dt);
                vy = (3.0 * flow[k].dy[n] - 4.0 * flow[k - 1].dy[n] +
                      flow[k - 2].dy[n]) /
                     (2.0 * dt);
            } else {
                vx = (flow[k + 1].dx[n] - flow[k - 1].dx[n]) / (2.0 * dt);
                vy = (flow[k + 1].dy[n] - flow[k - 1].dy[n]) / (2.0 * dt);
            }
            vel.vx[n] = vx;
            vel.vy[n] = vy;
        }
        // X_t = velocity at the preimage: interpolate at phi_t^{-1}(node).
        const DisplacementField inv = invert_map(flow[k]);
        VectorField X(g);
        const BicubicSampler s(g);
        exec::par_for(g.size(), [&](std::size_t n) {
            double qx = g.x(static_cast<int>(n) % g.nx) + inv.dx[n];
            double qy = g.y(static_cast<int>(n) / g.nx) + inv.dy[n];
            s.sample2(vel.vx, vel.vy, qx - std::floor(qx), qy - std::floor(qy),
                      X.vx[n], X.vy[n]);
        });
        gen.samples.push_back(project_symplectic(X));
    }
    return gen;
}

Isotopy inverse_isotopy(const Isotopy& iso) {
    const int nt = iso.nt();
    Isotopy out;
    out.substeps = iso.substeps;
    out.flow.samples.reserve(nt);
    out.generator.samples.reserve(nt);
    for (int k = 0; k < nt; ++k) {
        out.flow.samples.push_back(invert_map(iso.flow[k]));
        // -(phi^{-1})_* X evaluated without inverting:
        // [D phi(p)]^{-1} X(phi(p)), negated.
        VectorField v =
            pushforward_by_inverse(iso.generator[k], iso.flow[k]);
        for (std::size_t i = 0; i < v.vx.size(); ++i) {
            v.vx[i] = -v.vx[i];
            v.vy[i] = -v.vy[i];
        }
        // strips the non-closed interpolation noise so the samples keep
        // the symplectic invariant
        out.generator.samples.push_back(project_symplectic(v));
    }
    out.consistency_residual = consistency(out);
    return out;
}

Isotopy compose_isotopies(const Isotopy& outer, const Isotopy& inner) {
    const int nt = outer.nt();
    if (nt != inner.nt()) throw ConfigError("isotopy sample counts differ");
    Isotopy out;
    out.substeps = std::max(outer.substeps, inner.substeps);
    out.flow.samples.reserve(nt);
    out.generator.samples.reserve(nt);
    for (int k = 0; k < nt; ++k) {
        out.flow.samples.push_back(
            compose_maps(outer.flow[k], inner.flow[k]));
        const DisplacementField outer_inv = invert_map(outer.flow[k]);
        VectorField push =
            pushforward(inner.generator[k], outer.flow[k], outer_inv);
        out.generator.samples.push_back(
            project_symplectic(outer.generator[k] + push));
    }
    out.consistency_residual = consistency(out);
    return out;
}

CommutatorParts commutator_isotopy(const Isotopy& phi, const Isotopy& psi) {
    CommutatorParts parts;
    const Isotopy phi_inv = inverse_isotopy(phi);
    const Isotopy psi_inv = inverse_isotopy(psi);
    const Isotopy a = compose_isotopies(phi, psi);          // phi psi
    const Isotopy b = compose_isotopies(a, phi_inv);        // phi psi phi^{-1}
    parts.sigma = compose_isotopies(b, psi_inv);            // full commutator

    const int nt = phi.nt();
    parts.X = phi.generator;
    parts.Y.samples.reserve(nt);
    parts.Z.samples.reserve(nt);
    parts.U.samples.reserve(nt);
    for (int k = 0; k < nt; ++k) {
        const DisplacementField phi_k_inv = invert_map(phi.flow[k]);
        parts.Y.samples.push_back(project_symplectic(
            pushforward(psi.generator[k], phi.flow[k], phi_k_inv)));
        VectorField z = pushforward(phi.generator[k], b.flow[k]);
        VectorField u = pushforward(psi.generator[k], parts.sigma.flow[k]);
        for (std::size_t i = 0; i < z.vx.size(); ++i) {
            z.vx[i] = -z.vx[i];
            z.vy[i] = -z.vy[i];
            u.vx[i] = -u.vx[i];
            u.vy[i] = -u.vy[i];
        }
        parts.Z.samples.push_back(project_symplectic(z));
        parts.U.samples.push_back(project_symplectic(u));
    }
    return parts;
}

Isotopy hamiltonian_isotopy(const TimeSeries<ScalarField>& H, int substeps) {
    GeneratorPath gen;
    gen.samples.reserve(H.nt());
    for (const ScalarField& h : H.samples) {
        const OneForm dh = spectral::gradient(h);
        VectorField X(h.grid);
        for (std::size_t i = 0; i < X.vx.size(); ++i) {
            X.vx[i] = dh.cy[i];
            X.vy[i] = -dh.cx[i];
        }
        gen.samples.push_back(std::move(X));
    }
    return integrate_flow(gen, substeps);
}

double c0_distance(const TimeSeries<DisplacementField>& F,
                   const TimeSeries<DisplacementField>& G) {
    TimeSeries<DisplacementField> Finv, Ginv;
    Finv.samples.reserve(F.nt());
    Ginv.samples.reserve(G.nt());
    for (const auto& f : F.samples) Finv.samples.push_back(invert_map(f));
    for (const auto& g : G.samples) Ginv.samples.push_back(invert_map(g));
    return c0_distance(F, G, Finv, Ginv);
}

double c0_distance(const TimeSeries<DisplacementField>& F,
                   const TimeSeries<DisplacementField>& G,
                   const TimeSeries<DisplacementField>& Finv,
                   const TimeSeries<DisplacementField>& Ginv) {
    if (F.nt() != G.nt()) throw ConfigError("flow sample counts differ");
    double m = 0.0;
    for (int k = 0; k < F.nt(); ++k) {
        m = std::max(m, map_distance(F[k], G[k]));
        m = std::max(m, map_distance(Finv[k], Ginv[k]));
    }
    return m;
}

} // namespace symplab
