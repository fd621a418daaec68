#pragma once

#include "symplab/displacement.hpp"
#include "symplab/grid.hpp"

namespace symplab {

/// Time-sampled generating vector field X_t of a flow.
using GeneratorPath = TimeSeries<VectorField>;

/// A smooth path of torus maps starting at the identity, stored as
/// flow snapshots plus the generator samples that produced (or
/// describe) it. consistency_residual measures how well the centered
/// time difference of the flow matches the generator composed with the
/// flow, maximized over interior samples and nodes.
struct Isotopy {
    GeneratorPath generator;
    TimeSeries<DisplacementField> flow;
    int substeps = 1;
    double consistency_residual = 0.0;

    int nt() const { return generator.nt(); }
    const DisplacementField& time_one_map() const {
        return flow.samples.back();
    }
    /// Largest generator magnitude over samples and nodes.
    double max_speed() const;
    /// Recomputes the stored consistency residual.
    double measure_consistency() const;
};

Isotopy identity_isotopy(const GridSpec& g, int nt);

/// Integrates d/dt phi_t = X_t(phi_t) with classical RK4, `substeps`
/// steps per sample interval. The generator is interpolated in time by
/// a 4-point Lagrange rule. Every stored snapshot must satisfy the
/// Jacobian floor.
Isotopy integrate_flow(const GeneratorPath& gen, int substeps);

/// Recovers generator samples from flow snapshots by second-order time
/// differences composed with the inverted maps.
GeneratorPath generator_from_flow(const TimeSeries<DisplacementField>& flow);

/// The reversed path t -> phi_t^{-1}: flows by per-sample map
/// inversion, generator by the chain rule -(phi_t^{-1})_* X_t.
Isotopy inverse_isotopy(const Isotopy& iso);

/// t -> outer_t(inner_t(p)); generator by the product chain rule
/// X_t + (outer_t)_* Y_t.
Isotopy compose_isotopies(const Isotopy& outer, const Isotopy& inner);

/// Commutator path t -> phi_t psi_t phi_t^{-1} psi_t^{-1}, exposing the
/// four chain-rule generator terms: sigma-dot = X + Y + Z + U with
///   X = phi-dot, Y = (phi)_* psi-dot,
///   Z = -(phi psi phi^{-1})_* phi-dot, U = -(sigma)_* psi-dot.
struct CommutatorParts {
    Isotopy sigma;
    GeneratorPath X, Y, Z, U;
};
CommutatorParts commutator_isotopy(const Isotopy& phi, const Isotopy& psi);

/// Flow of the Hamiltonian field X_H = (d_y H, -d_x H) for a sampled
/// time-dependent Hamiltonian.
Isotopy hamiltonian_isotopy(const TimeSeries<ScalarField>& H, int substeps);

/// sup over t and nodes of the torus distance between two flows, taken
/// over both the maps and their (numerically inverted) inverses.
double c0_distance(const TimeSeries<DisplacementField>& F,
                   const TimeSeries<DisplacementField>& G);

/// Same, with externally supplied inverse flows (to reuse inversions).
double c0_distance(const TimeSeries<DisplacementField>& F,
                   const TimeSeries<DisplacementField>& G,
                   const TimeSeries<DisplacementField>& Finv,
                   const TimeSeries<DisplacementField>& Ginv);

} // namespace symplab
