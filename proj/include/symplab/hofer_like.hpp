#pragma once

#include <optional>
#include <vector>

#include "symplab/displacement.hpp"
#include "symplab/isotopy.hpp"
#include "symplab/norms.hpp"

namespace symplab {

// Finite-dimensional family of symplectic paths. The generator is a constant
// translation part plus a Hamiltonian part, both with trigonometric time
// dependence:
//
//   X_t = (a(t), b(t)) + X_{H_t},
//   H_t = sum_j tau_j(t) sum_k c_{j,k} sigma_k(x, y),
//
// tau: 1, cos(2 pi m t), sin(2 pi m t) for m = 1..n_harm_t, and sigma the
// non-constant real Fourier modes with |kx|, |ky| <= n_harm_xy. Parameter
// layout: a-coefficients, b-coefficients, then Hamiltonian coefficients
// grouped by temporal basis function.
struct PathAnsatz {
    int n_harm_t = 1;
    int n_harm_xy = 1;
    std::vector<double> params;

    int n_time_basis() const { return 2 * n_harm_t + 1; }
    int n_space_modes() const {
        const int w = 2 * n_harm_xy + 1;
        return w * w - 1;
    }
    int param_count() const {
        return 2 * n_time_basis() + n_time_basis() * n_space_modes();
    }
};

// Sampled generator path of an ansatz, evaluated analytically on a grid.
GeneratorPath realize_generator(const PathAnsatz& a, const GridSpec& g,
                                int nt);
Isotopy realize_isotopy(const PathAnsatz& a, const GridSpec& g, int nt,
                        int substeps);

struct OptConfig {
    int n_harm_t = 1;
    int n_harm_xy = 1;
    int restarts = 3;
    int max_evals = 2000;       // total objective budget across restarts
    double penalty = 1e3;       // weight on the endpoint mismatch
    double endpoint_tol = 1e-3; // convergence threshold at final resolution
    int search_nx = 32;
    int search_ny = 32;
    int search_nt = 17;
    int search_substeps = 1;
    int final_nt = 17;
    int final_substeps = 2;
    double init_step = 0.05;
    double min_step = 1e-4;
    std::optional<std::vector<double>> seed_params;
};

struct EnergyReport {
    double e0_upper = 0.0;       // certified path length at final resolution
    double length = 0.0;         // same quantity, kept for readability
    double endpoint_error = 0.0; // time-one map mismatch at final resolution
    int evaluations = 0;
    bool converged = false;
    PathAnsatz best;
    std::vector<double> objective_trace; // best objective after each sweep
};

// Upper bound on the minimal path length reaching `target` from the
// identity. Search runs on a coarse grid, the winner is re-evaluated at the
// resolution of `ctx`. Throws NoFeasiblePath if no candidate lands within
// endpoint_tol of the target.
EnergyReport estimate_e0(const DisplacementField& target,
                         const NormContext& ctx, const OptConfig& cfg);

struct SymmetrizedEnergy {
    EnergyReport fwd;
    EnergyReport inv;
    double e = 0.0; // (fwd.e0_upper + inv.e0_upper) / 2
};

// Symmetrised energy. The pair form takes the inverse map explicitly and is
// exactly order-independent; the single-argument form inverts internally.
SymmetrizedEnergy estimate_e(const DisplacementField& phi,
                             const DisplacementField& phi_inv,
                             const NormContext& ctx, const OptConfig& cfg);
SymmetrizedEnergy estimate_e(const DisplacementField& phi,
                             const NormContext& ctx, const OptConfig& cfg);

// Length bound for the composition of two time-one maps, built from two
// optimizers' winning paths: traverse the first path, then the second path
// left-translated by the first time-one map (its generator pushed forward).
// The endpoint error is the distance of the construction's endpoint to the
// supplied composed target.
struct ConcatBound {
    double length = 0.0;
    double endpoint_error = 0.0;
};

ConcatBound concat_upper_bound(const EnergyReport& a, const EnergyReport& b,
                               const DisplacementField& composed_target,
                               const NormContext& ctx, int nt, int substeps);

// Hamiltonian path generating the inverse isotopy: -H_t composed with the
// forward flow.
TimeSeries<ScalarField> inverse_hamiltonian_path(
    const TimeSeries<ScalarField>& H, const Isotopy& iso);

// Projection of a sampled Hamiltonian path onto the ansatz coefficients
// (harmonic part left at zero).
std::vector<double> project_hamiltonian(const TimeSeries<ScalarField>& H,
                                        int n_harm_t, int n_harm_xy);

struct HoferComparison {
    double hofer = 0.0; // oscillation length of the Hamiltonian path
    SymmetrizedEnergy energy;
};

// Symmetrized energy estimate for the time-one map of a Hamiltonian path
// next to the path's oscillation length; the forward leg is seeded with
// the projection of the path, the inverse leg with the projection of the
// inverse-generating path. The energy must not exceed the oscillation
// length by more than the optimizer slack.
HoferComparison compare_with_hofer(const TimeSeries<ScalarField>& H,
                                   const NormContext& ctx, OptConfig cfg);

} // namespace symplab
