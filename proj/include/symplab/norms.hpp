#pragma once

#include "symplab/grid.hpp"
#include "symplab/hodge.hpp"
#include "symplab/isotopy.hpp"

namespace symplab {

// Everything needed to evaluate the norm of a symplectic field: the metric
// picks the splitting, the basis fixes the coefficients of the harmonic part.
struct NormContext {
    MetricSpec metric;
    HarmonicBasis basis;

    static NormContext flat(const GridSpec& g);
    static NormContext with_metric(MetricSpec m);
};

// Decomposition of one field relative to a context.
struct NormBreakdown {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double oscillation = 0.0;   // osc of the potential
    double value = 0.0;         // |lambda1| + |lambda2| + oscillation
    ScalarField potential;
    double residual = 0.0;      // reconstruction defect of the splitting
};

// Norm of a symplectic vector field. Throws NotSymplectic if the contraction
// of the field with the area form fails closedness by more than `gate`.
NormBreakdown symp_norm(const VectorField& X, const NormContext& ctx,
                        double gate = 1e-6);

enum class TimeMode { l1, sup };

// Length of an isotopy: time-l1 or time-sup of the generator norm.
double isotopy_length(const Isotopy& iso, const NormContext& ctx,
                      TimeMode mode = TimeMode::l1);

// Generator-space distance between two isotopies sharing a sample count.
double d0(const Isotopy& a, const Isotopy& b, const NormContext& ctx,
          TimeMode mode = TimeMode::l1);

struct DistanceReport {
    double d0_fwd = 0.0;   // generator distance, forward paths
    double d0_inv = 0.0;   // generator distance, inverse paths
    double D = 0.0;        // symmetrised: (d0_fwd + d0_inv) / 2
    double c0 = 0.0;       // uniform distance over maps and inverses
    double total = 0.0;    // c0 + D
    TimeMode mode = TimeMode::l1;
};

// Full distance between two symplectic isotopies. The second form takes
// precomputed inverse isotopies so sweeps over many pairs can reuse the
// map inversions.
DistanceReport distance(const Isotopy& a, const Isotopy& b,
                        const NormContext& ctx, TimeMode mode = TimeMode::l1);
DistanceReport distance(const Isotopy& a, const Isotopy& b,
                        const Isotopy& a_inv, const Isotopy& b_inv,
                        const NormContext& ctx, TimeMode mode = TimeMode::l1);

// Oscillation length of a Hamiltonian path: integral of osc(H_t) dt.
double hofer_length(const TimeSeries<ScalarField>& H);

// Hamiltonian-path distance: integral of osc(H_t - K_t) dt plus the uniform
// distance of the generated flows.
struct HamDistanceReport {
    double osc_part = 0.0;
    double c0 = 0.0;
    double total = 0.0;
};

HamDistanceReport d_ham(const TimeSeries<ScalarField>& H,
                        const TimeSeries<ScalarField>& K, int substeps = 4);

} // namespace symplab
