#include "symplab/norms.hpp"

#include <cmath>
#include <string>

#include "symplab/calculus.hpp"
#include "symplab/errors.hpp"

namespace symplab {

NormContext NormContext::flat(const GridSpec& g) {
    NormContext ctx{MetricSpec::flat(g), harmonic_basis(MetricSpec::flat(g))};
    return ctx;
}

NormContext NormContext::with_metric(MetricSpec m) {
    HarmonicBasis basis = harmonic_basis(m);
    return NormContext{std::move(m), std::move(basis)};
}

NormBreakdown symp_norm(const VectorField& X, const NormContext& ctx,
                        double gate) {
    OneForm theta = omega_contract(X);
    const double defect = closedness_defect(theta);
    if (defect > gate)
        throw NotSymplectic("field is not symplectic: closedness defect " +
                            std::to_string(defect) + " exceeds " +
                            std::to_string(gate));
    // Tolerated noise below the gate still needs removing before the
    // decomposition, whose own closedness requirement is stricter.
    if (defect > 1e-9) theta = omega_contract(project_symplectic(X));
    const HodgeSplit split = hodge_decompose(theta, ctx.metric, ctx.basis);
    NormBreakdown out;
    out.lambda1 = split.lambda1;
    out.lambda2 = split.lambda2;
    out.oscillation = osc(split.potential);
    out.value = std::abs(split.lambda1) + std::abs(split.lambda2) +
                out.oscillation;
    out.potential = split.potential;
    out.residual = split.residual;
    return out;
}

namespace {

double reduce_over_time(const std::vector<double>& vals, double dt,
                        TimeMode mode) {
    if (mode == TimeMode::sup) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    // trapezoid in time
    double s = 0.5 * (vals.front() + vals.back());
    for (std::size_t k = 1; k + 1 < vals.size(); ++k) s += vals[k];
    return s * dt;
}

} // namespace

double isotopy_length(const Isotopy& iso, const NormContext& ctx,
                      TimeMode mode) {
    std::vector<double> vals;
    vals.reserve(iso.nt());
    for (const VectorField& X : iso.generator.samples)
        vals.push_back(symp_norm(X, ctx).value);
    return reduce_over_time(vals, iso.generator.dt(), mode);
}

double d0(const Isotopy& a, const Isotopy& b, const NormContext& ctx,
          TimeMode mode) {
    if (a.nt() != b.nt()) throw ConfigError("isotopy sample counts differ");
    std::vector<double> vals;
    vals.reserve(a.nt());
    for (int k = 0; k < a.nt(); ++k) {
        const VectorField diff = a.generator[k] - b.generator[k];
        vals.push_back(symp_norm(diff, ctx).value);
    }
    return reduce_over_time(vals, a.generator.dt(), mode);
}

DistanceReport distance(const Isotopy& a, const Isotopy& b,
                        const Isotopy& a_inv, const Isotopy& b_inv,
                        const NormContext& ctx, TimeMode mode) {
    DistanceReport rep;
    rep.mode = mode;
    rep.d0_fwd = d0(a, b, ctx, mode);
    rep.d0_inv = d0(a_inv, b_inv, ctx, mode);
    rep.D = 0.5 * (rep.d0_fwd + rep.d0_inv);
    rep.c0 = c0_distance(a.flow, b.flow, a_inv.flow, b_inv.flow);
    rep.total = rep.c0 + rep.D;
    return rep;
}

DistanceReport distance(const Isotopy& a, const Isotopy& b,
                        const NormContext& ctx, TimeMode mode) {
    return distance(a, b, inverse_isotopy(a), inverse_isotopy(b), ctx, mode);
}

double hofer_length(const TimeSeries<ScalarField>& H) {
    std::vector<double> vals;
    vals.reserve(H.nt());
    for (const ScalarField& h : H.samples) vals.push_back(osc(h));
    return reduce_over_time(vals, H.dt(), TimeMode::l1);
}

HamDistanceReport d_ham(const TimeSeries<ScalarField>& H,
                        const TimeSeries<ScalarField>& K, int substeps) {
    if (H.nt() != K.nt()) throw ConfigError("path sample counts differ");
    HamDistanceReport rep;
    std::vector<double> vals;
    vals.reserve(H.nt());
    for (int k = 0; k < H.nt(); ++k) vals.push_back(osc(H[k] - K[k]));
    rep.osc_part = reduce_over_time(vals, H.dt(), TimeMode::l1);

    const Isotopy phi = hamiltonian_isotopy(H, substeps);
    const Isotopy psi = hamiltonian_isotopy(K, substeps);
    rep.c0 = c0_distance(phi.flow, psi.flow);
    rep.total = rep.osc_part + rep.c0;
    return rep;
}

} // namespace symplab
