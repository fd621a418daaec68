#pragma once

#include <array>
#include <string>

#include "symplab/grid.hpp"
#include "symplab/metric.hpp"

namespace symplab {

/// Codifferential of a 1-form under g:
///   delta theta = -(1/sqrt(det g)) * div( sqrt(det g) * g^{-1} theta ).
/// Sign convention: delta(du) is the positive Laplacian on functions in
/// the flat case. The g-volume-weighted grid mean of the result is zero
/// to round-off.
ScalarField codifferential(const OneForm& theta, const MetricSpec& g);

/// Solves delta_g(du) = rhs for the mean-zero potential u. The flat
/// metric uses the direct spectral inverse; otherwise a conjugate
/// gradient iteration preconditioned by the flat inverse Laplacian
/// (relative l2 residual 1e-10, iteration cap 10*nx*ny). Throws
/// IncompatibleRHS when the weighted mean of rhs exceeds 1e-10 and
/// NoConvergence at the iteration cap.
ScalarField solve_poisson(const ScalarField& rhs, const MetricSpec& g);

/// Basis of the 2-dimensional space of g-harmonic 1-forms, tagged with
/// how it was produced.
struct HarmonicBasis {
    MetricSpec metric;
    OneForm h1, h2;
    std::string provenance;

    /// Periods (line integrals along the two fundamental cycles) of a
    /// closed 1-form; row c is the cycle, computed as grid means of the
    /// matching component.
    static std::array<double, 2> periods(const OneForm& theta);

    /// Column i holds the periods of h_i.
    std::array<double, 4> period_matrix() const;

    /// Closed to 1e-8, co-closed to 1e-6, period matrix nondegenerate.
    void validate() const;
};

/// Canonical basis: {dx, dy} projected onto g-harmonic representatives
/// (the flat case returns {dx, dy} exactly).
HarmonicBasis harmonic_basis(const MetricSpec& g);

/// The g2-harmonic parts of B's elements. Periods are preserved, so
/// decomposition coefficients agree between paired bases.
HarmonicBasis transport_basis(const HarmonicBasis& B, const MetricSpec& g2);

/// theta = lambda1 h1 + lambda2 h2 + du with u mean-zero.
struct HodgeSplit {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    OneForm harmonic;
    ScalarField potential;
    double residual = 0.0;
};

/// Splits a closed 1-form. Coefficients come from period integrals (a
/// metric-free computation), the potential from the Poisson solve; the
/// metric enters only through the potential. Throws NotClosed when the
/// curl of theta exceeds 1e-8.
HodgeSplit hodge_decompose(const OneForm& theta, const MetricSpec& g,
                           const HarmonicBasis& B);

/// |lambda1| + |lambda2|.
double basis_norm(const HodgeSplit& s);

} // namespace symplab
