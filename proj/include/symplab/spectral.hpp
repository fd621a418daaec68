#pragma once

#include "symplab/grid.hpp"

namespace symplab::spectral {

/// Partial derivatives by Fourier differentiation on the periodic grid.
/// The Nyquist mode is zeroed for odd derivatives so that outputs stay
/// real and the derivative operator stays exactly skew-symmetric.
ScalarField deriv_x(const ScalarField& f);
ScalarField deriv_y(const ScalarField& f);

/// du = (d_x u) dx + (d_y u) dy with a single forward transform.
OneForm gradient(const ScalarField& u);

/// d_x fx + d_y fy.
ScalarField divergence(const ScalarField& fx, const ScalarField& fy);

/// d_x cy - d_y cx: the scalar curl measuring non-closedness.
ScalarField curl(const OneForm& theta);

/// Solves -Lap(u) = f on the torus for the mean-zero u; the zero mode
/// of f is discarded.
ScalarField inverse_laplacian(const ScalarField& f);

/// Removes the longitudinal part of (fx, fy) mode by mode, using the
/// same Nyquist-zeroed wavenumbers as the derivative operators, so the
/// result's `divergence` vanishes to round-off. Modes the derivative
/// operators cannot see (the zero mode and the pure Nyquist corner)
/// pass through unchanged.
void project_divergence_free(ScalarField& fx, ScalarField& fy);

} // namespace symplab::spectral
