#pragma once

#include <cstdint>
#include <random>

#include "symplab/grid.hpp"
#include "symplab/isotopy.hpp"

namespace symplab {

// Reproducible band-limited random fixtures. Spatial spectra decay with
// the harmonic, time dependence is kept gentle so that flows of the
// generated paths stay well resolved by the sample spacing.
class FieldGen {
public:
    explicit FieldGen(std::uint64_t seed) : rng_(seed) {}

    // Mean-zero scalar with harmonics up to max_harm, scaled to the
    // requested max-abs amplitude.
    ScalarField scalar(const GridSpec& g, int max_harm, double amp);

    // Closed 1-form: harmonic part with coefficients up to harm_amp plus
    // the differential of a random scalar.
    OneForm closed_form(const GridSpec& g, int max_harm, double amp,
                        double harm_amp);

    // Constant drift plus a Hamiltonian part, rescaled so that the field
    // and its first derivatives respect the caps.
    VectorField symplectic_field(const GridSpec& g, int max_harm,
                                 double amp_cap, double grad_cap);

    // Time-dependent Hamiltonian with trigonometric time dependence; the
    // m-th time harmonic decays like 1/(2 pi m)^3.
    TimeSeries<ScalarField> hamiltonian_path(const GridSpec& g, int nt,
                                             int max_space_harm,
                                             int max_time_harm, double amp);

    // Symplectic generator path: gentle drift plus the Hamiltonian field
    // of a random path, with the same caps as symplectic_field applied
    // uniformly over all samples.
    GeneratorPath generator_path(const GridSpec& g, int nt,
                                 int max_space_harm, int max_time_harm,
                                 double amp_cap, double grad_cap);

    double uniform(double lo, double hi);

private:
    std::mt19937_64 rng_;
};

} // namespace symplab
