#pragma once

#include <array>
#include <vector>

#include "symplab/grid.hpp"
#include "symplab/parallel.hpp"
#include "symplab/spectral.hpp"

namespace symplab {

/// Exterior derivative of a function: du.
OneForm d_scalar(const ScalarField& u);

/// max |d_x theta_y - d_y theta_x| over nodes; zero for closed forms.
double closedness_defect(const OneForm& theta);

/// Contraction with the area form omega = dx ^ dy:
/// i_{(vx,vy)} omega = vx dy - vy dx.
OneForm omega_contract(const VectorField& X);

/// Inverse of omega_contract: theta = cx dx + cy dy maps to (cy, -cx).
VectorField omega_contract_inv(const OneForm& theta);

/// Orthogonal projection onto divergence-free fields: subtracts the
/// gradient part of the Helmholtz split. Symplectic inputs come back
/// unchanged to round-off; on fields derived through interpolation it
/// strips exactly the non-closed discretization noise of i_X omega,
/// leaving periods and potential alone.
VectorField project_symplectic(const VectorField& X);

/// Oscillation max(u) - min(u) over grid nodes.
double osc(const ScalarField& u);

/// Plain grid mean (equals the integral over the torus for the flat
/// volume element).
double mean(const ScalarField& u);
double mean(const std::vector<double>& v);

/// Trapezoid rule on uniform samples of [0, 1].
double time_integral(const std::vector<double>& samples);

/// Periodic bicubic interpolation (Catmull-Rom tensor product).
/// Reproduces node values exactly and converges at third order for
/// smooth fields.
class BicubicSampler {
public:
    explicit BicubicSampler(const GridSpec& g) : g_(g) {}

    double sample(const std::vector<double>& comp, double px, double py) const {
        Stencil s = stencil(px, py);
        return apply(comp, s);
    }

    /// Two components at one point, sharing the stencil work.
    void sample2(const std::vector<double>& a, const std::vector<double>& b,
                 double px, double py, double& oa, double& ob) const {
        Stencil s = stencil(px, py);
        oa = apply(a, s);
        ob = apply(b, s);
    }

private:
    struct Stencil {
        std::array<int, 4> ix, iy;
        std::array<double, 4> wx, wy;
    };

    static void weights(double s, std::array<double, 4>& w) {
        const double s2 = s * s, s3 = s2 * s;
        w[0] = 0.5 * (-s + 2.0 * s2 - s3);
        w[1] = 1.0 + 0.5 * (-5.0 * s2 + 3.0 * s3);
        w[2] = 0.5 * (s + 4.0 * s2 - 3.0 * s3);
        w[3] = 0.5 * (-s2 + s3);
    }

    Stencil stencil(double px, double py) const {
        Stencil st;
        const double gx = px * g_.nx, gy = py * g_.ny;
        const double fx = std::floor(gx), fy = std::floor(gy);
        weights(gx - fx, st.wx);
        weights(gy - fy, st.wy);
        const int i0 = static_cast<int>(fx), j0 = static_cast<int>(fy);
        for (int k = 0; k < 4; ++k) {
            st.ix[k] = mod(i0 - 1 + k, g_.nx);
            st.iy[k] = mod(j0 - 1 + k, g_.ny);
        }
        return st;
    }

    double apply(const std::vector<double>& comp, const Stencil& st) const {
        double acc = 0.0;
        for (int jj = 0; jj < 4; ++jj) {
            const std::size_t row = static_cast<std::size_t>(st.iy[jj]) * g_.nx;
            double r = 0.0;
            for (int ii = 0; ii < 4; ++ii) r += st.wx[ii] * comp[row + st.ix[ii]];
            acc += st.wy[jj] * r;
        }
        return acc;
    }

    static int mod(int a, int n) {
        int r = a % n;
        return r < 0 ? r + n : r;
    }

    GridSpec g_;
};

double interpolate(const ScalarField& f, double px, double py);
Vec2 interpolate(const VectorField& f, double px, double py);
Vec2 interpolate(const OneForm& f, double px, double py);

/// Batch evaluation of both components of a vector field at scattered
/// points; the kernel parallelized by the execution policy.
void interpolate_many(const VectorField& f, const std::vector<double>& px,
                      const std::vector<double>& py, std::vector<double>& ox,
                      std::vector<double>& oy, exec::Mode mode);

/// Cubic Lagrange interpolation weights in time on nt uniform samples
/// of [0, 1]. Writes the first sample index of the (up to 4-point)
/// window and its weights; unused weights are zero.
void time_weights(int nt, double t, int& k0, std::array<double, 4>& w);

} // namespace symplab
