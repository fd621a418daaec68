#include "symplab/hodge.hpp"

#include <cmath>
#include <vector>

#include "symplab/calculus.hpp"
#include "symplab/errors.hpp"
#include "symplab/parallel.hpp"

namespace symplab {

void MetricSpec::validate() const {
    const std::size_t n = grid.size();
    if (g11.v.size() != n || g12.v.size() != n || g22.v.size() != n)
        throw ConfigError("metric coefficient fields do not match the grid");
    for (std::size_t i = 0; i < n; ++i) {
        const double det = g11.v[i] * g22.v[i] - g12.v[i] * g12.v[i];
        if (!(g11.v[i] > 0.0) || !(det > 0.0))
            throw MetricNotSPD("metric is not positive definite at a node");
    }
}

ScalarField MetricSpec::sqrt_det() const {
    ScalarField s(grid);
    for (std::size_t i = 0; i < s.v.size(); ++i)
        s.v[i] = std::sqrt(g11.v[i] * g22.v[i] - g12.v[i] * g12.v[i]);
    return s;
}

namespace {

// Flux sqrt(det g) * g^{-1} theta, the divergence of which gives the
// codifferential up to the volume factor.
void metric_flux(const OneForm& theta, const MetricSpec& g, ScalarField& fx,
                 ScalarField& fy) {
    const std::size_t n = theta.grid.size();
    fx = ScalarField(theta.grid);
    fy = ScalarField(theta.grid);
    exec::par_for(n, [&](std::size_t i) {
        const double det = g.g11.v[i] * g.g22.v[i] - g.g12.v[i] * g.g12.v[i];
        const double sg = std::sqrt(det);
        const double i11 = g.g22.v[i] / det;
        const double i12 = -g.g12.v[i] / det;
        const double i22 = g.g11.v[i] / det;
        fx.v[i] = sg * (i11 * theta.cx[i] + i12 * theta.cy[i]);
        fy.v[i] = sg * (i12 * theta.cx[i] + i22 * theta.cy[i]);
    });
}

// Weighted operator L u = sqrt(det g) * delta_g(du); symmetric positive
// semidefinite in the plain grid inner product.
ScalarField weighted_operator(const ScalarField& u, const MetricSpec& g) {
    OneForm du = spectral::gradient(u);
    ScalarField fx, fy;
    metric_flux(du, g, fx, fy);
    ScalarField out = spectral::divergence(fx, fy);
    for (double& x : out.v) x = -x;
    return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void subtract_mean(ScalarField& f) {
    const double m = mean(f);
    for (double& x : f.v) x -= m;
}

} // namespace

ScalarField codifferential(const OneForm& theta, const MetricSpec& g) {
    g.validate();
    if (g.is_flat) {
        ScalarField tx, ty;
        tx.grid = ty.grid = theta.grid;
        tx.v = theta.cx;
        ty.v = theta.cy;
        ScalarField out = spectral::divergence(tx, ty);
        for (double& x : out.v) x = -x;
        return out;
    }
    ScalarField fx, fy;
    metric_flux(theta, g, fx, fy);
    ScalarField out = spectral::divergence(fx, fy);
    const ScalarField sg = g.sqrt_det();
    exec::par_for(out.v.size(),
                  [&](std::size_t i) { out.v[i] = -out.v[i] / sg.v[i]; });
    return out;
}

ScalarField solve_poisson(const ScalarField& rhs, const MetricSpec& g) {
    g.validate();
    // Solvability requires zero volume-weighted mean (this reduces to the
    // plain mean for the flat metric).
    const ScalarField sg = g.sqrt_det();
    double wsum = 0.0, wtot = 0.0;
    for (std::size_t i = 0; i < rhs.v.size(); ++i) {
        wsum += sg.v[i] * rhs.v[i];
        wtot += sg.v[i];
    }
    if (std::abs(wsum / wtot) >= 1e-10)
        throw IncompatibleRHS("poisson right-hand side has nonzero mean");

    if (g.is_flat) {
        ScalarField u = spectral::inverse_laplacian(rhs);
        subtract_mean(u);
        return u;
    }

    // Conjugate gradients on L u = sqrt(det g) * rhs with the flat
    // inverse Laplacian as preconditioner. Sums stay serial so results
    // do not depend on the thread count.
    ScalarField f(rhs.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = sg.v[i] * rhs.v[i];
    subtract_mean(f);

    const double fnorm = std::sqrt(dot(f.v, f.v));
    const double tol = 1e-10 * fnorm;
    const std::size_t cap = 10 * rhs.grid.size();

    ScalarField u = spectral::inverse_laplacian(f);
    ScalarField r = f - weighted_operator(u, g);
    ScalarField z = spectral::inverse_laplacian(r);
    ScalarField p = z;
    double rz = dot(r.v, z.v);

    std::size_t it = 0;
    int polish = 2; // a couple of extra steps after the tolerance is hit
    while (true) {
        const double rnorm = std::sqrt(dot(r.v, r.v));
        if (rnorm <= tol) {
            if (polish == 0) break;
            --polish;
        }
        if (++it > cap)
            throw NoConvergence("poisson conjugate gradient hit iteration cap");
        ScalarField Ap = weighted_operator(p, g);
        const double pAp = dot(p.v, Ap.v);
        if (pAp <= 0.0) break; // exhausted the Krylov space
        const double alpha = rz / pAp;
        for (std::size_t i = 0; i < u.v.size(); ++i) {
            u.v[i] += alpha * p.v[i];
            r.v[i] -= alpha * Ap.v[i];
        }
        z = spectral::inverse_laplacian(r);
        const double rz_new = dot(r.v, z.v);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < p.v.size(); ++i) p.v[i] = z.v[i] + beta * p.v[i];
    }
    subtract_mean(u);
    return u;
}

std::array<double, 2> HarmonicBasis::periods(const OneForm& theta) {
    // The line integral along {y = const} is the x-row mean of theta_x;
    // averaging over rows gives the full grid mean (and similarly for
    // the second cycle).
    return {mean(theta.cx), mean(theta.cy)};
}

std::array<double, 4> HarmonicBasis::period_matrix() const {
    const auto p1 = periods(h1);
    const auto p2 = periods(h2);
    return {p1[0], p2[0], p1[1], p2[1]};
}

void HarmonicBasis::validate() const {
    if (closedness_defect(h1) >= 1e-8 || closedness_defect(h2) >= 1e-8)
        throw NotClosed("harmonic basis element is not closed");
    if (max_abs(codifferential(h1, metric)) >= 1e-6 ||
        max_abs(codifferential(h2, metric)) >= 1e-6)
        throw DegenerateBasis("harmonic basis element is not co-closed");
    const auto M = period_matrix();
    if (std::abs(M[0] * M[3] - M[1] * M[2]) <= 1e-8)
        throw DegenerateBasis("harmonic basis has a degenerate period matrix");
}

namespace {

OneForm const_form(const GridSpec& g, double cx, double cy) {
    OneForm f(g);
    for (std::size_t i = 0; i < f.cx.size(); ++i) {
        f.cx[i] = cx;
        f.cy[i] = cy;
    }
    return f;
}

// The g-harmonic representative of a closed form: subtract the exact
// part of its Hodge split.
OneForm harmonic_part(const OneForm& theta, const MetricSpec& g) {
    ScalarField v = solve_poisson(codifferential(theta, g), g);
    return theta - spectral::gradient(v);
}

} // namespace

HarmonicBasis harmonic_basis(const MetricSpec& g) {
    HarmonicBasis B;
    B.metric = g;
    B.provenance = "canonical";
    const OneForm dx = const_form(g.grid, 1.0, 0.0);
    const OneForm dy = const_form(g.grid, 0.0, 1.0);
    if (g.is_flat) {
        B.h1 = dx;
        B.h2 = dy;
    } else {
        B.h1 = harmonic_part(dx, g);
        B.h2 = harmonic_part(dy, g);
    }
    B.validate();
    return B;
}

HarmonicBasis transport_basis(const HarmonicBasis& B, const MetricSpec& g2) {
    HarmonicBasis out;
    out.metric = g2;
    out.provenance = "transported-from(" + B.metric.tag + ":" + B.provenance + ")";
    out.h1 = harmonic_part(B.h1, g2);
    out.h2 = harmonic_part(B.h2, g2);
    out.validate();
    return out;
}

HodgeSplit hodge_decompose(const OneForm& theta, const MetricSpec& g,
                           const HarmonicBasis& B) {
    const double defect = closedness_defect(theta);
    if (defect >= 1e-8)
        throw NotClosed("form is not closed: curl = " + std::to_string(defect));

    const auto P = HarmonicBasis::periods(theta);
    const auto M = B.period_matrix();
    const double det = M[0] * M[3] - M[1] * M[2];
    if (std::abs(det) <= 1e-8)
        throw DegenerateBasis("basis period matrix is singular");

    HodgeSplit s;
    s.lambda1 = (M[3] * P[0] - M[1] * P[1]) / det;
    s.lambda2 = (-M[2] * P[0] + M[0] * P[1]) / det;
    s.harmonic = s.lambda1 * B.h1 + s.lambda2 * B.h2;

    const OneForm exact = theta - s.harmonic;
    s.potential = solve_poisson(codifferential(exact, g), g);
    s.residual = max_abs(exact - spectral::gradient(s.potential));
    return s;
}

double basis_norm(const HodgeSplit& s) {
    return std::abs(s.lambda1) + std::abs(s.lambda2);
}

} // namespace symplab
