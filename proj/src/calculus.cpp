#include "symplab/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace symplab {

OneForm d_scalar(const ScalarField& u) { return spectral::gradient(u); }

double closedness_defect(const OneForm& theta) {
    return max_abs(spectral::curl(theta));
}

OneForm omega_contract(const VectorField& X) {
    OneForm theta(X.grid);
    for (std::size_t i = 0; i < X.vx.size(); ++i) {
        theta.cy[i] = X.vx[i];
        theta.cx[i] = -X.vy[i];
    }
    return theta;
}

VectorField omega_contract_inv(const OneForm& theta) {
    VectorField X(theta.grid);
    for (std::size_t i = 0; i < theta.cx.size(); ++i) {
        X.vx[i] = theta.cy[i];
        X.vy[i] = -theta.cx[i];
    }
    return X;
}

VectorField project_symplectic(const VectorField& X) {
    ScalarField fx(X.grid), fy(X.grid);
    fx.v = X.vx;
    fy.v = X.vy;
    // Mode-by-mode removal of the longitudinal part, with the same
    // Nyquist treatment as the divergence operator itself: going through
    // an inverse Laplacian instead would leave Nyquist-line content the
    // curl test still sees.
    spectral::project_divergence_free(fx, fy);
    VectorField out(X.grid);
    out.vx = std::move(fx.v);
    out.vy = std::move(fy.v);
    return out;
}

double osc(const ScalarField& u) {
    auto [lo, hi] = std::minmax_element(u.v.begin(), u.v.end());
    return *hi - *lo;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double mean(const ScalarField& u) { return mean(u.v); }

double time_integral(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) return 0.0;
    double s = 0.5 * (samples.front() + samples.back());
    for (std::size_t k = 1; k + 1 < n; ++k) s += samples[k];
    return s / static_cast<double>(n - 1);
}

double interpolate(const ScalarField& f, double px, double py) {
    return BicubicSampler(f.grid).sample(f.v, px, py);
}

Vec2 interpolate(const VectorField& f, double px, double py) {
    Vec2 r;
    BicubicSampler(f.grid).sample2(f.vx, f.vy, px, py, r.x, r.y);
    return r;
}

Vec2 interpolate(const OneForm& f, double px, double py) {
    Vec2 r;
    BicubicSampler(f.grid).sample2(f.cx, f.cy, px, py, r.x, r.y);
    return r;
}

void interpolate_many(const VectorField& f, const std::vector<double>& px,
                      const std::vector<double>& py, std::vector<double>& ox,
                      std::vector<double>& oy, exec::Mode mode) {
    ox.resize(px.size());
    oy.resize(px.size());
    const BicubicSampler s(f.grid);
    exec::par_for(
        px.size(),
        [&](std::size_t i) { s.sample2(f.vx, f.vy, px[i], py[i], ox[i], oy[i]); },
        mode);
}

void time_weights(int nt, double t, int& k0, std::array<double, 4>& w) {
    w = {0.0, 0.0, 0.0, 0.0};
    const int npts = std::min(nt, 4);
    const double pos = t * (nt - 1);
    k0 = static_cast<int>(std::floor(pos)) - 1;
    k0 = std::clamp(k0, 0, nt - npts);
    // Lagrange basis on the window's sample indices.
    for (int a = 0; a < npts; ++a) {
        double num = 1.0, den = 1.0;
        for (int b = 0; b < npts; ++b) {
            if (a == b) continue;
            num *= pos - (k0 + b);
            den *= static_cast<double>(a - b);
        }
        w[a] = num / den;
    }
}

} // namespace symplab
