#include "symplab/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace symplab::spectral {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// FFTW's planner is not thread-safe; all plan creation is serialized.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// One set of plans and buffers per grid size. Plans use FFTW_ESTIMATE:
// measured plans pick algorithms by timing, which would make results
// depend on machine load.
struct Workspace {
    int nx, ny;
    std::size_t nreal, ncplx;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_complex* spec2 = nullptr;
    fftw_plan fwd{}, bwd{}, bwd2{};
    std::mutex mu;

    Workspace(int nx_, int ny_)
        : nx(nx_), ny(ny_),
          nreal(static_cast<std::size_t>(nx_) * ny_),
          ncplx(static_cast<std::size_t>(ny_) * (nx_ / 2 + 1)) {
        real = fftw_alloc_real(nreal);
        spec = fftw_alloc_complex(ncplx);
        spec2 = fftw_alloc_complex(ncplx);
        std::lock_guard<std::mutex> lk(planner_mutex());
        fwd = fftw_plan_dft_r2c_2d(ny, nx, real, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_2d(ny, nx, spec, real, FFTW_ESTIMATE);
        bwd2 = fftw_plan_dft_c2r_2d(ny, nx, spec2, real, FFTW_ESTIMATE);
    }

    ~Workspace() {
        std::lock_guard<std::mutex> lk(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_destroy_plan(bwd2);
        fftw_free(real);
        fftw_free(spec);
        fftw_free(spec2);
    }

    double kx(int i) const { return two_pi * i; }
    double ky(int j) const { return two_pi * (j <= ny / 2 ? j : j - ny); }
    bool nyq_x(int i) const { return i == nx / 2; }
    bool nyq_y(int j) const { return 2 * j == ny; }
};

Workspace& workspace_for(const GridSpec& g) {
    static std::map<std::pair<int, int>, std::unique_ptr<Workspace>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[{g.nx, g.ny}];
    if (!slot) slot = std::make_unique<Workspace>(g.nx, g.ny);
    return *slot;
}

enum class Axis { x, y };

// real -> half-complex spectrum of f, stored in ws.spec.
void forward(Workspace& ws, const ScalarField& f) {
    std::memcpy(ws.real, f.v.data(), ws.nreal * sizeof(double));
    fftw_execute(ws.fwd);
}

// ws.spec -> real field, normalized. Destroys ws.spec.
void backward(Workspace& ws, ScalarField& out) {
    fftw_execute(ws.bwd);
    const double scale = 1.0 / static_cast<double>(ws.nreal);
    out.v.resize(ws.nreal);
    for (std::size_t i = 0; i < ws.nreal; ++i) out.v[i] = ws.real[i] * scale;
}

void backward2(Workspace& ws, ScalarField& out) {
    fftw_execute(ws.bwd2);
    const double scale = 1.0 / static_cast<double>(ws.nreal);
    out.v.resize(ws.nreal);
    for (std::size_t i = 0; i < ws.nreal; ++i) out.v[i] = ws.real[i] * scale;
}

// dst = (i * k_axis) * src for one derivative along the given axis.
void scale_deriv(const Workspace& ws, const fftw_complex* src, fftw_complex* dst,
                 Axis axis) {
    const int nxh = ws.nx / 2 + 1;
    for (int j = 0; j < ws.ny; ++j) {
        for (int i = 0; i < nxh; ++i) {
            const std::size_t m = static_cast<std::size_t>(j) * nxh + i;
            double k;
            if (axis == Axis::x)
                k = ws.nyq_x(i) ? 0.0 : ws.kx(i);
            else
                k = ws.nyq_y(j) ? 0.0 : ws.ky(j);
            const double re = src[m][0], im = src[m][1];
            dst[m][0] = -k * im;
            dst[m][1] = k * re;
        }
    }
}

ScalarField deriv(const ScalarField& f, Axis axis) {
    Workspace& ws = workspace_for(f.grid);
    std::lock_guard<std::mutex> lk(ws.mu);
    forward(ws, f);
    scale_deriv(ws, ws.spec, ws.spec, axis);
    ScalarField out;
    out.grid = f.grid;
    backward(ws, out);
    return out;
}

} // namespace

ScalarField deriv_x(const ScalarField& f) { return deriv(f, Axis::x); }
ScalarField deriv_y(const ScalarField& f) { return deriv(f, Axis::y); }

OneForm gradient(const ScalarField& u) {
    Workspace& ws = workspace_for(u.grid);
    std::lock_guard<std::mutex> lk(ws.mu);
    forward(ws, u);
    OneForm out(u.grid);
    scale_deriv(ws, ws.spec, ws.spec2, Axis::x);
    ScalarField tmp;
    tmp.grid = u.grid;
    backward2(ws, tmp);
    out.cx = std::move(tmp.v);
    scale_deriv(ws, ws.spec, ws.spec2, Axis::y);
    backward2(ws, tmp);
    out.cy = std::move(tmp.v);
    return out;
}

ScalarField divergence(const ScalarField& fx, const ScalarField& fy) {
    Workspace& ws = workspace_for(fx.grid);
    std::lock_guard<std::mutex> lk(ws.mu);
    forward(ws, fx);
    scale_deriv(ws, ws.spec, ws.spec2, Axis::x);
    forward(ws, fy);
    scale_deriv(ws, ws.spec, ws.spec, Axis::y);
    for (std::size_t m = 0; m < ws.ncplx; ++m) {
        ws.spec[m][0] += ws.spec2[m][0];
        ws.spec[m][1] += ws.spec2[m][1];
    }
    ScalarField out;
    out.grid = fx.grid;
    backward(ws, out);
    return out;
}

ScalarField curl(const OneForm& theta) {
    Workspace& ws = workspace_for(theta.grid);
    std::lock_guard<std::mutex> lk(ws.mu);
    ScalarField cy;
    cy.grid = theta.grid;
    cy.v = theta.cy;
    forward(ws, cy);
    scale_deriv(ws, ws.spec, ws.spec2, Axis::x);
    ScalarField cx;
    cx.grid = theta.grid;
    cx.v = theta.cx;
    forward(ws, cx);
    scale_deriv(ws, ws.spec, ws.spec, Axis::y);
    for (std::size_t m = 0; m < ws.ncplx; ++m) {
        ws.spec2[m][0] -= ws.spec[m][0];
        ws.spec2[m][1] -= ws.spec[m][1];
    }
    ScalarField out;
    out.grid = theta.grid;
    backward2(ws, out);
    return out;
}

void project_divergence_free(ScalarField& fx, ScalarField& fy) {
    Workspace& ws = workspace_for(fx.grid);
    std::lock_guard<std::mutex> lk(ws.mu);
    forward(ws, fx);
    std::memcpy(ws.spec2, ws.spec, ws.ncplx * sizeof(fftw_complex));
    forward(ws, fy);
    const int nxh = ws.nx / 2 + 1;
    for (int j = 0; j < ws.ny; ++j) {
        for (int i = 0; i < nxh; ++i) {
            const std::size_t m = static_cast<std::size_t>(j) * nxh + i;
            const double kx = ws.nyq_x(i) ? 0.0 : ws.kx(i);
            const double ky = ws.nyq_y(j) ? 0.0 : ws.ky(j);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            for (int c = 0; c < 2; ++c) {
                const double dot =
                    (kx * ws.spec2[m][c] + ky * ws.spec[m][c]) / k2;
                ws.spec2[m][c] -= kx * dot;
                ws.spec[m][c] -= ky * dot;
            }
        }
    }
    backward2(ws, fx);
    backward(ws, fy);
}

ScalarField inverse_laplacian(const ScalarField& f) {
    Workspace& ws = workspace_for(f.grid);
    std::lock_guard<std::mutex> lk(ws.mu);
    forward(ws, f);
    const int nxh = ws.nx / 2 + 1;
    for (int j = 0; j < ws.ny; ++j) {
        for (int i = 0; i < nxh; ++i) {
            const std::size_t m = static_cast<std::size_t>(j) * nxh + i;
            const double kx = ws.kx(i);
            const double ky = ws.ky(j);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) {
                ws.spec[m][0] = 0.0;
                ws.spec[m][1] = 0.0;
            } else {
                ws.spec[m][0] /= k2;
                ws.spec[m][1] /= k2;
            }
        }
    }
    ScalarField out;
    out.grid = f.grid;
    backward(ws, out);
    return out;
}

} // namespace symplab::spectral
