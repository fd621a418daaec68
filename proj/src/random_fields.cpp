#include "symplab/random_fields.hpp"

#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/spectral.hpp"

namespace symplab {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double grad_sup(const VectorField& X) {
    ScalarField fx(X.grid), fy(X.grid);
    fx.v = X.vx;
    fy.v = X.vy;
    double m = 0.0;
    m = std::max(m, max_abs(spectral::deriv_x(fx)));
    m = std::max(m, max_abs(spectral::deriv_y(fx)));
    m = std::max(m, max_abs(spectral::deriv_x(fy)));
    m = std::max(m, max_abs(spectral::deriv_y(fy)));
    return m;
}

} // namespace

double FieldGen::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng_);
}

ScalarField FieldGen::scalar(const GridSpec& g, int max_harm, double amp) {
    ScalarField f(g);
    for (int kx = 0; kx <= max_harm; ++kx) {
        for (int ky = -max_harm; ky <= max_harm; ++ky) {
            if (kx == 0 && ky <= 0) continue;
            const double decay = 1.0 / (1.0 + kx * kx + ky * ky);
            const double c = uniform(-1.0, 1.0) * decay;
            const double s = uniform(-1.0, 1.0) * decay;
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    const double th = two_pi * (kx * g.x(i) + ky * g.y(j));
                    f.at(i, j) += c * std::cos(th) + s * std::sin(th);
                }
            }
        }
    }
    const double m = max_abs(f);
    if (m > 0.0) {
        const double s = amp / m;
        for (double& v : f.v) v *= s;
    }
    return f;
}

OneForm FieldGen::closed_form(const GridSpec& g, int max_harm, double amp,
                              double harm_amp) {
    const double l1 = uniform(-harm_amp, harm_amp);
    const double l2 = uniform(-harm_amp, harm_amp);
    OneForm theta = d_scalar(scalar(g, max_harm, amp));
    for (std::size_t i = 0; i < theta.cx.size(); ++i) {
        theta.cx[i] += l1;
        theta.cy[i] += l2;
    }
    return theta;
}

VectorField FieldGen::symplectic_field(const GridSpec& g, int max_harm,
                                       double amp_cap, double grad_cap) {
    const double a = uniform(-amp_cap, amp_cap);
    const double b = uniform(-amp_cap, amp_cap);
    const ScalarField H = scalar(g, max_harm, 1.0);
    VectorField X = omega_contract_inv(d_scalar(H));
    for (std::size_t i = 0; i < X.vx.size(); ++i) {
        X.vx[i] += a;
        X.vy[i] += b;
    }
    const double s = std::min(
        {1.0, amp_cap / std::max(max_abs(X), 1e-300),
         grad_cap / std::max(grad_sup(X), 1e-300)});
    for (std::size_t i = 0; i < X.vx.size(); ++i) {
        X.vx[i] *= s;
        X.vy[i] *= s;
    }
    return X;
}

TimeSeries<ScalarField> FieldGen::hamiltonian_path(const GridSpec& g, int nt,
                                                   int max_space_harm,
                                                   int max_time_harm,
                                                   double amp) {
    const ScalarField base = scalar(g, max_space_harm, 1.0);
    std::vector<ScalarField> cosc, sinc;
    for (int m = 1; m <= max_time_harm; ++m) {
        const double w = 1.0 / std::pow(two_pi * m, 3);
        cosc.push_back(scalar(g, max_space_harm, w));
        sinc.push_back(scalar(g, max_space_harm, w));
    }
    TimeSeries<ScalarField> H;
    H.samples.reserve(static_cast<std::size_t>(nt));
    double worst = 0.0;
    for (int k = 0; k < nt; ++k) {
        const double t = static_cast<double>(k) / (nt - 1);
        ScalarField h = base;
        for (int m = 1; m <= max_time_harm; ++m) {
            const double c = std::cos(two_pi * m * t);
            const double s = std::sin(two_pi * m * t);
            const ScalarField& fc = cosc[static_cast<std::size_t>(m - 1)];
            const ScalarField& fs = sinc[static_cast<std::size_t>(m - 1)];
            for (std::size_t i = 0; i < h.v.size(); ++i)
                h.v[i] += c * fc.v[i] + s * fs.v[i];
        }
        worst = std::max(worst, max_abs(h));
        H.samples.push_back(std::move(h));
    }
    if (worst > 0.0) {
        const double s = amp / worst;
        for (ScalarField& h : H.samples)
            for (double& v : h.v) v *= s;
    }
    return H;
}

GeneratorPath FieldGen::generator_path(const GridSpec& g, int nt,
                                       int max_space_harm, int max_time_harm,
                                       double amp_cap, double grad_cap) {
    const TimeSeries<ScalarField> H =
        hamiltonian_path(g, nt, max_space_harm, max_time_harm, 1.0);
    const double a0 = uniform(-1.0, 1.0);
    const double b0 = uniform(-1.0, 1.0);
    std::vector<double> ac, as, bc, bs;
    for (int m = 1; m <= max_time_harm; ++m) {
        const double w = 1.0 / std::pow(two_pi * m, 3);
        ac.push_back(uniform(-w, w));
        as.push_back(uniform(-w, w));
        bc.push_back(uniform(-w, w));
        bs.push_back(uniform(-w, w));
    }

    GeneratorPath gen;
    gen.samples.reserve(static_cast<std::size_t>(nt));
    double sup_v = 0.0, sup_g = 0.0;
    for (int k = 0; k < nt; ++k) {
        const double t = static_cast<double>(k) / (nt - 1);
        double at = a0, bt = b0;
        for (int m = 1; m <= max_time_harm; ++m) {
            const double c = std::cos(two_pi * m * t);
            const double s = std::sin(two_pi * m * t);
            at += ac[static_cast<std::size_t>(m - 1)] * c +
                  as[static_cast<std::size_t>(m - 1)] * s;
            bt += bc[static_cast<std::size_t>(m - 1)] * c +
                  bs[static_cast<std::size_t>(m - 1)] * s;
        }
        VectorField X = omega_contract_inv(d_scalar(H[k]));
        for (std::size_t i = 0; i < X.vx.size(); ++i) {
            X.vx[i] += at;
            X.vy[i] += bt;
        }
        sup_v = std::max(sup_v, max_abs(X));
        sup_g = std::max(sup_g, grad_sup(X));
        gen.samples.push_back(std::move(X));
    }
    const double s = std::min({1.0, amp_cap / std::max(sup_v, 1e-300),
                               grad_cap / std::max(sup_g, 1e-300)});
    for (VectorField& X : gen.samples) {
        for (std::size_t i = 0; i < X.vx.size(); ++i) {
            X.vx[i] *= s;
            X.vy[i] *= s;
        }
    }
    return gen;
}

} // namespace symplab
