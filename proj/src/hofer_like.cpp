#include "symplab/hofer_like.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "symplab/calculus.hpp"
#include "symplab/errors.hpp"
#include "symplab/parallel.hpp"

namespace symplab {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

struct SpaceMode {
    int kx = 0;
    int ky = 0;
    bool is_sin = false;
};

std::vector<SpaceMode> space_modes(int S) {
    std::vector<SpaceMode> modes;
    for (int kx = 0; kx <= S; ++kx) {
        for (int ky = -S; ky <= S; ++ky) {
            if (kx == 0 && ky <= 0) continue;
            modes.push_back({kx, ky, false});
            modes.push_back({kx, ky, true});
        }
    }
    return modes;
}

double time_basis(int j, double t) {
    if (j == 0) return 1.0;
    const int m = (j + 1) / 2;
    return (j % 2 == 1) ? std::cos(two_pi * m * t) : std::sin(two_pi * m * t);
}

void check_params(const PathAnsatz& a) {
    if (static_cast<int>(a.params.size()) != a.param_count())
        throw ConfigError("ansatz parameter vector has length " +
                          std::to_string(a.params.size()) + ", expected " +
                          std::to_string(a.param_count()));
}

ScalarField resample(const ScalarField& f, const GridSpec& g) {
    if (f.grid == g) return f;
    ScalarField out(g);
    const BicubicSampler s(f.grid);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i, j) = s.sample(f.v, g.x(i), g.y(j));
    return out;
}

DisplacementField resample(const DisplacementField& d, const GridSpec& g) {
    if (d.grid == g) return d;
    DisplacementField out(g);
    const BicubicSampler s(d.grid);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            s.sample2(d.dx, d.dy, g.x(i), g.y(j), out.dx[g.idx(i, j)],
                      out.dy[g.idx(i, j)]);
    return out;
}

NormContext resample_context(const NormContext& ctx, const GridSpec& g) {
    if (ctx.metric.grid == g) return ctx;
    if (ctx.metric.is_flat) return NormContext::flat(g);
    return NormContext::with_metric(
        MetricSpec::fields(resample(ctx.metric.g11, g),
                           resample(ctx.metric.g12, g),
                           resample(ctx.metric.g22, g), ctx.metric.tag));
}

// One descent run's shared state: everything the objective needs.
struct SearchSpace {
    NormContext ctx;
    DisplacementField target;
    int nt = 0;
    int substeps = 1;
    double penalty = 0.0;

    double objective(const PathAnsatz& a, double& length,
                     double& endpoint_error) const {
        try {
            const Isotopy iso =
                realize_isotopy(a, ctx.metric.grid, nt, substeps);
            length = isotopy_length(iso, ctx, TimeMode::l1);
            endpoint_error = map_distance(iso.time_one_map(), target);
            return length + penalty * endpoint_error * endpoint_error;
        } catch (const NumericalError&) {
            length = std::numeric_limits<double>::infinity();
            endpoint_error = std::numeric_limits<double>::infinity();
            return std::numeric_limits<double>::infinity();
        }
    }
};

struct DescentResult {
    PathAnsatz best;
    double obj = std::numeric_limits<double>::infinity();
    std::vector<double> sweep_objectives;
    int evals = 0;
};

DescentResult coordinate_descent(const SearchSpace& space, PathAnsatz start,
                                 int budget, const OptConfig& cfg) {
    DescentResult r;
    r.best = std::move(start);
    double len, err;
    r.obj = space.objective(r.best, len, err);
    ++r.evals;
    r.sweep_objectives.push_back(r.obj);

    double step = cfg.init_step;
    const int n = r.best.param_count();
    while (r.evals < budget && step >= cfg.min_step) {
        bool improved = false;
        for (int i = 0; i < n && r.evals < budget; ++i) {
            for (double s : {step, -step}) {
                PathAnsatz cand = r.best;
                cand.params[static_cast<std::size_t>(i)] += s;
                const double o = space.objective(cand, len, err);
                ++r.evals;
                if (o < r.obj) {
                    r.best = std::move(cand);
                    r.obj = o;
                    improved = true;
                    break;
                }
                if (r.evals >= budget) break;
            }
        }
        r.sweep_objectives.push_back(r.obj);
        if (!improved) step *= 0.5;
    }
    return r;
}

PathAnsatz zero_ansatz(const OptConfig& cfg) {
    PathAnsatz a;
    a.n_harm_t = cfg.n_harm_t;
    a.n_harm_xy = cfg.n_harm_xy;
    a.params.assign(static_cast<std::size_t>(a.param_count()), 0.0);
    return a;
}

// Constant translation matching the mean displacement of the target: the
// cheapest endpoint-consistent starting point for near-harmonic maps.
PathAnsatz harmonic_fit(const DisplacementField& target,
                        const OptConfig& cfg) {
    PathAnsatz a = zero_ansatz(cfg);
    a.params[0] = mean(target.dx);
    a.params[static_cast<std::size_t>(a.n_time_basis())] = mean(target.dy);
    return a;
}

} // namespace

GeneratorPath realize_generator(const PathAnsatz& a, const GridSpec& g,
                                int nt) {
    check_params(a);
    if (nt < 2) throw ConfigError("need at least 2 time samples");
    const std::vector<SpaceMode> modes = space_modes(a.n_harm_xy);
    const int ntb = a.n_time_basis();
    const int nsm = static_cast<int>(modes.size());

    GeneratorPath gen;
    gen.samples.reserve(static_cast<std::size_t>(nt));
    for (int k = 0; k < nt; ++k) {
        const double t = static_cast<double>(k) / (nt - 1);
        double at = 0.0, bt = 0.0;
        std::vector<double> coef(static_cast<std::size_t>(nsm), 0.0);
        for (int j = 0; j < ntb; ++j) {
            const double tau = time_basis(j, t);
            at += a.params[static_cast<std::size_t>(j)] * tau;
            bt += a.params[static_cast<std::size_t>(ntb + j)] * tau;
            const std::size_t base =
                static_cast<std::size_t>(2 * ntb + j * nsm);
            for (int m = 0; m < nsm; ++m)
                coef[static_cast<std::size_t>(m)] +=
                    tau * a.params[base + static_cast<std::size_t>(m)];
        }
        VectorField X(g);
        exec::par_for(g.size(), [&](std::size_t n) {
            const double x = g.x(static_cast<int>(n) % g.nx);
            const double y = g.y(static_cast<int>(n) / g.nx);
            double vx = at, vy = bt;
            for (int m = 0; m < nsm; ++m) {
                const SpaceMode& sm = modes[static_cast<std::size_t>(m)];
                const double c = coef[static_cast<std::size_t>(m)];
                if (c == 0.0) continue;
                const double th = two_pi * (sm.kx * x + sm.ky * y);
                // Hamiltonian field of the mode: (d_y, -d_x) of it.
                if (sm.is_sin) {
                    const double ct = std::cos(th);
                    vx += c * two_pi * sm.ky * ct;
                    vy -= c * two_pi * sm.kx * ct;
                } else {
                    const double st = std::sin(th);
                    vx -= c * two_pi * sm.ky * st;
                    vy += c * two_pi * sm.kx * st;
                }
            }
            X.vx[n] = vx;
            X.vy[n] = vy;
        });
        gen.samples.push_back(std::move(X));
    }
    return gen;
}

Isotopy realize_isotopy(const PathAnsatz& a, const GridSpec& g, int nt,
                        int substeps) {
    return integrate_flow(realize_generator(a, g, nt), substeps);
}

EnergyReport estimate_e0(const DisplacementField& target,
                         const NormContext& ctx, const OptConfig& cfg) {
    if (cfg.restarts < 1 || cfg.max_evals < cfg.restarts)
        throw ConfigError("optimizer needs at least one evaluation per restart");

    const GridSpec coarse(cfg.search_nx, cfg.search_ny);
    SearchSpace space;
    space.ctx = resample_context(ctx, coarse);
    space.target = resample(target, coarse);
    space.nt = cfg.search_nt;
    space.substeps = cfg.search_substeps;
    space.penalty = cfg.penalty;

    std::vector<PathAnsatz> starts;
    PathAnsatz fit = harmonic_fit(space.target, cfg);
    if (cfg.seed_params) {
        PathAnsatz seeded = zero_ansatz(cfg);
        seeded.params = *cfg.seed_params;
        check_params(seeded);
        starts.push_back(std::move(seeded));
        starts.push_back(fit);
    } else {
        starts.push_back(fit);
        starts.push_back(zero_ansatz(cfg));
    }
    std::mt19937_64 rng(20240817u);
    std::uniform_real_distribution<double> jitter(-0.01, 0.01);
    while (static_cast<int>(starts.size()) < cfg.restarts) {
        PathAnsatz p = starts.front();
        for (double& v : p.params) v += jitter(rng);
        starts.push_back(std::move(p));
    }
    starts.resize(static_cast<std::size_t>(cfg.restarts), starts.front());

    EnergyReport rep;
    const int budget = cfg.max_evals / cfg.restarts;
    double best_obj = std::numeric_limits<double>::infinity();
    for (PathAnsatz& s : starts) {
        DescentResult r = coordinate_descent(space, std::move(s), budget, cfg);
        rep.evaluations += r.evals;
        for (double o : r.sweep_objectives) {
            best_obj = std::min(best_obj, o);
            rep.objective_trace.push_back(best_obj);
        }
        if (r.obj <= best_obj) rep.best = std::move(r.best);
    }
    if (!std::isfinite(best_obj))
        throw NoFeasiblePath("every candidate path failed to evaluate");

    // Certify the winner at full resolution.
    const Isotopy final_iso = realize_isotopy(rep.best, ctx.metric.grid,
                                              cfg.final_nt, cfg.final_substeps);
    rep.length = isotopy_length(final_iso, ctx, TimeMode::l1);
    rep.endpoint_error = map_distance(final_iso.time_one_map(), target);

    // A user-supplied path is an upper bound in its own right: never
    // report worse than it.
    if (cfg.seed_params) {
        PathAnsatz seeded = zero_ansatz(cfg);
        seeded.params = *cfg.seed_params;
        const Isotopy seed_iso = realize_isotopy(
            seeded, ctx.metric.grid, cfg.final_nt, cfg.final_substeps);
        const double seed_len = isotopy_length(seed_iso, ctx, TimeMode::l1);
        const double seed_err =
            map_distance(seed_iso.time_one_map(), target);
        if (seed_err < cfg.endpoint_tol &&
            (seed_len < rep.length ||
             rep.endpoint_error >= cfg.endpoint_tol)) {
            rep.best = std::move(seeded);
            rep.length = seed_len;
            rep.endpoint_error = seed_err;
        }
    }

    rep.e0_upper = rep.length;
    rep.converged = rep.endpoint_error < cfg.endpoint_tol;
    if (!rep.converged)
        throw NoFeasiblePath("best path misses the target by " +
                             std::to_string(rep.endpoint_error) +
                             " (tolerance " +
                             std::to_string(cfg.endpoint_tol) + ")");
    return rep;
}

SymmetrizedEnergy estimate_e(const DisplacementField& phi,
                             const DisplacementField& phi_inv,
                             const NormContext& ctx, const OptConfig& cfg) {
    SymmetrizedEnergy out;
    out.fwd = estimate_e0(phi, ctx, cfg);
    out.inv = estimate_e0(phi_inv, ctx, cfg);
    out.e = 0.5 * (out.fwd.e0_upper + out.inv.e0_upper);
    return out;
}

SymmetrizedEnergy estimate_e(const DisplacementField& phi,
                             const NormContext& ctx, const OptConfig& cfg) {
    return estimate_e(phi, invert_map(phi), ctx, cfg);
}

ConcatBound concat_upper_bound(const EnergyReport& a, const EnergyReport& b,
                               const DisplacementField& composed_target,
                               const NormContext& ctx, int nt, int substeps) {
    const GridSpec& g = ctx.metric.grid;
    const Isotopy ia = realize_isotopy(a.best, g, nt, substeps);
    const Isotopy ib = realize_isotopy(b.best, g, nt, substeps);
    const DisplacementField phi1 = ia.time_one_map();
    const DisplacementField phi1_inv = invert_map(phi1);

    // Second leg: t -> phi1 o psi_t, whose generator is the pushforward of
    // psi's generator by the fixed map phi1.
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(ib.nt()));
    for (int k = 0; k < ib.nt(); ++k) {
        const VectorField Z = project_symplectic(
            pushforward(ib.generator[k], phi1, phi1_inv));
        norms.push_back(symp_norm(Z, ctx).value);
    }

    ConcatBound out;
    out.length = isotopy_length(ia, ctx, TimeMode::l1) + time_integral(norms);
    out.endpoint_error = map_distance(
        compose_maps(phi1, ib.time_one_map()), composed_target);
    return out;
}

TimeSeries<ScalarField> inverse_hamiltonian_path(
    const TimeSeries<ScalarField>& H, const Isotopy& iso) {
    if (H.nt() != iso.nt())
        throw ConfigError("path and isotopy sample counts differ");
    TimeSeries<ScalarField> K;
    K.samples.reserve(static_cast<std::size_t>(H.nt()));
    for (int k = 0; k < H.nt(); ++k) {
        ScalarField s = compose_scalar(H[k], iso.flow[k]);
        for (double& v : s.v) v = -v;
        K.samples.push_back(std::move(s));
    }
    return K;
}

std::vector<double> project_hamiltonian(const TimeSeries<ScalarField>& H,
                                        int n_harm_t, int n_harm_xy) {
    PathAnsatz shape;
    shape.n_harm_t = n_harm_t;
    shape.n_harm_xy = n_harm_xy;
    const std::vector<SpaceMode> modes = space_modes(n_harm_xy);
    const int ntb = shape.n_time_basis();
    const int nsm = static_cast<int>(modes.size());
    const GridSpec& g = H[0].grid;
    const int nt = H.nt();

    // Spatial coefficient of every mode per time sample; trig modes have
    // mean square 1/2 on the grid.
    std::vector<std::vector<double>> h(
        static_cast<std::size_t>(nsm),
        std::vector<double>(static_cast<std::size_t>(nt), 0.0));
    for (int k = 0; k < nt; ++k) {
        for (int m = 0; m < nsm; ++m) {
            const SpaceMode& sm = modes[static_cast<std::size_t>(m)];
            double acc = 0.0;
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    const double th =
                        two_pi * (sm.kx * g.x(i) + sm.ky * g.y(j));
                    const double basis =
                        sm.is_sin ? std::sin(th) : std::cos(th);
                    acc += H[k].at(i, j) * basis;
                }
            }
            h[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] =
                2.0 * acc / static_cast<double>(g.size());
        }
    }

    std::vector<double> params(
        static_cast<std::size_t>(2 * ntb + ntb * nsm), 0.0);
    for (int j = 0; j < ntb; ++j) {
        // <tau_j^2> over [0,1]: 1 for the constant, 1/2 for the harmonics.
        const double norm2 = (j == 0) ? 1.0 : 0.5;
        for (int m = 0; m < nsm; ++m) {
            std::vector<double> prod(static_cast<std::size_t>(nt));
            for (int k = 0; k < nt; ++k)
                prod[static_cast<std::size_t>(k)] =
                    h[static_cast<std::size_t>(m)]
                     [static_cast<std::size_t>(k)] *
                    time_basis(j, static_cast<double>(k) / (nt - 1));
            params[static_cast<std::size_t>(2 * ntb + j * nsm + m)] =
                time_integral(prod) / norm2;
        }
    }
    return params;
}

HoferComparison compare_with_hofer(const TimeSeries<ScalarField>& H,
                                   const NormContext& ctx, OptConfig cfg) {
    HoferComparison out;
    out.hofer = hofer_length(H);
    const Isotopy iso = hamiltonian_isotopy(H, cfg.final_substeps);
    const Isotopy inv = inverse_isotopy(iso);

    OptConfig fwd_cfg = cfg;
    fwd_cfg.seed_params = project_hamiltonian(H, cfg.n_harm_t, cfg.n_harm_xy);
    out.energy.fwd = estimate_e0(iso.time_one_map(), ctx, fwd_cfg);

    OptConfig inv_cfg = cfg;
    inv_cfg.seed_params = project_hamiltonian(
        inverse_hamiltonian_path(H, iso), cfg.n_harm_t, cfg.n_harm_xy);
    out.energy.inv = estimate_e0(inv.time_one_map(), ctx, inv_cfg);

    out.energy.e = 0.5 * (out.energy.fwd.e0_upper + out.energy.inv.e0_upper);
    return out;
}

} // namespace symplab
