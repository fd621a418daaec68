#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/config.hpp"
#include "symplab/errors.hpp"
#include "symplab/norms.hpp"
#include "symplab/random_fields.hpp"

using namespace symplab;

namespace {

constexpr double pi = 3.1415926535897932384626433832795;
constexpr double two_pi = 2.0 * pi;

Isotopy translation_flow(const GridSpec& g, Vec2 v, int nt) {
    VectorField X(g);
    for (std::size_t k = 0; k < X.vx.size(); ++k) {
        X.vx[k] = v.x;
        X.vy[k] = v.y;
    }
    return integrate_flow(GeneratorPath(std::vector<VectorField>(nt, X)), 1);
}

} // namespace

TEST_CASE("norm of the closed-form witness field is 3 + 1/pi") {
    GridSpec g(64, 64);
    VectorField X(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            X.vx[g.idx(i, j)] = 3.0;
            X.vy[g.idx(i, j)] = -std::cos(two_pi * g.x(i));
        }
    auto nb = symp_norm(X, NormContext::flat(g));
    // i_X omega = cos(2 pi x) dx + 3 dy: harmonic part 3 dy, potential
    // sin(2 pi x)/(2 pi) with oscillation 1/pi
    CHECK(nb.lambda1 == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(nb.lambda2 == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(nb.oscillation == doctest::Approx(1.0 / pi).epsilon(1e-12));
    CHECK(nb.value == doctest::Approx(3.0 + 1.0 / pi).epsilon(1e-12));
    CHECK(nb.residual < 1e-10);
}

TEST_CASE("norm axioms hold algebraically on random symplectic fields") {
    GridSpec g(64, 64);
    auto ctx = NormContext::flat(g);
    FieldGen gen(404);
    for (int s = 0; s < 10; ++s) {
        VectorField X = gen.symplectic_field(g, 2, 0.5, 2.0);
        VectorField Y = gen.symplectic_field(g, 2, 0.5, 2.0);
        double nx = symp_norm(X, ctx).value;
        double ny = symp_norm(Y, ctx).value;
        CHECK(nx >= 0.0);

        double c = gen.uniform(-3.0, 3.0);
        VectorField cX(g);
        for (std::size_t k = 0; k < X.vx.size(); ++k) {
            cX.vx[k] = c * X.vx[k];
            cX.vy[k] = c * X.vy[k];
        }
        CHECK(std::abs(symp_norm(cX, ctx).value - std::abs(c) * nx) < 1e-9);

        VectorField XY(g);
        for (std::size_t k = 0; k < X.vx.size(); ++k) {
            XY.vx[k] = X.vx[k] + Y.vx[k];
            XY.vy[k] = X.vy[k] + Y.vy[k];
        }
        CHECK(symp_norm(XY, ctx).value <= nx + ny + 1e-9);

        // symmetry of the induced displacement energy: the norm of X - Y
        // equals the norm of Y - X term by term
        VectorField D1(g), D2(g);
        for (std::size_t k = 0; k < X.vx.size(); ++k) {
            D1.vx[k] = X.vx[k] - Y.vx[k];
            D1.vy[k] = X.vy[k] - Y.vy[k];
            D2.vx[k] = -D1.vx[k];
            D2.vy[k] = -D1.vy[k];
        }
        CHECK(symp_norm(D1, ctx).value == symp_norm(D2, ctx).value);
    }
    CHECK(symp_norm(VectorField(g), ctx).value == 0.0);
}

TEST_CASE("non-symplectic fields are rejected, borderline ones reprojected") {
    GridSpec g(64, 64);
    auto ctx = NormContext::flat(g);
    VectorField bad(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            bad.vx[g.idx(i, j)] = std::sin(two_pi * g.x(i));
    CHECK_THROWS_AS(symp_norm(bad, ctx), NotSymplectic);

    // defect under the gate: reprojection keeps the result finite and
    // close to the clean field's norm
    FieldGen gen(7);
    VectorField X = gen.symplectic_field(g, 2, 0.5, 2.0);
    VectorField dirty = X;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            dirty.vx[g.idx(i, j)] += 1e-8 * std::sin(two_pi * g.x(i));
    double clean = symp_norm(X, ctx).value;
    double noisy = symp_norm(dirty, ctx).value;
    CHECK(std::abs(clean - noisy) < 1e-7);
}

TEST_CASE("isotopy length of the unit shear is 1/pi") {
    GridSpec g(64, 64);
    ScenarioConfig cfg = ScenarioConfig::builtin();
    auto shear = fixture_isotopy(cfg.fixture("shear"), g, 33, 2);
    CHECK(isotopy_length(shear, NormContext::flat(g), TimeMode::l1) ==
          doctest::Approx(1.0 / pi).epsilon(1e-10));
    CHECK(isotopy_length(shear, NormContext::flat(g), TimeMode::sup) ==
          doctest::Approx(1.0 / pi).epsilon(1e-10));
}

TEST_CASE("translation distance is the harmonic gap") {
    GridSpec g(64, 64);
    auto ctx = NormContext::flat(g);
    auto fast = translation_flow(g, {0.3, 0.0}, 17);
    auto slow = translation_flow(g, {0.1, 0.0}, 17);
    for (TimeMode mode : {TimeMode::l1, TimeMode::sup}) {
        auto rep = distance(fast, slow, ctx, mode);
        CHECK(rep.D == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(rep.c0 == doctest::Approx(0.2).epsilon(1e-10));
        CHECK(rep.total == doctest::Approx(0.4).epsilon(1e-10));
    }
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    GridSpec g(64, 64);
    auto ctx = NormContext::flat(g);
    FieldGen gen(505);
    std::vector<Isotopy> pool;
    pool.push_back(translation_flow(g, {0.2, 0.0}, 17));
    pool.push_back(translation_flow(g, {0.0, 0.15}, 17));
    for (int s = 0; s < 2; ++s)
        pool.push_back(integrate_flow(gen.generator_path(g, 17, 1, 1, 0.1, 0.25), 2));

    std::vector<Isotopy> inverses;
    for (const auto& iso : pool) inverses.push_back(inverse_isotopy(iso));

    const int n = static_cast<int>(pool.size());
    std::vector<std::vector<double>> D(n, std::vector<double>(n, 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b)
                D[a][b] = distance(pool[a], pool[b], inverses[a], inverses[b],
                                   ctx, TimeMode::l1).total;

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            CHECK(std::abs(D[a][b] - D[b][a]) < 1e-9);
            for (int c = 0; c < n; ++c)
                if (a != b && b != c && a != c)
                    CHECK(D[a][c] <= D[a][b] + D[b][c] + 1e-6);
        }

    // self distance vanishes
    CHECK(distance(pool[2], pool[2], inverses[2], inverses[2], ctx,
                   TimeMode::l1).total < 1e-12);
}

TEST_CASE("cached-inverse distance matches the convenience overload") {
    GridSpec g(64, 64);
    auto ctx = NormContext::flat(g);
    FieldGen gen(99);
    auto a = integrate_flow(gen.generator_path(g, 17, 1, 1, 0.1, 0.25), 2);
    auto b = translation_flow(g, {0.1, 0.2}, 17);
    auto direct = distance(a, b, ctx, TimeMode::l1);
    auto cached = distance(a, b, inverse_isotopy(a), inverse_isotopy(b), ctx,
                           TimeMode::l1);
    CHECK(direct.total == doctest::Approx(cached.total).epsilon(1e-12));
    CHECK(direct.D == doctest::Approx(cached.D).epsilon(1e-12));
}

TEST_CASE("hofer_length of the shear equals its oscillation integral") {
    GridSpec g(64, 64);
    ScenarioConfig cfg = ScenarioConfig::builtin();
    auto H = fixture_hamiltonian(cfg.fixture("shear"), g, 33);
    CHECK(hofer_length(H) == doctest::Approx(1.0 / pi).epsilon(1e-12));
}

TEST_CASE("d_ham ignores time-dependent constants and is symmetric") {
    GridSpec g(64, 64);
    ScenarioConfig cfg = ScenarioConfig::builtin();
    auto H = fixture_hamiltonian(cfg.fixture("shear"), g, 17);
    auto K = H;
    for (int k = 0; k < K.nt(); ++k)
        for (double& v : K[k].v) v += 0.7 + 0.1 * k;
    auto rep = d_ham(H, K);
    CHECK(rep.osc_part < 1e-12);
    CHECK(rep.c0 < 1e-9);
    CHECK(rep.total < 1e-9);

    TimeSeries<ScalarField> Z(std::vector<ScalarField>(17, ScalarField(g)));
    auto hz = d_ham(H, Z);
    auto zh = d_ham(Z, H);
    CHECK(hz.total == doctest::Approx(zh.total).epsilon(1e-12));
    CHECK(hz.osc_part == doctest::Approx(1.0 / pi).epsilon(1e-10));
}

TEST_CASE("curved metric context changes the potential, not the coefficients") {
    GridSpec g(64, 64);
    ScenarioConfig cfg = ScenarioConfig::builtin();
    auto flat_ctx = NormContext::flat(g);
    auto curved_ctx = NormContext::with_metric(cfg.metric_prime);
    FieldGen gen(17);
    for (int s = 0; s < 5; ++s) {
        VectorField X = gen.symplectic_field(g, 2, 0.5, 2.0);
        auto nf = symp_norm(X, flat_ctx);
        auto nc = symp_norm(X, curved_ctx);
        CHECK(std::abs(nf.lambda1 - nc.lambda1) < 1e-10);
        CHECK(std::abs(nf.lambda2 - nc.lambda2) < 1e-10);
        CHECK(nc.residual < 1e-8);
    }
}
