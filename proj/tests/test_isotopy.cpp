#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/config.hpp"
#include "symplab/errors.hpp"
#include "symplab/isotopy.hpp"
#include "symplab/random_fields.hpp"

using namespace symplab;

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double vec_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

GeneratorPath constant_path(const GridSpec& g, Vec2 v, int nt) {
    VectorField X(g);
    for (std::size_t k = 0; k < X.vx.size(); ++k) {
        X.vx[k] = v.x;
        X.vy[k] = v.y;
    }
    return GeneratorPath(std::vector<VectorField>(nt, X));
}

// autonomous shear X = (-sin(2 pi y), 0): RK4 integrates it exactly
// because the velocity is constant along each trajectory
Isotopy exact_shear(const GridSpec& g, int nt, int substeps) {
    VectorField X(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            X.vx[g.idx(i, j)] = -std::sin(two_pi * g.y(j));
    return integrate_flow(GeneratorPath(std::vector<VectorField>(nt, X)), substeps);
}

} // namespace

TEST_CASE("translation flows are exact straight lines") {
    GridSpec g(32, 32);
    auto iso = integrate_flow(constant_path(g, {0.3, -0.2}, 17), 2);
    CHECK(iso.consistency_residual < 1e-12);
    for (int k = 0; k < iso.nt(); ++k) {
        double t = iso.flow.time(k);
        for (std::size_t m = 0; m < iso.flow[k].dx.size(); ++m) {
            CHECK(iso.flow[k].dx[m] == doctest::Approx(0.3 * t).epsilon(1e-13));
            CHECK(iso.flow[k].dy[m] == doctest::Approx(-0.2 * t).epsilon(1e-13));
        }
        if (k % 8 == 0) continue; // spot-check a few samples fully
    }
}

TEST_CASE("autonomous shear flow matches its closed form") {
    GridSpec g(64, 64);
    auto iso = exact_shear(g, 33, 1);
    double worst = 0.0;
    for (int k = 0; k < iso.nt(); ++k) {
        double t = iso.flow.time(k);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                worst = std::max(worst,
                    std::abs(iso.flow[k].dx[g.idx(i, j)] +
                             t * std::sin(two_pi * g.y(j))));
    }
    CHECK(worst < 1e-13);
    CHECK(iso.consistency_residual < 1e-4);
}

TEST_CASE("hamiltonian_isotopy realizes X_H = (H_y, -H_x)") {
    GridSpec g(64, 64);
    // H = cos(2 pi y) / (2 pi)  ->  X = (-sin(2 pi y), 0)
    ScalarField H(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            H.at(i, j) = std::cos(two_pi * g.y(j)) / two_pi;
    auto iso = hamiltonian_isotopy(
        TimeSeries<ScalarField>(std::vector<ScalarField>(17, H)), 2);
    auto ref = exact_shear(g, 17, 2);
    double worst = 0.0;
    for (int k = 0; k < iso.nt(); ++k)
        worst = std::max(worst, map_distance(iso.flow[k], ref.flow[k]));
    CHECK(worst < 1e-12);
}

TEST_CASE("generator_from_flow inverts integrate_flow") {
    GridSpec g(64, 64);
    ScenarioConfig cfg = ScenarioConfig::builtin();
    auto iso = fixture_isotopy(cfg.fixture("modulated_shear"), g, 65, 2);
    auto rec = generator_from_flow(iso.flow);
    double worst = 0.0;
    for (int k = 0; k < iso.nt(); ++k) {
        worst = std::max(worst, vec_gap(rec[k].vx, iso.generator[k].vx));
        worst = std::max(worst, vec_gap(rec[k].vy, iso.generator[k].vy));
    }
    CHECK(worst < 1e-3);

    // constant translation differences are exact
    auto tr = integrate_flow(constant_path(g, {0.25, 0.1}, 9), 1);
    auto rec2 = generator_from_flow(tr.flow);
    worst = 0.0;
    for (int k = 0; k < tr.nt(); ++k) {
        for (double v : rec2[k].vx) worst = std::max(worst, std::abs(v - 0.25));
        for (double v : rec2[k].vy) worst = std::max(worst, std::abs(v - 0.1));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("inverse_isotopy flows back to the identity") {
    GridSpec g(64, 64);
    FieldGen gen(31);
    auto iso = integrate_flow(gen.generator_path(g, 17, 1, 1, 0.12, 0.25), 2);
    auto inv = inverse_isotopy(iso);
    double worst = 0.0;
    for (int k = 0; k < iso.nt(); ++k) {
        auto round = compose_maps(iso.flow[k], inv.flow[k]);
        worst = std::max(worst,
            map_distance(round, DisplacementField::identity(g)));
    }
    CHECK(worst < 1e-7);

    // translation inverse generator is exactly the negated velocity
    auto tr = integrate_flow(constant_path(g, {0.3, 0.0}, 9), 1);
    auto trinv = inverse_isotopy(tr);
    for (int k = 0; k < trinv.nt(); ++k) {
        CHECK(max_abs(trinv.generator[k].vy) < 1e-12);
        for (double v : trinv.generator[k].vx)
            CHECK(v == doctest::Approx(-0.3).epsilon(1e-12));
    }
}

TEST_CASE("compose_isotopies uses the product chain rule") {
    GridSpec g(32, 32);
    auto a = integrate_flow(constant_path(g, {0.3, 0.2}, 9), 1);
    auto b = integrate_flow(constant_path(g, {-0.1, 0.25}, 9), 1);
    auto c = compose_isotopies(a, b);
    for (int k = 0; k < c.nt(); ++k) {
        double t = c.flow.time(k);
        CHECK(std::abs(c.flow[k].dx[0] - 0.2 * t) < 1e-12);
        CHECK(std::abs(c.flow[k].dy[0] - 0.45 * t) < 1e-12);
        for (double v : c.generator[k].vx)
            CHECK(v == doctest::Approx(0.2).epsilon(1e-11));
        for (double v : c.generator[k].vy)
            CHECK(v == doctest::Approx(0.45).epsilon(1e-11));
    }

    // composing with the identity changes nothing
    auto id = identity_isotopy(g, 9);
    auto same = compose_isotopies(a, id);
    double worst = 0.0;
    for (int k = 0; k < a.nt(); ++k) {
        worst = std::max(worst, map_distance(same.flow[k], a.flow[k]));
        worst = std::max(worst, vec_gap(same.generator[k].vx, a.generator[k].vx));
        worst = std::max(worst, vec_gap(same.generator[k].vy, a.generator[k].vy));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("commutator of commuting flows is the identity path") {
    GridSpec g(32, 32);
    auto a = integrate_flow(constant_path(g, {0.3, 0.0}, 9), 1);
    auto b = integrate_flow(constant_path(g, {0.0, 0.25}, 9), 1);
    auto parts = commutator_isotopy(a, b);
    double worst = 0.0;
    for (int k = 0; k < parts.sigma.nt(); ++k)
        worst = std::max(worst,
            map_distance(parts.sigma.flow[k], DisplacementField::identity(g)));
    CHECK(worst < 1e-9);
}

TEST_CASE("commutator generator splits as X + Y + Z + U") {
    GridSpec g(64, 64);
    FieldGen gen(88);
    auto phi = integrate_flow(gen.generator_path(g, 17, 1, 1, 0.1, 0.25), 2);
    auto psi = integrate_flow(gen.generator_path(g, 17, 1, 1, 0.1, 0.25), 2);
    auto parts = commutator_isotopy(phi, psi);
    auto rec = generator_from_flow(parts.sigma.flow);
    double worst = 0.0;
    for (int k = 0; k < parts.sigma.nt(); ++k) {
        const auto& X = parts.X[k];
        const auto& Y = parts.Y[k];
        const auto& Z = parts.Z[k];
        const auto& U = parts.U[k];
        for (std::size_t m = 0; m < X.vx.size(); ++m) {
            double sx = X.vx[m] + Y.vx[m] + Z.vx[m] + U.vx[m];
            double sy = X.vy[m] + Y.vy[m] + Z.vy[m] + U.vy[m];
            worst = std::max(worst, std::abs(sx - rec[k].vx[m]));
            worst = std::max(worst, std::abs(sy - rec[k].vy[m]));
        }
    }
    CHECK(worst < 2e-3);
}

TEST_CASE("identity_isotopy is inert") {
    GridSpec g(16, 16);
    auto id = identity_isotopy(g, 5);
    CHECK(id.nt() == 5);
    CHECK(id.consistency_residual == 0.0);
    for (int k = 0; k < 5; ++k) {
        CHECK(max_abs(id.generator[k]) == 0.0);
        CHECK(max_abs(id.flow[k].dx) == 0.0);
        CHECK(max_abs(id.flow[k].dy) == 0.0);
    }
}

TEST_CASE("c0_distance sees both maps and inverses") {
    GridSpec g(32, 32);
    auto a = integrate_flow(constant_path(g, {0.2, 0.0}, 9), 1);
    auto b = integrate_flow(constant_path(g, {-0.2, 0.0}, 9), 1);
    // endpoints differ by 0.4 along x (torus distance 0.4)
    CHECK(c0_distance(a.flow, b.flow) == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(c0_distance(a.flow, a.flow) < 1e-14);
}

TEST_CASE("flows that break the Jacobian floor are rejected") {
    GridSpec g(32, 32);
    VectorField X(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            X.vx[g.idx(i, j)] = 3.0 * std::sin(two_pi * g.x(i));
    // compressive flow along x folds the torus within t <= 1
    CHECK_THROWS_AS(
        integrate_flow(GeneratorPath(std::vector<VectorField>(9, X)), 1),
        JacobianDegenerate);
}
