#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/errors.hpp"
#include "symplab/hodge.hpp"
#include "symplab/random_fields.hpp"

using namespace symplab;

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

MetricSpec stretch_metric(const GridSpec& g) {
    ScalarField g11(g), g12(g, 0.0), g22(g, 1.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            g11.at(i, j) = 1.0 + 0.3 * std::cos(two_pi * g.y(j));
    return MetricSpec::fields(g11, g12, g22, "stretch-y");
}

} // namespace

TEST_CASE("flat harmonic basis is {dx, dy} exactly") {
    GridSpec g(32, 32);
    auto B = harmonic_basis(MetricSpec::flat(g));
    B.validate();
    for (std::size_t k = 0; k < B.h1.cx.size(); ++k) {
        CHECK(B.h1.cx[k] == 1.0);
        CHECK(B.h1.cy[k] == 0.0);
        CHECK(B.h2.cx[k] == 0.0);
        CHECK(B.h2.cy[k] == 1.0);
    }
    auto M = B.period_matrix();
    CHECK(M[0] == 1.0);
    CHECK(M[1] == 0.0);
    CHECK(M[2] == 0.0);
    CHECK(M[3] == 1.0);
}

TEST_CASE("periods of an explicit closed form are its harmonic coefficients") {
    GridSpec g(48, 48);
    OneForm th(g);
    ScalarField u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            u.at(i, j) = std::sin(two_pi * g.x(i)) * std::cos(two_pi * g.y(j));
    OneForm du = d_scalar(u);
    for (std::size_t k = 0; k < th.cx.size(); ++k) {
        th.cx[k] = 1.7 + du.cx[k];
        th.cy[k] = -0.4 + du.cy[k];
    }
    auto P = HarmonicBasis::periods(th);
    CHECK(P[0] == doctest::Approx(1.7).epsilon(1e-13));
    CHECK(P[1] == doctest::Approx(-0.4).epsilon(1e-13));
}

TEST_CASE("flat decomposition recovers coefficients and potential") {
    GridSpec g(64, 64);
    MetricSpec flat = MetricSpec::flat(g);
    auto B = harmonic_basis(flat);

    ScalarField u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            u.at(i, j) = 0.2 * std::sin(two_pi * g.x(i)) *
                         std::cos(2 * two_pi * g.y(j));
    OneForm du = d_scalar(u);
    OneForm th(g);
    for (std::size_t k = 0; k < th.cx.size(); ++k) {
        th.cx[k] = 3.0 + du.cx[k];
        th.cy[k] = -2.0 + du.cy[k];
    }

    auto s = hodge_decompose(th, flat, B);
    CHECK(s.lambda1 == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(s.lambda2 == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(s.residual < 1e-10);
    CHECK(basis_norm(s) == doctest::Approx(5.0).epsilon(1e-12));

    // potential matches u up to its (zero) mean
    double mu = mean(u);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.v.size(); ++k)
        worst = std::max(worst, std::abs(s.potential.v[k] - (u.v[k] - mu)));
    CHECK(worst < 1e-10);
}

TEST_CASE("reconstruction residual stays tiny over random closed forms") {
    GridSpec g(64, 64);
    MetricSpec flat = MetricSpec::flat(g);
    MetricSpec curved = stretch_metric(g);
    auto Bf = harmonic_basis(flat);
    auto Bc = harmonic_basis(curved);
    FieldGen gen(2026);
    double worst_f = 0.0, worst_c = 0.0, worst_gap = 0.0;
    for (int s = 0; s < 20; ++s) {
        OneForm th = gen.closed_form(g, 3, 0.8, 1.2);
        auto sf = hodge_decompose(th, flat, Bf);
        auto sc = hodge_decompose(th, curved, Bc);
        worst_f = std::max(worst_f, sf.residual);
        worst_c = std::max(worst_c, sc.residual);
        // periods are metric-free, so lambda agrees whenever the bases
        // share periods; here both bases have period matrix I
        worst_gap = std::max(worst_gap, std::abs(sf.lambda1 - sc.lambda1));
        worst_gap = std::max(worst_gap, std::abs(sf.lambda2 - sc.lambda2));
    }
    CHECK(worst_f < 1e-8);
    CHECK(worst_c < 1e-8);
    CHECK(worst_gap < 1e-10);
}

TEST_CASE("curved-metric basis is closed and co-closed") {
    GridSpec g(64, 64);
    MetricSpec curved = stretch_metric(g);
    auto B = harmonic_basis(curved);
    B.validate();
    CHECK(closedness_defect(B.h1) < 1e-8);
    CHECK(closedness_defect(B.h2) < 1e-8);
    CHECK(max_abs(codifferential(B.h1, curved)) < 1e-6);
    CHECK(max_abs(codifferential(B.h2, curved)) < 1e-6);
    // g11 varies only in y, so dx is already curved-harmonic
    CHECK(max_abs(B.h1.cy) < 1e-9);
    double worst = 0.0;
    for (double v : B.h1.cx) worst = std::max(worst, std::abs(v - 1.0));
    CHECK(worst < 1e-9);
}

TEST_CASE("transported basis keeps periods and harmonicity") {
    GridSpec g(64, 64);
    MetricSpec flat = MetricSpec::flat(g);
    MetricSpec curved = stretch_metric(g);
    auto B = harmonic_basis(flat);
    auto Bp = transport_basis(B, curved);
    Bp.validate();
    auto M = B.period_matrix();
    auto Mp = Bp.period_matrix();
    for (int k = 0; k < 4; ++k)
        CHECK(Mp[k] == doctest::Approx(M[k]).epsilon(1e-10));
    CHECK(max_abs(codifferential(Bp.h1, curved)) < 1e-6);
    CHECK(max_abs(codifferential(Bp.h2, curved)) < 1e-6);
    // the difference h_i' - h_i is exact: zero periods, zero lambda
    OneForm diff(g);
    for (std::size_t k = 0; k < diff.cx.size(); ++k) {
        diff.cx[k] = Bp.h2.cx[k] - B.h2.cx[k];
        diff.cy[k] = Bp.h2.cy[k] - B.h2.cy[k];
    }
    auto P = HarmonicBasis::periods(diff);
    CHECK(std::abs(P[0]) < 1e-10);
    CHECK(std::abs(P[1]) < 1e-10);
    auto sd = hodge_decompose(diff, flat, B);
    CHECK(std::abs(sd.lambda1) < 1e-10);
    CHECK(std::abs(sd.lambda2) < 1e-10);
}

TEST_CASE("solve_poisson matches the spectral inverse on the flat metric") {
    GridSpec g(32, 32);
    ScalarField rhs(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            rhs.at(i, j) = std::cos(two_pi * (g.x(i) - 3 * g.y(j)));
    auto u = solve_poisson(rhs, MetricSpec::flat(g));
    // delta(du) = -lap u on the flat torus; the known solution of
    // -lap u = rhs for this mode divides by (2pi)^2 (1 + 9)
    double scale = 1.0 / (two_pi * two_pi * 10.0);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            worst = std::max(worst, std::abs(u.at(i, j) -
                scale * std::cos(two_pi * (g.x(i) - 3 * g.y(j)))));
    CHECK(worst < 1e-12);
    CHECK(std::abs(mean(u)) < 1e-13);
}

TEST_CASE("solve_poisson on a curved metric is consistent with its codifferential") {
    GridSpec g(48, 48);
    MetricSpec curved = stretch_metric(g);
    FieldGen gen(5);
    ScalarField target = gen.scalar(g, 3, 0.5);
    double mt = mean(target); // make it mean-zero like the solver output
    for (double& v : target.v) v -= mt;
    ScalarField rhs = codifferential(d_scalar(target), curved);
    ScalarField u = solve_poisson(rhs, curved);
    CHECK(max_abs(u - target) < 1e-6);
}

TEST_CASE("gates reject bad inputs") {
    GridSpec g(32, 32);
    MetricSpec flat = MetricSpec::flat(g);
    auto B = harmonic_basis(flat);

    OneForm swirl(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            swirl.cy[g.idx(i, j)] = std::sin(two_pi * g.x(i)); // curl != 0
    CHECK(closedness_defect(swirl) > 1e-3);
    CHECK_THROWS_AS(hodge_decompose(swirl, flat, B), NotClosed);

    HarmonicBasis bad = B;
    bad.h2 = bad.h1; // period matrix collapses
    CHECK_THROWS_AS(bad.validate(), DegenerateBasis);

    ScalarField rhs(g, 1.0); // nonzero mean: no periodic solution
    CHECK_THROWS_AS(solve_poisson(rhs, flat), IncompatibleRHS);
}
