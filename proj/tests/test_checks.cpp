#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "symplab/checks.hpp"
#include "symplab/config.hpp"
#include "symplab/errors.hpp"
#include "symplab/hodge.hpp"
#include "symplab/norms.hpp"

using namespace symplab;

TEST_CASE("the full verification battery at the builtin configuration") {
    ScenarioConfig cfg = ScenarioConfig::builtin();
    auto reports = run_all_checks(cfg);
    REQUIRE(reports.size() == check_names().size());
    for (std::size_t k = 0; k < reports.size(); ++k)
        CHECK(reports[k].name == check_names()[k]);

    for (const auto& rep : reports) {
        INFO("check " << rep.name);
        if (rep.name == "basis-independence") {
            // The strict two-metric norm equality does not hold: the two
            // contexts measure different potentials whose oscillations
            // differ by a bounded basis-gap term. The check keeps the
            // strict entry (it fails) and verifies the corrected identity
            // and the bound instead.
            CHECK(!rep.pass());
            CHECK(!rep.entry("paired_equality_max").pass());
            CHECK(rep.entry("paired_equality_max").residual > 1e-4);
            for (const auto& e : rep.entries) {
                INFO("entry " << e.name << " = " << e.residual);
                if (e.name != "paired_equality_max") CHECK(e.pass());
            }
            // measured gap stays inside the proven oscillation cap
            double cap = rep.details.at("oscillation_gap_cap").get<double>();
            CHECK(rep.entry("paired_equality_max").residual <= cap);
            CHECK(rep.entry("paired_bound_violation").residual < 1e-10);
        } else {
            for (const auto& e : rep.entries) {
                INFO("entry " << e.name << " = " << e.residual << " vs " << e.threshold);
                CHECK(e.pass());
            }
            CHECK(rep.pass());
        }
        CHECK(rep.seed != 0);

        auto j = rep.to_json();
        CHECK(j.at("name").get<std::string>() == rep.name);
        CHECK(j.at("pass").is_boolean());
        CHECK(j.at("entries").is_array());
        CHECK(j.at("entries").size() == rep.entries.size());
    }
}

TEST_CASE("check registry and overrides") {
    ScenarioConfig cfg = ScenarioConfig::builtin();
    CHECK(check_names().size() == 10);
    std::set<std::string> names(check_names().begin(), check_names().end());
    CHECK(names.size() == 10);
    CHECK(names.count("ladder-bounds") == 1);
    CHECK_THROWS_AS(run_check(cfg, "no-such-check"), ConfigError);

    // a tolerance override reaches the named entry
    ScenarioConfig tight = cfg;
    tight.tolerance_overrides["norm-noninvariance.witness_pushed"] = 1e-30;
    auto rep = run_check(tight, "norm-noninvariance");
    CHECK(!rep.pass());
    CHECK(!rep.entry("witness_pushed").pass());
    CHECK(rep.entry("witness_pushed").threshold == 1e-30);

    auto base = run_check(cfg, "norm-noninvariance");
    CHECK(base.pass());
    CHECK(base.entry("witness_pushed").residual ==
          rep.entry("witness_pushed").residual);

    CHECK_THROWS_AS(base.entry("no-such-entry"), std::out_of_range);
}

TEST_CASE("weierstrass ladder respects the grid's frequency budget") {
    CauchyConfig cc = ScenarioConfig::builtin().cauchy;
    // builtin: b = 4, three levels on ny = 256, deepest frequency 64 = ny/4
    auto ladder = weierstrass_ladder(cc);
    CHECK(static_cast<int>(ladder.size()) == cc.n_levels);
    for (const auto& iso : ladder) {
        CHECK(iso.nt() == cc.nt);
        CHECK(iso.flow[0].grid == cc.grid);
    }

    CauchyConfig deep = cc;
    deep.n_levels = 4; // frequency 256 > ny/4
    CHECK_THROWS_AS(weierstrass_ladder(deep), NyquistExceeded);
}

TEST_CASE("cauchy demo reproduces the lacunary contraction picture") {
    CauchyConfig cc = ScenarioConfig::builtin().cauchy;
    auto rep = cauchy_demo(cc);
    CHECK(rep.a == cc.a);
    CHECK(rep.b == cc.b);
    CHECK(rep.n_levels == cc.n_levels);
    REQUIRE(rep.levels.size() == 3);
    REQUIRE(rep.d_symp_increments.size() == 2);
    REQUIRE(rep.increment_ratios.size() == 1);

    // geometric decay at rate ~ a = 1/2
    CHECK(rep.d_symp_increments[0] > rep.d_symp_increments[1]);
    CHECK(std::abs(rep.increment_ratios[0] - 0.5) < 0.1);

    // uniform convergence to the deepest level
    REQUIRE(rep.c0_to_limit.size() == 3);
    CHECK(rep.c0_to_limit[0] > rep.c0_to_limit[1]);
    CHECK(rep.c0_to_limit[2] == 0.0);

    // no harmonic drift without the translation offset
    for (const auto& li : rep.lambda_integrals) {
        CHECK(std::abs(li[0]) < 1e-8);
        CHECK(std::abs(li[1]) < 1e-8);
    }

    // the limit profile roughens at least geometrically
    REQUIRE(rep.roughness_ratios.size() == 2);
    for (double r : rep.roughness_ratios) CHECK(r >= 2.0);

    auto j = rep.to_json();
    CHECK(j.at("d_symp_increments").size() == 2);
    CHECK(j.at("include_translation").get<bool>() == false);
}

TEST_CASE("cauchy demo sees a constant harmonic offset exactly") {
    CauchyConfig cc = ScenarioConfig::builtin().cauchy;
    cc.include_translation = true;
    auto rep = cauchy_demo(cc);
    for (const auto& li : rep.lambda_integrals) {
        CHECK(std::abs(li[0] - 0.0) < 1e-6);
        CHECK(std::abs(li[1] - 0.3) < 1e-6);
    }
    // the offset cancels in increments: same decay as without it
    CHECK(std::abs(rep.increment_ratios[0] - 0.5) < 0.1);
}

TEST_CASE("contraction constants grow with the frequency budget") {
    GridSpec g(64, 64);
    auto ctx = NormContext::flat(g);
    const OneForm& h1 = ctx.basis.h1;
    double e1 = estimate_contraction_constant(h1, 1, 40, 333, ctx);
    double e4 = estimate_contraction_constant(h1, 4, 40, 333, ctx);
    // the four unit translations alone force E >= 1
    CHECK(e1 >= 1.0 - 1e-12);
    CHECK(e4 >= e1);
    CHECK(std::isfinite(e4));
}
