// Config-driven front end: builds fixtures, runs the computations and the
// verification suite, writes JSON/CSV/SFLD2 reports.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical error,
// 3 verification-check failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "symplab/calculus.hpp"
#include "symplab/checks.hpp"
#include "symplab/config.hpp"
#include "symplab/errors.hpp"
#include "symplab/hodge.hpp"
#include "symplab/hofer_like.hpp"
#include "symplab/io.hpp"
#include "symplab/norms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace symplab;

namespace {

struct CliOptions {
    std::string config_path;
    std::string output_dir; // overrides the config when nonempty
    std::string hodge_fixture = "probe_form";
    std::string norm_fixture = "norm_witness";
    std::string flow_fixture = "modulated_shear";
    std::string dist_a = "fast";
    std::string dist_b = "slow";
    std::string hofer_fixture = "shear";
    std::string target = "all";
};

ScenarioConfig load_config(const CliOptions& opt) {
    ScenarioConfig cfg = opt.config_path.empty()
                             ? ScenarioConfig::builtin()
                             : ScenarioConfig::from_file(opt.config_path);
    if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
    fs::create_directories(cfg.output_dir);
    return cfg;
}

OneForm fixture_as_oneform(const Fixture& f, const GridSpec& g) {
    if (f.kind == Fixture::Kind::one_form) return fixture_oneform(f, g);
    return omega_contract(fixture_field(f, g));
}

json report_of(const NormBreakdown& nb) {
    return {{"lambda1", nb.lambda1},
            {"lambda2", nb.lambda2},
            {"oscillation", nb.oscillation},
            {"value", nb.value},
            {"residual", nb.residual}};
}

json report_of(const DistanceReport& d) {
    return {{"d0_fwd", d.d0_fwd}, {"d0_inv", d.d0_inv}, {"D", d.D},
            {"c0", d.c0},         {"total", d.total}};
}

json report_of(const EnergyReport& e) {
    return {{"e0_upper", e.e0_upper},
            {"length", e.length},
            {"endpoint_error", e.endpoint_error},
            {"evaluations", e.evaluations},
            {"converged", e.converged}};
}

int cmd_hodge(const ScenarioConfig& cfg, const CliOptions& opt) {
    const Fixture& f = cfg.fixture(opt.hodge_fixture);
    const OneForm theta = fixture_as_oneform(f, cfg.grid);
    const HarmonicBasis basis = harmonic_basis(cfg.metric);
    const HodgeSplit split = hodge_decompose(theta, cfg.metric, basis);
    json rep = {{"fixture", opt.hodge_fixture},
                {"lambda1", split.lambda1},
                {"lambda2", split.lambda2},
                {"potential_osc", osc(split.potential)},
                {"residual", split.residual}};
    io::write_json(cfg.output_dir / "hodge.json", rep);
    io::write_field(cfg.output_dir / "hodge_potential.sfld2",
                    split.potential);
    std::printf("hodge %s: lambda = (%.12g, %.12g), residual = %.3g\n",
                opt.hodge_fixture.c_str(), split.lambda1, split.lambda2,
                split.residual);
    return 0;
}

int cmd_norm(const ScenarioConfig& cfg, const CliOptions& opt) {
    const Fixture& f = cfg.fixture(opt.norm_fixture);
    const VectorField X = fixture_field(f, cfg.grid);
    const NormBreakdown nb =
        symp_norm(X, NormContext::with_metric(cfg.metric));
    json rep = report_of(nb);
    rep["fixture"] = opt.norm_fixture;
    rep["norm"] = nb.value;
    io::write_json(cfg.output_dir / "norm.json", rep);
    std::printf("norm %s = %.12g\n", opt.norm_fixture.c_str(), nb.value);
    return 0;
}

int cmd_flow(const ScenarioConfig& cfg, const CliOptions& opt) {
    const Fixture& f = cfg.fixture(opt.flow_fixture);
    const Isotopy iso = fixture_isotopy(f, cfg.grid, cfg.nt, cfg.substeps);
    const fs::path dir = cfg.output_dir / ("flow_" + opt.flow_fixture);
    io::write_isotopy(dir, iso);
    std::printf("flow %s: %d samples written to %s\n", opt.flow_fixture.c_str(),
                iso.nt(), dir.string().c_str());
    return 0;
}

int cmd_distance(const ScenarioConfig& cfg, const CliOptions& opt) {
    const NormContext ctx = NormContext::with_metric(cfg.metric);
    const Isotopy a = fixture_isotopy(cfg.fixture(opt.dist_a), cfg.grid,
                                      cfg.nt, cfg.substeps);
    const Isotopy b = fixture_isotopy(cfg.fixture(opt.dist_b), cfg.grid,
                                      cfg.nt, cfg.substeps);
    const Isotopy a_inv = inverse_isotopy(a);
    const Isotopy b_inv = inverse_isotopy(b);
    const DistanceReport l1 = distance(a, b, a_inv, b_inv, ctx, TimeMode::l1);
    const DistanceReport sup =
        distance(a, b, a_inv, b_inv, ctx, TimeMode::sup);
    json rep = {{"a", opt.dist_a},
                {"b", opt.dist_b},
                {"l1", report_of(l1)},
                {"sup", report_of(sup)},
                {"total", l1.total}};
    io::write_json(cfg.output_dir / "distance.json", rep);
    std::printf("distance(%s, %s): total = %.12g (l1), %.12g (sup)\n",
                opt.dist_a.c_str(), opt.dist_b.c_str(), l1.total,
                sup.total);
    return 0;
}

int cmd_hofer(const ScenarioConfig& cfg, const CliOptions& opt) {
    const Fixture& f = cfg.fixture(opt.hofer_fixture);
    if (f.kind != Fixture::Kind::hamiltonian)
        throw ConfigError("hofer: fixture '" + opt.hofer_fixture +
                          "' is not a Hamiltonian");
    const TimeSeries<ScalarField> H =
        fixture_hamiltonian(f, cfg.grid, cfg.nt);
    const NormContext ctx = NormContext::with_metric(cfg.metric);
    OptConfig oc;
    const HoferComparison cmp = compare_with_hofer(H, ctx, oc);
    json rep = {{"fixture", opt.hofer_fixture},
                {"hofer", cmp.hofer},
                {"e", cmp.energy.e},
                {"forward", report_of(cmp.energy.fwd)},
                {"inverse", report_of(cmp.energy.inv)}};
    io::write_json(cfg.output_dir / "hofer.json", rep);
    std::printf("hofer %s: oscillation length = %.12g, energy = %.12g\n",
                opt.hofer_fixture.c_str(), cmp.hofer, cmp.energy.e);
    return 0;
}

int cmd_verify(const ScenarioConfig& cfg, const CliOptions& opt) {
    std::vector<CheckReport> reports;
    if (opt.target == "all") {
        reports = run_all_checks(cfg);
    } else {
        reports.push_back(run_check(cfg, opt.target));
    }
    json summary = json::array();
    int failures = 0;
    for (const CheckReport& rep : reports) {
        io::write_json(cfg.output_dir / ("check_" + rep.name + ".json"),
                       rep.to_json());
        summary.push_back({{"name", rep.name}, {"pass", rep.pass()}});
        if (!rep.pass()) ++failures;
        std::printf("[%s] %s\n", rep.pass() ? "PASS" : "FAIL",
                    rep.name.c_str());
        for (const CheckEntry& e : rep.entries)
            if (!e.pass())
                std::printf("    %s: %.6g > %.6g\n", e.name.c_str(),
                            e.residual, e.threshold);
    }
    io::write_json(cfg.output_dir / "verify.json",
                   {{"checks", summary}, {"failures", failures}});
    std::printf("%d/%zu checks passed\n",
                static_cast<int>(reports.size()) - failures, reports.size());
    return failures == 0 ? 0 : static_cast<int>(ErrorKind::check_failure);
}

int cmd_cauchy(const ScenarioConfig& cfg) {
    const CauchyDemoReport rep = cauchy_demo(cfg.cauchy);
    io::write_json(cfg.output_dir / "cauchy_demo.json", rep.to_json());
    std::vector<std::vector<double>> rows;
    for (std::size_t n = 0; n < rep.levels.size(); ++n)
        rows.push_back({static_cast<double>(rep.levels[n]),
                        n < rep.d_symp_increments.size()
                            ? rep.d_symp_increments[n]
                            : 0.0,
                        rep.c0_to_limit[n], rep.lambda_integrals[n][0],
                        rep.lambda_integrals[n][1], rep.roughness[n]});
    io::write_csv_table(cfg.output_dir / "cauchy_ladder.csv",
                        {"level", "d_symp_increment", "c0_to_limit",
                         "lambda1_integral", "lambda2_integral", "roughness"},
                        rows);
    std::printf("cauchy-demo: %d levels", rep.n_levels);
    for (double r : rep.increment_ratios) std::printf(" ratio=%.4f", r);
    std::printf("\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Norms, distances and verification checks for symplectic "
                 "isotopies on the flat 2-torus"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("-c,--config", opt.config_path,
                   "Scenario config (JSON); built-in defaults when omitted")
        ->check(CLI::ExistingFile);
    app.add_option("-o,--output", opt.output_dir, "Output directory")
        ->envname("SYMPLAB_OUTPUT_DIR");

    auto* hodge = app.add_subcommand("hodge", "Decompose a configured form");
    hodge->add_option("-f,--fixture", opt.hodge_fixture, "Fixture name");

    auto* norm =
        app.add_subcommand("norm", "Norm of a configured vector field");
    norm->add_option("-f,--fixture", opt.norm_fixture, "Fixture name");

    auto* flow =
        app.add_subcommand("flow", "Integrate and serialize an isotopy");
    flow->add_option("-f,--fixture", opt.flow_fixture, "Fixture name");

    auto* dist = app.add_subcommand(
        "distance", "Distance between two configured isotopies");
    dist->add_option("-a,--first", opt.dist_a, "First fixture");
    dist->add_option("-b,--second", opt.dist_b, "Second fixture");

    auto* hofer = app.add_subcommand(
        "hofer", "Energy of a Hamiltonian time-one map next to its "
                 "oscillation length");
    hofer->add_option("-f,--fixture", opt.hofer_fixture,
                      "Hamiltonian fixture");

    auto* verify =
        app.add_subcommand("verify", "Run verification checks");
    verify->add_option("target", opt.target, "Check name or 'all'");

    auto* cauchy = app.add_subcommand(
        "cauchy-demo", "Lacunary shear ladder: increments, limits, "
                       "roughness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ErrorKind::config);
    }

    try {
        const ScenarioConfig cfg = load_config(opt);
        if (hodge->parsed()) return cmd_hodge(cfg, opt);
        if (norm->parsed()) return cmd_norm(cfg, opt);
        if (flow->parsed()) return cmd_flow(cfg, opt);
        if (dist->parsed()) return cmd_distance(cfg, opt);
        if (hofer->parsed()) return cmd_hofer(cfg, opt);
        if (verify->parsed()) return cmd_verify(cfg, opt);
        if (cauchy->parsed()) return cmd_cauchy(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(ErrorKind::numerical);
    }
    return 0;
}
