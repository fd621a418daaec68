#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "symplab/grid.hpp"
#include "symplab/isotopy.hpp"
#include "symplab/metric.hpp"

namespace symplab {

// Closed-form scalar expression on the torus: a constant plus cos/sin
// modes of integer harmonics. JSON shape:
//   {"const": c, "modes": [{"fn": "cos"|"sin", "kx": i, "ky": j, "amp": a}]}
// with both keys optional but at least one present.
struct Expr {
    struct Mode {
        bool is_sin = false;
        int kx = 0;
        int ky = 0;
        double amp = 0.0;
    };
    double c = 0.0;
    std::vector<Mode> modes;

    static Expr parse(const nlohmann::json& j, const std::string& where);
    static Expr constant(double v);
    ScalarField evaluate(const GridSpec& g) const;
};

// Closed-form function of time: {"const": c, "modes": [{"fn", "k", "amp"}]}.
struct TimeProfile {
    struct Mode {
        bool is_sin = false;
        int k = 0;
        double amp = 0.0;
    };
    double c = 0.0;
    std::vector<Mode> modes;

    static TimeProfile parse(const nlohmann::json& j, const std::string& where);
    static TimeProfile constant(double v);
    double operator()(double t) const;
};

// A named object the CLI and the verification suite can instantiate:
// a straight translation flow, a Hamiltonian (optionally time-modulated),
// an explicit vector field, or a 1-form.
struct Fixture {
    enum class Kind { translation, hamiltonian, vector_field, one_form };
    Kind kind = Kind::translation;

    Vec2 velocity;            // translation
    Expr h;                   // hamiltonian
    TimeProfile profile;      // hamiltonian time modulation
    Expr vx, vy;              // vector_field
    Expr cx, cy;              // one_form

    static Fixture parse(const nlohmann::json& j, const std::string& name);
};

// Field / path / isotopy realizations of a fixture.
VectorField fixture_field(const Fixture& f, const GridSpec& g, double t = 0.0);
OneForm fixture_oneform(const Fixture& f, const GridSpec& g);
TimeSeries<ScalarField> fixture_hamiltonian(const Fixture& f, const GridSpec& g,
                                            int nt);
Isotopy fixture_isotopy(const Fixture& f, const GridSpec& g, int nt,
                        int substeps);

struct CauchyConfig {
    double a = 0.5;
    int b = 4;
    int n_levels = 3;
    GridSpec grid{64, 256};
    int nt = 33;
    int substeps = 1;
    Vec2 translation{0.3, 0.0};
    bool include_translation = false;
};

// Whole-run configuration. Unknown keys anywhere are rejected.
struct ScenarioConfig {
    GridSpec grid{64, 64};
    int nt = 65;
    int substeps = 2;
    MetricSpec metric;
    MetricSpec metric_prime; // comparison metric for the basis checks
    std::uint64_t seed = 20260814;
    std::filesystem::path output_dir = "out";
    double samples_scale = 1.0; // scales the verification sample counts
    std::map<std::string, double> tolerance_overrides;
    std::map<std::string, Fixture> fixtures;
    CauchyConfig cauchy;

    const Fixture& fixture(const std::string& name) const;

    static ScenarioConfig from_json(const nlohmann::json& j);
    static ScenarioConfig from_file(const std::filesystem::path& p);
    static ScenarioConfig builtin();
    static const char* builtin_text();
};

} // namespace symplab
