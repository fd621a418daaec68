#include "symplab/config.hpp"

#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/errors.hpp"
#include "symplab/io.hpp"

namespace symplab {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

double get_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw ConfigError(where + " is missing \"" + key + "\"");
    if (!j[key].is_number())
        throw ConfigError(where + "." + key + " must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw ConfigError(where + " is missing \"" + key + "\"");
    if (!j[key].is_number_integer())
        throw ConfigError(where + "." + key + " must be an integer");
    return j[key].get<int>();
}

Vec2 get_vec2(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
        throw ConfigError(where + "." + key + " must be a 2-element array");
    return {j[key][0].get<double>(), j[key][1].get<double>()};
}

bool parse_fn(const json& m, const std::string& where) {
    const std::string fn = m.at("fn").get<std::string>();
    if (fn == "sin") return true;
    if (fn == "cos") return false;
    throw ConfigError(where + ".fn must be \"cos\" or \"sin\"");
}

GridSpec parse_grid(const json& j, const std::string& where) {
    require_keys(j, {"nx", "ny"}, where);
    try {
        return GridSpec(get_int(j, "nx", where), get_int(j, "ny", where));
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

MetricSpec parse_metric(const json& j, const GridSpec& g,
                        const std::string& where) {
    require_keys(j, {"kind", "g11", "g12", "g22", "tag"}, where);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "flat") return MetricSpec::flat(g);
    if (kind != "fields")
        throw ConfigError(where + ".kind must be \"flat\" or \"fields\"");
    std::string tag = j.contains("tag") ? j["tag"].get<std::string>() : "custom";
    return MetricSpec::fields(
        Expr::parse(j.at("g11"), where + ".g11").evaluate(g),
        Expr::parse(j.at("g12"), where + ".g12").evaluate(g),
        Expr::parse(j.at("g22"), where + ".g22").evaluate(g), std::move(tag));
}

} // namespace

Expr Expr::parse(const nlohmann::json& j, const std::string& where) {
    require_keys(j, {"const", "modes"}, where);
    if (!j.contains("const") && !j.contains("modes"))
        throw ConfigError(where + " needs \"const\" or \"modes\"");
    Expr e;
    if (j.contains("const")) e.c = j["const"].get<double>();
    if (j.contains("modes")) {
        if (!j["modes"].is_array())
            throw ConfigError(where + ".modes must be an array");
        for (const auto& m : j["modes"]) {
            require_keys(m, {"fn", "kx", "ky", "amp"}, where + ".modes[]");
            Mode mode;
            mode.is_sin = parse_fn(m, where + ".modes[]");
            mode.kx = get_int(m, "kx", where + ".modes[]");
            mode.ky = get_int(m, "ky", where + ".modes[]");
            mode.amp = get_number(m, "amp", where + ".modes[]");
            e.modes.push_back(mode);
        }
    }
    return e;
}

Expr Expr::constant(double v) {
    Expr e;
    e.c = v;
    return e;
}

ScalarField Expr::evaluate(const GridSpec& g) const {
    ScalarField f(g, c);
    for (const Mode& m : modes) {
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const double th = two_pi * (m.kx * g.x(i) + m.ky * g.y(j));
                f.at(i, j) += m.amp * (m.is_sin ? std::sin(th) : std::cos(th));
            }
        }
    }
    return f;
}

TimeProfile TimeProfile::parse(const nlohmann::json& j,
                               const std::string& where) {
    require_keys(j, {"const", "modes"}, where);
    if (!j.contains("const") && !j.contains("modes"))
        throw ConfigError(where + " needs \"const\" or \"modes\"");
    TimeProfile p;
    if (j.contains("const")) p.c = j["const"].get<double>();
    if (j.contains("modes")) {
        if (!j["modes"].is_array())
            throw ConfigError(where + ".modes must be an array");
        for (const auto& m : j["modes"]) {
            require_keys(m, {"fn", "k", "amp"}, where + ".modes[]");
            Mode mode;
            mode.is_sin = parse_fn(m, where + ".modes[]");
            mode.k = get_int(m, "k", where + ".modes[]");
            mode.amp = get_number(m, "amp", where + ".modes[]");
            p.modes.push_back(mode);
        }
    }
    return p;
}

TimeProfile TimeProfile::constant(double v) {
    TimeProfile p;
    p.c = v;
    return p;
}

double TimeProfile::operator()(double t) const {
    double v = c;
    for (const Mode& m : modes)
        v += m.amp * (m.is_sin ? std::sin(two_pi * m.k * t)
                               : std::cos(two_pi * m.k * t));
    return v;
}

Fixture Fixture::parse(const nlohmann::json& j, const std::string& name) {
    const std::string where = "fixtures." + name;
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError(where + " needs a \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    Fixture f;
    if (kind == "translation") {
        require_keys(j, {"kind", "velocity"}, where);
        f.kind = Kind::translation;
        f.velocity = get_vec2(j, "velocity", where);
    } else if (kind == "hamiltonian") {
        require_keys(j, {"kind", "h", "time_profile"}, where);
        f.kind = Kind::hamiltonian;
        f.h = Expr::parse(j.at("h"), where + ".h");
        f.profile = j.contains("time_profile")
                        ? TimeProfile::parse(j["time_profile"],
                                             where + ".time_profile")
                        : TimeProfile::constant(1.0);
    } else if (kind == "vector_field") {
        require_keys(j, {"kind", "vx", "vy"}, where);
        f.kind = Kind::vector_field;
        f.vx = Expr::parse(j.at("vx"), where + ".vx");
        f.vy = Expr::parse(j.at("vy"), where + ".vy");
    } else if (kind == "one_form") {
        require_keys(j, {"kind", "cx", "cy"}, where);
        f.kind = Kind::one_form;
        f.cx = Expr::parse(j.at("cx"), where + ".cx");
        f.cy = Expr::parse(j.at("cy"), where + ".cy");
    } else {
        throw ConfigError(where + ".kind \"" + kind + "\" is not recognized");
    }
    return f;
}

namespace {

ScalarField mean_zero(ScalarField f) {
    const double m = mean(f);
    for (double& v : f.v) v -= m;
    return f;
}

} // namespace

VectorField fixture_field(const Fixture& f, const GridSpec& g, double t) {
    switch (f.kind) {
    case Fixture::Kind::translation: {
        VectorField X(g);
        for (std::size_t i = 0; i < X.vx.size(); ++i) {
            X.vx[i] = f.velocity.x;
            X.vy[i] = f.velocity.y;
        }
        return X;
    }
    case Fixture::Kind::hamiltonian: {
        const ScalarField H =
            f.profile(t) * mean_zero(f.h.evaluate(g));
        return omega_contract_inv(d_scalar(H));
    }
    case Fixture::Kind::vector_field:
        return VectorField{[&] {
            VectorField X(g);
            X.vx = f.vx.evaluate(g).v;
            X.vy = f.vy.evaluate(g).v;
            return X;
        }()};
    case Fixture::Kind::one_form:
        throw ConfigError("a one_form fixture is not a vector field");
    }
    throw ConfigError("unreachable fixture kind");
}

OneForm fixture_oneform(const Fixture& f, const GridSpec& g) {
    if (f.kind != Fixture::Kind::one_form)
        throw ConfigError("fixture is not a one_form");
    OneForm theta(g);
    theta.cx = f.cx.evaluate(g).v;
    theta.cy = f.cy.evaluate(g).v;
    return theta;
}

TimeSeries<ScalarField> fixture_hamiltonian(const Fixture& f, const GridSpec& g,
                                            int nt) {
    if (f.kind != Fixture::Kind::hamiltonian)
        throw ConfigError("fixture is not a hamiltonian");
    const ScalarField base = mean_zero(f.h.evaluate(g));
    TimeSeries<ScalarField> H;
    H.samples.reserve(static_cast<std::size_t>(nt));
    for (int k = 0; k < nt; ++k) {
        const double t = static_cast<double>(k) / (nt - 1);
        H.samples.push_back(f.profile(t) * base);
    }
    return H;
}

Isotopy fixture_isotopy(const Fixture& f, const GridSpec& g, int nt,
                        int substeps) {
    switch (f.kind) {
    case Fixture::Kind::translation:
    case Fixture::Kind::vector_field: {
        GeneratorPath gen;
        gen.samples.assign(static_cast<std::size_t>(nt), fixture_field(f, g));
        return integrate_flow(gen, substeps);
    }
    case Fixture::Kind::hamiltonian:
        return hamiltonian_isotopy(fixture_hamiltonian(f, g, nt), substeps);
    case Fixture::Kind::one_form:
        throw ConfigError("a one_form fixture has no isotopy");
    }
    throw ConfigError("unreachable fixture kind");
}

const Fixture& ScenarioConfig::fixture(const std::string& name) const {
    auto it = fixtures.find(name);
    if (it == fixtures.end())
        throw ConfigError("config has no fixture named \"" + name + "\"");
    return it->second;
}

namespace {

ScenarioConfig parse_config(const nlohmann::json& j) {
    require_keys(j,
                 {"grid", "time", "metric", "metric_prime", "seed",
                  "output_dir", "verify", "tolerances", "fixtures", "cauchy"},
                 "config");
    ScenarioConfig cfg;
    cfg.grid = parse_grid(j.at("grid"), "config.grid");

    const json& t = j.at("time");
    require_keys(t, {"nt", "substeps"}, "config.time");
    cfg.nt = get_int(t, "nt", "config.time");
    cfg.substeps = get_int(t, "substeps", "config.time");
    if (cfg.nt < 3) throw ConfigError("config.time.nt must be at least 3");
    if (cfg.substeps < 1)
        throw ConfigError("config.time.substeps must be positive");

    cfg.metric = j.contains("metric")
                     ? parse_metric(j["metric"], cfg.grid, "config.metric")
                     : MetricSpec::flat(cfg.grid);
    if (j.contains("metric_prime")) {
        cfg.metric_prime =
            parse_metric(j["metric_prime"], cfg.grid, "config.metric_prime");
    } else {
        Expr stretch;
        stretch.c = 1.0;
        stretch.modes.push_back({false, 0, 1, 0.3});
        cfg.metric_prime = MetricSpec::fields(
            stretch.evaluate(cfg.grid), Expr::constant(0.0).evaluate(cfg.grid),
            Expr::constant(1.0).evaluate(cfg.grid), "stretch-y");
    }

    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir"))
        cfg.output_dir = j["output_dir"].get<std::string>();

    if (j.contains("verify")) {
        require_keys(j["verify"], {"samples_scale"}, "config.verify");
        if (j["verify"].contains("samples_scale"))
            cfg.samples_scale = j["verify"]["samples_scale"].get<double>();
        if (cfg.samples_scale <= 0.0)
            throw ConfigError("config.verify.samples_scale must be positive");
    }

    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object())
            throw ConfigError("config.tolerances must be an object");
        for (const auto& [key, value] : j["tolerances"].items()) {
            if (!value.is_number())
                throw ConfigError("config.tolerances." + key +
                                  " must be a number");
            cfg.tolerance_overrides[key] = value.get<double>();
        }
    }

    if (j.contains("fixtures")) {
        if (!j["fixtures"].is_object())
            throw ConfigError("config.fixtures must be an object");
        for (const auto& [name, spec] : j["fixtures"].items())
            cfg.fixtures.emplace(name, Fixture::parse(spec, name));
    }

    if (j.contains("cauchy")) {
        const json& c = j["cauchy"];
        require_keys(c,
                     {"a", "b", "n_levels", "grid", "nt", "substeps",
                      "translation"},
                     "config.cauchy");
        cfg.cauchy.a = get_number(c, "a", "config.cauchy");
        cfg.cauchy.b = get_int(c, "b", "config.cauchy");
        cfg.cauchy.n_levels = get_int(c, "n_levels", "config.cauchy");
        if (c.contains("grid"))
            cfg.cauchy.grid = parse_grid(c["grid"], "config.cauchy.grid");
        if (c.contains("nt"))
            cfg.cauchy.nt = get_int(c, "nt", "config.cauchy");
        if (c.contains("substeps"))
            cfg.cauchy.substeps = get_int(c, "substeps", "config.cauchy");
        if (c.contains("translation"))
            cfg.cauchy.translation =
                get_vec2(c, "translation", "config.cauchy");
    }
    return cfg;
}

} // namespace

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
    try {
        return parse_config(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ScenarioConfig ScenarioConfig::from_file(const std::filesystem::path& p) {
    return from_json(io::read_json(p));
}

ScenarioConfig ScenarioConfig::builtin() {
    return from_json(nlohmann::json::parse(builtin_text()));
}

const char* ScenarioConfig::builtin_text() {
    // 0.15915494309189535 = 1/(2 pi): the shear Hamiltonian cos(2 pi y)/(2 pi)
    // generates the unit shear (sin 2 pi y, 0) whose length is 1/pi.
    return R"JSON({
  "grid": {"nx": 64, "ny": 64},
  "time": {"nt": 65, "substeps": 2},
  "metric": {"kind": "flat"},
  "metric_prime": {
    "kind": "fields",
    "g11": {"const": 1.0, "modes": [{"fn": "cos", "kx": 0, "ky": 1, "amp": 0.3}]},
    "g12": {"const": 0.0},
    "g22": {"const": 1.0},
    "tag": "stretch-y"
  },
  "seed": 20260814,
  "output_dir": "out",
  "fixtures": {
    "norm_witness": {
      "kind": "vector_field",
      "vx": {"const": 3.0},
      "vy": {"modes": [{"fn": "cos", "kx": 1, "ky": 0, "amp": -1.0}]}
    },
    "shear": {
      "kind": "hamiltonian",
      "h": {"modes": [{"fn": "cos", "kx": 0, "ky": 1, "amp": 0.15915494309189535}]}
    },
    "witness_map": {
      "kind": "hamiltonian",
      "h": {"modes": [{"fn": "cos", "kx": 0, "ky": 1, "amp": -0.15915494309189535}]}
    },
    "modulated_shear": {
      "kind": "hamiltonian",
      "h": {"modes": [{"fn": "cos", "kx": 0, "ky": 1, "amp": -0.007957747154594767}]},
      "time_profile": {"const": 0.5, "modes": [{"fn": "cos", "k": 1, "amp": 0.5}]}
    },
    "fast": {"kind": "translation", "velocity": [0.3, 0.0]},
    "slow": {"kind": "translation", "velocity": [0.1, 0.0]},
    "ytrans": {"kind": "translation", "velocity": [0.0, 0.25]},
    "probe_form": {
      "kind": "one_form",
      "cx": {"modes": [{"fn": "cos", "kx": 1, "ky": 0, "amp": 1.0}]},
      "cy": {"const": 0.0}
    }
  },
  "cauchy": {
    "a": 0.5,
    "b": 4,
    "n_levels": 3,
    "grid": {"nx": 64, "ny": 256},
    "nt": 33,
    "substeps": 1,
    "translation": [0.3, 0.0]
  }
})JSON";
}

} // namespace symplab
