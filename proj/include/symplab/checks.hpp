#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "symplab/config.hpp"
#include "symplab/grid.hpp"
#include "symplab/isotopy.hpp"
#include "symplab/norms.hpp"

namespace symplab {

// One asserted quantity inside a check: the measured residual and the
// threshold it must stay under.
struct CheckEntry {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;

    bool pass() const { return residual <= threshold; }
};

// Result of one verification check. pass() holds exactly when every
// entry passes; details carries reported (non-asserted) values.
struct CheckReport {
    std::string name;
    std::vector<CheckEntry> entries;
    std::string fixtures;
    std::uint64_t seed = 0;
    nlohmann::json details;

    bool pass() const;
    const CheckEntry& entry(const std::string& n) const;
    nlohmann::json to_json() const;
};

// Empirical contraction constant of a harmonic pairing: the largest
// sup-norm of h applied to unit-norm symplectic fields, sampled over the
// band-limited family with spatial frequencies <= cutoff. Deterministic
// corner fields (the four unit translations) seed the family.
double estimate_contraction_constant(const OneForm& h, int cutoff,
                                     int samples, std::uint64_t seed,
                                     const NormContext& ctx);

// Ladder of shear isotopies driven by the partial sums of a lacunary
// cosine series (level n keeps terms 1..n); optionally offset by a
// constant translation. Throws NyquistExceeded when the deepest level's
// frequency b^n exceeds ny/4.
std::vector<Isotopy> weierstrass_ladder(const CauchyConfig& cfg);

// Diagnostics of the ladder: consecutive distances, uniform distances to
// the deepest map, integrated harmonic coefficients, and a second-
// difference roughness indicator of the limit profile.
struct CauchyDemoReport {
    double a = 0.0;
    int b = 0;
    int n_levels = 0;
    bool include_translation = false;
    std::vector<int> levels;
    std::vector<double> d_symp_increments; // d_symp(level n, level n+1)
    std::vector<double> increment_ratios;  // consecutive increment ratios
    std::vector<double> c0_to_limit;       // sup distance to deepest flow
    std::vector<std::array<double, 2>> lambda_integrals;
    std::vector<double> roughness;         // max |second diff| / h^2
    std::vector<double> roughness_ratios;

    nlohmann::json to_json() const;
};

CauchyDemoReport cauchy_demo(const CauchyConfig& cfg);

// The named checks, in canonical order.
CheckReport check_basis_independence(const ScenarioConfig& cfg);
CheckReport check_pairing_bound(const ScenarioConfig& cfg);
CheckReport check_hamiltonian_reduction(const ScenarioConfig& cfg);
CheckReport check_contraction_transport(const ScenarioConfig& cfg);
CheckReport check_composition_generators(const ScenarioConfig& cfg);
CheckReport check_pullback_potential(const ScenarioConfig& cfg);
CheckReport check_product_split(const ScenarioConfig& cfg);
CheckReport check_commutator_hamiltonicity(const ScenarioConfig& cfg);
CheckReport check_norm_noninvariance(const ScenarioConfig& cfg);
CheckReport check_ladder_bounds(const ScenarioConfig& cfg);

const std::vector<std::string>& check_names();
CheckReport run_check(const ScenarioConfig& cfg, const std::string& name);
std::vector<CheckReport> run_all_checks(const ScenarioConfig& cfg);

} // namespace symplab
