#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rxnet/kinetics.hpp"
#include "rxnet/model.hpp"
#include "rxnet/scenario.hpp"

namespace rxnet::assets {

/// FNV-1a 64-bit hash, used for asset integrity checks.
std::uint64_t fnv1a64(std::string_view data);

/// Text of the bundled nutrient-solution model file.
std::string_view reference_model_text();

/// Parses the bundled model (17 species, 10 reactions). Throws AssetError if
/// the embedded text fails its checksum.
ModelDefinition load_reference_model();

/// Bundled per-step scenario (1-based step in [1, 10]).
Scenario reference_scenario(int model_step);
std::vector<Scenario> reference_scenarios();

struct GoldenExpectation {
    std::string species;
    double expected_mmol_per_l;
    double tolerance;  // relative
};

/// One addition step of the reference experiment: the salt concentrations
/// fed in and the converged ion concentrations the simulator must reproduce.
struct GoldenCase {
    int step;                                   // 1..10
    std::map<std::string, double> inputs_mmol;  // salt -> mmol/L
    std::vector<GoldenExpectation> expected;
};

std::vector<GoldenCase> golden_cases();

/// Parses golden expectations from CSV `step,species,expected_mmol_per_L,
/// tolerance` (with `#` comments). Used to load override files.
std::vector<GoldenCase> parse_goldens_csv(std::string_view csv);

/// Literature equilibrium constant recorded for one bundled reaction, for
/// rate-consistency reporting. Several of the bundled coefficient pairs are
/// known to disagree with the literature constants; `consistent` records the
/// expected verdict.
struct ReferenceConstant {
    std::string reaction_id;
    ConstantKind kind;
    double value;
    bool consistent;  // implied kf/kb matches `value` within 1e-9 relative
};

const std::vector<ReferenceConstant>& reference_constants();

}  // namespace rxnet::assets
