#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rxnet/engine.hpp"
#include "rxnet/network.hpp"
#include "rxnet/state.hpp"

namespace rxnet {

/// -log10 of the hydrogen ion concentration (mol/L). Throws ValidationError
/// if the network has no H+ species or [H+] <= 0.
double ph(const StateVector& state, const CompiledNetwork& network);

/// Net charge sum_i charge(i)*conc[i], mol charge per litre.
double charge_balance(const StateVector& state, const CompiledNetwork& network);

/// Total of each element over all species, weighted by formula counts.
std::map<std::string, double> element_totals(const StateVector& state,
                                             const CompiledNetwork& network);

/// Total dissolved solids, mg/L: sum of conc*molar_mass*1000 over aqueous
/// species, excluding water-derived ones (formula containing only H and O)
/// and all solid-phase species. Throws ValidationError if an included
/// species lacks a molar mass.
double tds(const StateVector& state, const CompiledNetwork& network);

struct SpeciesReading {
    std::string name;
    double mol_per_l;
    double mmol_per_l;
};

struct Report {
    bool converged = false;
    std::uint64_t steps = 0;
    double time_s = 0.0;
    std::vector<SpeciesReading> concentrations;  // declaration order
    std::optional<double> ph;                    // absent when [H+] unavailable
    std::optional<double> tds_mg_per_l;          // absent when molar masses missing
    double net_charge = 0.0;
    std::map<std::string, double> element_totals;
    std::vector<SpeciesReading> sediments;  // solid-phase species with conc > 0
    std::vector<std::string> diagnostics;
};

Report build_report(const SimulationResult& result, const CompiledNetwork& network);

/// Deterministic text rendering, one `key: value` per line.
std::string render_report(const Report& report);

/// Trajectory CSV: header `time,<species...>`, one row per sampled state,
/// concentrations in mol/L with 17 significant digits.
std::string trajectory_csv(const std::vector<StateVector>& trajectory,
                           const CompiledNetwork& network);

}  // namespace rxnet
