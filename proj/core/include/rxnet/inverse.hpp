#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rxnet/network.hpp"
#include "rxnet/state.hpp"

namespace rxnet {

/// Amounts of input chemicals that produce a target dissolved-ion profile.
struct DosingPlan {
    std::map<std::string, double> amounts;   // input species -> mol/L, >= 0
    std::map<std::string, double> residual;  // ion -> achieved minus target, mol/L
    bool feasible = false;                   // max |residual| <= tolerance
    bool sensitive = false;                  // reverse-simulation result depends on seeding
    std::vector<std::string> notes;
};

/// Input species of a network: species that appear as the sole reactant of an
/// irreversible (kb == 0) reaction.
std::vector<std::string> default_input_species(const CompiledNetwork& network);

/// Non-negative least squares min ||A x - b||, x >= 0, by active-set
/// elimination with deterministic tie-breaking (lowest index enters first).
/// A is row-major, rows x cols.
std::vector<double> nnls(const std::vector<double>& a, std::size_t rows, std::size_t cols,
                         const std::vector<double>& b);

/// Solves input amounts stoichiometrically: each input contributes its
/// dissolution products (stoichiometry-weighted) and the amounts are fitted
/// to the target ion concentrations in the non-negative least-squares sense.
/// Throws ValidationError if the target names an unknown species or an input
/// has no irreversible dissolution reaction.
DosingPlan invert_stoichiometric(const CompiledNetwork& network,
                                 const std::vector<std::string>& inputs,
                                 const std::map<std::string, double>& target, double tolerance);

/// Reconstructs input amounts by integrating backwards from `final_state`
/// until the input-derived ions drop below `ion_tolerance` (relative to their
/// starting total) or `horizon` steps elapse. Exactly-zero input species are
/// seeded with `seed_floor` first; the run is repeated with seed_floor/10 and
/// flagged sensitive when any amount shifts by more than 1%.
DosingPlan invert_by_reverse_simulation(const CompiledNetwork& network,
                                        const std::vector<std::string>& inputs,
                                        const StateVector& final_state, double dt,
                                        std::uint64_t horizon, double seed_floor,
                                        double ion_tolerance = 1e-3);

/// Parses a target file: lines `target <ion> <mmol/L>`, `#` comments.
/// Returned concentrations are mol/L.
std::map<std::string, double> parse_target(std::string_view text);

}  // namespace rxnet
