#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rxnet {

/// Adds `amount` mol of one species carried in `solvent_volume` L of water.
struct Addition {
    std::string species;
    double amount;          // mol, >= 0
    double solvent_volume;  // L, > 0
};

/// Adds `added_water` L of plain water.
struct Dilution {
    double added_water;  // L, > 0
};

struct Event {
    double time;  // seconds; snapped to the nearest step boundary
    std::variant<Addition, Dilution> action;
};

/// Run configuration: initial concentrations, timed tank events, step size
/// and termination policy.
struct Scenario {
    std::map<std::string, double> initial;  // species -> mol/L; unlisted = 0
    std::vector<Event> events;              // sorted by time
    double volume = 1.0;                    // tank volume, L
    double dt = 1e-8;                       // seconds, > 0
    std::uint64_t max_steps = 2'500'000;
    double tolerance = 1e-9;                // relative convergence threshold
    std::uint64_t sample_every = 100'000;   // trajectory decimation
    /// Run exactly max_steps with the convergence check disabled.
    bool fixed_steps = false;
};

/// Parses a scenario file. Line-oriented, `#` comments:
///
///   init <species> <mol/L>
///   volume <L>
///   at <seconds> add <species> <mol> in <L>
///   at <seconds> dilute <L>
///   dt <seconds>
///   max_steps <n>
///   tolerance <x>
///   sample_every <n>
///
/// Species names are not resolved here; simulate() validates them against
/// the network. Throws ParseError on malformed input.
Scenario parse_scenario(std::string_view text);

}  // namespace rxnet
