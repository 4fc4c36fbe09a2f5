#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rxnet/network.hpp"
#include "rxnet/scenario.hpp"
#include "rxnet/state.hpp"

namespace rxnet {

/// Concentrations above this are treated as numerical divergence.
inline constexpr double kDivergenceLimit = 1e6;

/// Floor used in the relative convergence test so near-zero species do not
/// divide by zero.
inline constexpr double kConvergenceFloor = 1e-12;

/// Consecutive passing steps required before a run counts as converged.
inline constexpr std::uint64_t kConvergenceWindow = 1000;

/// d[conc]/dt of the superposed system at `state` (mol/L per second).
/// Deterministic: terms are accumulated in compiled order.
std::vector<double> eval_gradient(const CompiledNetwork& network, const StateVector& state);

struct StepDiagnostics {
    std::vector<std::uint32_t> clamped;  // species clamped to zero this step
};

/// One synchronous explicit-Euler update: conc'[i] = max(0, conc[i] +
/// gradient[i]*dt), every species advanced from the same pre-step state.
/// Throws SimulationError naming the species on a non-finite result.
StateVector step(const StateVector& state, std::span<const double> gradient, double dt,
                 StepDiagnostics* diagnostics = nullptr);

struct SimulationResult {
    StateVector final;
    bool converged = false;
    std::uint64_t steps_executed = 0;
    std::vector<StateVector> trajectory;  // sampled, strictly increasing time
    std::vector<std::string> diagnostics;
};

/// Integrates the scenario forward. Events are applied at their nearest step
/// boundary before that step's gradient. Terminates when the convergence
/// criterion
///   max_i |gradient[i]|*dt / max(conc[i], 1e-12) < tolerance
/// holds for 1000 consecutive steps, or at max_steps. Throws SimulationError
/// on divergence (non-finite or > 1e6 mol/L), naming species and step.
SimulationResult simulate(const CompiledNetwork& network, const Scenario& scenario);

struct ReverseResult {
    StateVector final;
    std::uint64_t steps_executed = 0;
    std::vector<StateVector> trajectory;
};

/// Integrates backwards from `start`: conc' = conc - gradient(conc)*dt, time
/// decreasing, no clamping. sample_every == 0 records only the endpoints.
ReverseResult simulate_reverse(const CompiledNetwork& network, const StateVector& start,
                               double dt, std::uint64_t steps, std::uint64_t sample_every = 0);

struct BatchEntry {
    std::optional<SimulationResult> result;  // empty on failure
    std::string error;                       // failure description, if any
};

/// Runs independent scenarios, optionally on several threads. Results are
/// returned in input order and are bitwise identical to sequential
/// execution; one failing scenario does not abort the rest.
std::vector<BatchEntry> run_batch(const CompiledNetwork& network,
                                  const std::vector<Scenario>& scenarios, unsigned jobs = 1);

/// Applies a tank event to (state, volume). Addition of n mol in v L scales
/// every concentration by V/(V+v) and adds n/(V+v) to the target species;
/// dilution by w L scales everything by V/(V+w). Returns the new volume.
double apply_event(const CompiledNetwork& network, StateVector& state, double tank_volume,
                   const Event& event);

}  // namespace rxnet
