#include "rxnet/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "rxnet/errors.hpp"

namespace rxnet {

namespace {

std::string format_time(double t) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", t);
    return buf;
}

[[noreturn]] void throw_divergence(const CompiledNetwork& network, std::uint32_t species,
                                   std::uint64_t step, double value, bool reverse) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%s diverged at step %llu: [%s] = %g mol/L %s; try a smaller time step",
                  reverse ? "reverse integration" : "integration",
                  static_cast<unsigned long long>(step), network.species_name(species).c_str(),
                  value,
                  std::isfinite(value) ? "exceeds the 1e6 mol/L guard" : "is not finite");
    throw SimulationError(network.species_name(species), step, buf);
}

}  // namespace

std::vector<double> eval_gradient(const CompiledNetwork& network, const StateVector& state) {
    std::vector<double> grad(network.species_count());
    network.eval_into(state.conc, grad);
    return grad;
}

StateVector step(const StateVector& state, std::span<const double> gradient, double dt,
                 StepDiagnostics* diagnostics) {
    if (gradient.size() != state.conc.size())
        throw ValidationError("gradient dimension does not match state");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be > 0 and finite");
    StateVector next;
    next.time = state.time + dt;
    next.conc.resize(state.conc.size());
    for (std::size_t i = 0; i < state.conc.size(); ++i) {
        double v = state.conc[i] + gradient[i] * dt;
        if (!std::isfinite(v))
            throw SimulationError("species #" + std::to_string(i), 1,
                                  "non-finite concentration in species #" + std::to_string(i));
        if (v < 0.0) {
            v = 0.0;
            if (diagnostics) diagnostics->clamped.push_back(static_cast<std::uint32_t>(i));
        }
        next.conc[i] = v;
    }
    return next;
}

SimulationResult simulate(const CompiledNetwork& network, const Scenario& scenario) {
    const std::size_t ns = network.species_count();
    if (!(scenario.dt > 0.0) || !std::isfinite(scenario.dt))
        throw ValidationError("dt must be > 0 and finite");
    if (scenario.sample_every == 0) throw ValidationError("sample_every must be >= 1");
    if (!scenario.fixed_steps && !(scenario.tolerance > 0.0))
        throw ValidationError("tolerance must be > 0");
    if (!(scenario.volume > 0.0)) throw ValidationError("tank volume must be > 0");
    const double dt = scenario.dt;

    SimulationResult result;
    StateVector state;
    state.time = 0.0;
    state.conc.assign(ns, 0.0);
    for (const auto& [name, conc] : scenario.initial) {
        if (!(conc >= 0.0) || !std::isfinite(conc))
            throw ValidationError("initial concentration of " + name + " must be >= 0");
        state.conc[network.index_of(name)] = conc;
    }

    // Events snap to the nearest step boundary and fire before that step's
    // gradient evaluation.
    struct PendingEvent {
        std::uint64_t at_step;
        const Event* event;
    };
    std::vector<PendingEvent> pending;
    for (const auto& event : scenario.events) {
        if (!(event.time >= 0.0) || !std::isfinite(event.time))
            throw ValidationError("event time must be >= 0");
        auto at = static_cast<std::uint64_t>(std::llround(event.time / dt));
        if (at > scenario.max_steps) {
            result.diagnostics.push_back("event at t=" + format_time(event.time) +
                                         " s lies beyond the simulated horizon and was skipped");
            continue;
        }
        pending.push_back({at, &event});
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [](const PendingEvent& a, const PendingEvent& b) {
                         return a.at_step < b.at_step;
                     });

    double volume = scenario.volume;
    std::size_t next_event = 0;
    auto fire_events = [&](std::uint64_t at) {
        while (next_event < pending.size() && pending[next_event].at_step == at) {
            volume = apply_event(network, state, volume, *pending[next_event].event);
            ++next_event;
        }
    };

    fire_events(0);
    result.trajectory.push_back(state);

    std::vector<double> grad(ns);
    std::vector<bool> clamp_seen(ns, false);
    std::uint64_t consecutive_ok = 0;
    std::uint64_t executed = 0;
    bool converged = false;

    while (executed < scenario.max_steps) {
        network.eval_into(state.conc, grad);

        bool within_tolerance = false;
        if (!scenario.fixed_steps) {
            within_tolerance = true;
            for (std::size_t i = 0; i < ns; ++i) {
                const double denom = std::max(state.conc[i], kConvergenceFloor);
                if (!(std::abs(grad[i]) * dt < scenario.tolerance * denom)) {
                    within_tolerance = false;
                    break;
                }
            }
        }

        for (std::size_t i = 0; i < ns; ++i) {
            double v = state.conc[i] + grad[i] * dt;
            if (v < 0.0) {
                v = 0.0;
                if (!clamp_seen[i]) {
                    clamp_seen[i] = true;
                    result.diagnostics.push_back(
                        "concentration of " + network.species_name(i) +
                        " clamped to zero at step " + std::to_string(executed + 1) +
                        " (first occurrence); consider a smaller time step");
                }
            }
            if (!(v <= kDivergenceLimit))  // catches NaN as well
                throw_divergence(network, static_cast<std::uint32_t>(i), executed + 1,
                                 state.conc[i] + grad[i] * dt, false);
            state.conc[i] = v;
        }
        ++executed;
        state.time = static_cast<double>(executed) * dt;

        if (within_tolerance && next_event == pending.size()) {
            if (++consecutive_ok >= kConvergenceWindow) {
                converged = true;
            }
        } else {
            consecutive_ok = 0;
        }

        if (executed % scenario.sample_every == 0) result.trajectory.push_back(state);
        if (converged) break;
        fire_events(executed);
    }

    if (result.trajectory.empty() || result.trajectory.back().time != state.time)
        result.trajectory.push_back(state);
    result.final = std::move(state);
    result.converged = converged;
    result.steps_executed = executed;
    return result;
}

ReverseResult simulate_reverse(const CompiledNetwork& network, const StateVector& start,
                               double dt, std::uint64_t steps, std::uint64_t sample_every) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be > 0 and finite");
    if (start.conc.size() != network.species_count())
        throw ValidationError("state dimension does not match network");
    for (double v : start.conc)
        if (!std::isfinite(v)) throw ValidationError("start state must be finite");

    ReverseResult result;
    StateVector state = start;
    result.trajectory.push_back(state);
    std::vector<double> grad(network.species_count());
    for (std::uint64_t n = 1; n <= steps; ++n) {
        network.eval_into(state.conc, grad);
        for (std::size_t i = 0; i < state.conc.size(); ++i) {
            const double v = state.conc[i] - grad[i] * dt;
            if (!(std::abs(v) <= kDivergenceLimit))
                throw_divergence(network, static_cast<std::uint32_t>(i), n, v, true);
            state.conc[i] = v;
        }
        state.time = start.time - static_cast<double>(n) * dt;
        if (sample_every != 0 && n % sample_every == 0) result.trajectory.push_back(state);
    }
    if (result.trajectory.back().time != state.time) result.trajectory.push_back(state);
    result.final = std::move(state);
    result.steps_executed = steps;
    return result;
}

std::vector<BatchEntry> run_batch(const CompiledNetwork& network,
                                  const std::vector<Scenario>& scenarios, unsigned jobs) {
    std::vector<BatchEntry> entries(scenarios.size());
    auto run_one = [&](std::size_t i) {
        try {
            entries[i].result = simulate(network, scenarios[i]);
        } catch (const std::exception& e) {
            entries[i].error = e.what();
        }
    };
    if (jobs <= 1 || scenarios.size() <= 1) {
        for (std::size_t i = 0; i < scenarios.size(); ++i) run_one(i);
        return entries;
    }
    std::atomic<std::size_t> cursor{0};
    const unsigned workers = std::min<std::size_t>(jobs, scenarios.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = cursor.fetch_add(1); i < scenarios.size();
                 i = cursor.fetch_add(1))
                run_one(i);
        });
    }
    for (auto& t : pool) t.join();
    return entries;
}

double apply_event(const CompiledNetwork& network, StateVector& state, double tank_volume,
                   const Event& event) {
    if (!(tank_volume > 0.0)) throw ValidationError("tank volume must be > 0");
    if (const auto* addition = std::get_if<Addition>(&event.action)) {
        if (!(addition->solvent_volume > 0.0))
            throw ValidationError("addition solvent volume must be > 0");
        if (!(addition->amount >= 0.0)) throw ValidationError("addition amount must be >= 0");
        const std::uint32_t target = network.index_of(addition->species);
        const double total = tank_volume + addition->solvent_volume;
        const double scale = tank_volume / total;
        for (double& c : state.conc) c *= scale;
        state.conc[target] += addition->amount / total;
        return total;
    }
    const auto& dilution = std::get<Dilution>(event.action);
    if (!(dilution.added_water > 0.0)) throw ValidationError("added water must be > 0");
    const double total = tank_volume + dilution.added_water;
    const double scale = tank_volume / total;
    for (double& c : state.conc) c *= scale;
    return total;
}

}  // namespace rxnet
