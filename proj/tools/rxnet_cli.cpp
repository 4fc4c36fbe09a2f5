// Command-line front end: simulate, inverse, validate, golden, topology.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rxnet/assets.hpp"
#include "rxnet/engine.hpp"
#include "rxnet/errors.hpp"
#include "rxnet/inverse.hpp"
#include "rxnet/kinetics.hpp"
#include "rxnet/observables.hpp"
#include "rxnet/parse.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kParseError = 2;
constexpr int kNumericError = 3;
constexpr int kGoldenMismatch = 4;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return bool(out);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct LoadedModel {
    rxnet::ModelDefinition model;
    rxnet::CompiledNetwork network;
};

// Reads, parses and compiles a model file; on failure prints a diagnostic
// and stores the exit code.
std::optional<LoadedModel> load_model(const std::string& path, int& code) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read model file " << path << "\n";
        code = kUsageError;
        return std::nullopt;
    }
    try {
        LoadedModel loaded;
        loaded.model = rxnet::parse_model(*text);
        loaded.network = rxnet::compile_network(loaded.model);
        return loaded;
    } catch (const rxnet::Error& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        code = kParseError;
        return std::nullopt;
    }
}

struct SimulateArgs {
    std::string model_path;
    std::string scenario_path;
    std::string out_path;
    std::optional<double> dt;
    std::optional<std::uint64_t> max_steps;
    std::optional<double> tolerance;
    std::optional<std::uint64_t> sample_every;
    bool fixed_steps = false;
};

void warn_if_coarse_dt(double dt) {
    if (dt >= 1e-6)
        std::cerr << "warning: time step " << fmt(dt)
                  << " s is coarse; low-concentration species can converge to wrong values."
                     " Use a smaller dt (the bundled scenarios use 1e-8 s).\n";
}

int run_simulate(const SimulateArgs& args) {
    int code = kOk;
    auto loaded = load_model(args.model_path, code);
    if (!loaded) return code;

    auto scenario_text = read_file(args.scenario_path);
    if (!scenario_text) {
        std::cerr << "error: cannot read scenario file " << args.scenario_path << "\n";
        return kUsageError;
    }
    rxnet::Scenario scenario;
    try {
        scenario = rxnet::parse_scenario(*scenario_text);
    } catch (const rxnet::Error& e) {
        std::cerr << "error: " << args.scenario_path << ": " << e.what() << "\n";
        return kParseError;
    }
    if (args.dt) scenario.dt = *args.dt;
    if (args.max_steps) scenario.max_steps = *args.max_steps;
    if (args.tolerance) scenario.tolerance = *args.tolerance;
    if (args.sample_every) scenario.sample_every = *args.sample_every;
    scenario.fixed_steps = args.fixed_steps;

    warn_if_coarse_dt(scenario.dt);

    rxnet::SimulationResult result;
    try {
        result = rxnet::simulate(loaded->network, scenario);
    } catch (const rxnet::SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericError;
    } catch (const rxnet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }

    if (!args.out_path.empty()) {
        if (!write_file(args.out_path,
                        rxnet::trajectory_csv(result.trajectory, loaded->network))) {
            std::cerr << "error: cannot write " << args.out_path << "\n";
            return kUsageError;
        }
    }
    std::cout << rxnet::render_report(rxnet::build_report(result, loaded->network));
    return kOk;
}

struct InverseArgs {
    std::string model_path;
    std::string target_path;
    std::string mode = "stoichiometric";
    double tolerance = 1e-9;
    double dt = 1e-8;
    std::uint64_t horizon = 10'000'000;
    double seed_floor = 1e-12;
};

void print_plan(const rxnet::DosingPlan& plan) {
    std::cout << "feasible: " << (plan.feasible ? "true" : "false") << '\n';
    if (plan.sensitive) std::cout << "sensitive: true\n";
    std::cout << "amounts:" << '\n';
    for (const auto& [name, value] : plan.amounts)
        std::cout << "  " << name << ": " << fmt(value * 1000.0) << " mmol/L\n";
    std::cout << "residual:" << '\n';
    for (const auto& [name, value] : plan.residual)
        std::cout << "  " << name << ": " << fmt(value * 1000.0) << " mmol/L\n";
    for (const auto& note : plan.notes) std::cout << "note: " << note << '\n';
}

int run_inverse(const InverseArgs& args) {
    int code = kOk;
    auto loaded = load_model(args.model_path, code);
    if (!loaded) return code;

    auto target_text = read_file(args.target_path);
    if (!target_text) {
        std::cerr << "error: cannot read target file " << args.target_path << "\n";
        return kUsageError;
    }
    try {
        auto target = rxnet::parse_target(*target_text);
        auto inputs = rxnet::default_input_species(loaded->network);
        rxnet::DosingPlan plan;
        if (args.mode == "stoichiometric") {
            plan = rxnet::invert_stoichiometric(loaded->network, inputs, target, args.tolerance);
        } else {
            rxnet::StateVector state;
            state.conc.assign(loaded->network.species_count(), 0.0);
            for (const auto& [name, conc] : target)
                state.conc[loaded->network.index_of(name)] = conc;
            plan = rxnet::invert_by_reverse_simulation(loaded->network, inputs, state, args.dt,
                                                       args.horizon, args.seed_floor);
        }
        print_plan(plan);
        return (plan.feasible && !plan.sensitive) ? kOk : kNumericError;
    } catch (const rxnet::ParseError& e) {
        std::cerr << "error: " << args.target_path << ": " << e.what() << "\n";
        return kParseError;
    } catch (const rxnet::SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericError;
    } catch (const rxnet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
}

int run_validate(const std::string& model_path) {
    int code = kOk;
    auto loaded = load_model(model_path, code);
    if (!loaded) return code;

    const auto& model = loaded->model;
    if (model.species.empty() && model.reactions.empty()) {
        std::cout << "model is empty (0 species, 0 reactions)\n";
        return kOk;
    }
    std::cout << "species: " << model.species.size() << '\n';
    std::cout << "reactions: " << model.reactions.size() << '\n';
    for (const auto& reaction : model.reactions) {
        auto report = rxnet::check_rate_consistency(reaction);
        if (report.irreversible)
            std::cout << reaction.id << ": irreversible (kb = 0)\n";
        else
            std::cout << reaction.id << ": implied K = " << fmt(report.implied_K) << '\n';
    }

    // For the bundled model, cross-check the coefficient pairs against the
    // recorded literature constants.
    try {
        if (model == rxnet::assets::load_reference_model()) {
            for (const auto& ref : rxnet::assets::reference_constants()) {
                const rxnet::Reaction* reaction = model.find_reaction(ref.reaction_id);
                if (!reaction || reaction->rate.irreversible()) continue;
                auto report = rxnet::check_rate_consistency(*reaction, ref.value);
                if (report.mismatch)
                    std::cout << "warning: " << ref.reaction_id << " implied K "
                              << fmt(report.implied_K) << " differs from literature "
                              << rxnet::to_string(ref.kind) << " " << fmt(ref.value) << " ("
                              << fmt(report.relative_error * 100.0) << "%)\n";
            }
        }
    } catch (const rxnet::AssetError&) {
        // Reference assets unavailable; structural validation already passed.
    }
    std::cout << "model ok\n";
    return kOk;
}

struct GoldenArgs {
    unsigned jobs = std::thread::hardware_concurrency();
    std::string goldens_path;
};

int run_golden(const GoldenArgs& args) {
    rxnet::ModelDefinition model;
    rxnet::CompiledNetwork network;
    std::vector<rxnet::Scenario> scenarios;
    std::vector<rxnet::assets::GoldenCase> cases;
    try {
        model = rxnet::assets::load_reference_model();
        network = rxnet::compile_network(model);
        scenarios = rxnet::assets::reference_scenarios();
        cases = rxnet::assets::golden_cases();
    } catch (const rxnet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    if (!args.goldens_path.empty()) {
        auto text = read_file(args.goldens_path);
        if (!text) {
            std::cerr << "error: cannot read goldens file " << args.goldens_path << "\n";
            return kUsageError;
        }
        try {
            auto replacement = rxnet::assets::parse_goldens_csv(*text);
            for (auto& entry : replacement) {
                for (const auto& bundled : cases)
                    if (bundled.step == entry.step) entry.inputs_mmol = bundled.inputs_mmol;
            }
            cases = std::move(replacement);
        } catch (const rxnet::Error& e) {
            std::cerr << "error: " << args.goldens_path << ": " << e.what() << "\n";
            return kParseError;
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto results = rxnet::run_batch(network, scenarios, args.jobs == 0 ? 1 : args.jobs);
    const auto t1 = std::chrono::steady_clock::now();

    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].result) {
            std::cerr << "error: step " << (i + 1) << ": " << results[i].error << "\n";
            return kNumericError;
        }
    }

    // Full-dissociation prediction of each case's inputs.
    auto theoretical = [&](const rxnet::assets::GoldenCase& golden,
                           const std::string& ion) -> double {
        double total = 0.0;
        for (const auto& [input, mmol] : golden.inputs_mmol) {
            const std::uint32_t input_idx = network.index_of(input);
            for (const auto& reaction : network.reactions()) {
                if (reaction.kb != 0.0 || reaction.reactants.size() != 1 ||
                    reaction.reactants[0].species != input_idx)
                    continue;
                for (const auto& product : reaction.products)
                    if (network.species_name(product.species) == ion)
                        total += mmol * product.stoichiometry /
                                 reaction.reactants[0].stoichiometry;
                break;
            }
        }
        return total;
    };

    // Species rows in first-appearance order.
    std::vector<std::string> ions;
    for (const auto& golden : cases)
        for (const auto& expectation : golden.expected)
            if (std::find(ions.begin(), ions.end(), expectation.species) == ions.end())
                ions.push_back(expectation.species);

    std::ostringstream table;
    table << "row";
    for (const auto& golden : cases) table << '\t' << golden.step;
    table << '\n';
    std::vector<std::string> failures;
    for (const auto& ion : ions) {
        table << ion << " theoretical";
        for (const auto& golden : cases) table << '\t' << fmt(theoretical(golden, ion));
        table << '\n';
        table << ion << " predicted";
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& final_state = results[i].result->final;
            table << '\t' << fmt(final_state.conc[network.index_of(ion)] * 1000.0);
        }
        table << '\n';
        table << ion << " expected";
        for (const auto& golden : cases) {
            const rxnet::assets::GoldenExpectation* found = nullptr;
            for (const auto& expectation : golden.expected)
                if (expectation.species == ion) found = &expectation;
            table << '\t' << (found ? fmt(found->expected_mmol_per_l) : "-");
        }
        table << '\n';
    }
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& final_state = results[i].result->final;
        for (const auto& expectation : cases[i].expected) {
            const double predicted =
                final_state.conc[network.index_of(expectation.species)] * 1000.0;
            const double rel = std::abs(predicted - expectation.expected_mmol_per_l) /
                               std::abs(expectation.expected_mmol_per_l);
            if (!(rel <= expectation.tolerance)) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "step %d %s: predicted %.9g expected %.9g "
                                               "(relative error %.3g, tolerance %.3g)",
                              cases[i].step, expectation.species.c_str(), predicted,
                              expectation.expected_mmol_per_l, rel, expectation.tolerance);
                failures.push_back(buf);
            }
        }
    }

    std::cout << table.str();
    if (failures.empty()) {
        std::cout << "golden: " << cases.size() << "/" << cases.size() << " cases pass\n";
    } else {
        for (const auto& failure : failures) std::cout << "MISMATCH " << failure << '\n';
        std::cout << "golden: " << (cases.size() - 0) << " cases, " << failures.size()
                  << " failing cells\n";
    }
    const double seconds = std::chrono::duration<double>(t1 - t0).count();
    std::cerr << "wall time: " << fmt(seconds) << " s (" << args.jobs << " jobs)\n";
    return failures.empty() ? kOk : kGoldenMismatch;
}

int run_topology(const std::string& model_path, const std::string& out_path) {
    int code = kOk;
    auto loaded = load_model(model_path, code);
    if (!loaded) return code;
    std::ostringstream out;
    out << "from,to,reaction,role,stoichiometry,reversible\n";
    for (const auto& edge : rxnet::export_topology(loaded->network)) {
        const bool reactant = edge.role == rxnet::TopologyEdge::Role::Reactant;
        out << (reactant ? edge.species : edge.reaction) << ','
            << (reactant ? edge.reaction : edge.species) << ',' << edge.reaction << ','
            << (reactant ? "reactant" : "product") << ',' << edge.stoichiometry << ','
            << (edge.reversible ? "true" : "false") << '\n';
    }
    if (!out_path.empty()) {
        if (!write_file(out_path, out.str())) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kUsageError;
        }
    } else {
        std::cout << out.str();
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rxnet - mass-action reaction network simulator"};
    app.require_subcommand(1);

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write the report");
    simulate->add_option("--model", simulate_args.model_path, "Model file")->required();
    simulate->add_option("--scenario", simulate_args.scenario_path, "Scenario file")->required();
    simulate->add_option("--out", simulate_args.out_path, "Trajectory CSV output path");
    simulate->add_option("--dt", simulate_args.dt, "Override time step (seconds)");
    simulate->add_option("--max-steps", simulate_args.max_steps, "Override step limit");
    simulate->add_option("--tolerance", simulate_args.tolerance,
                         "Override convergence tolerance");
    simulate->add_option("--sample-every", simulate_args.sample_every,
                         "Override trajectory decimation");
    simulate->add_flag("--fixed-steps", simulate_args.fixed_steps,
                       "Run exactly max-steps updates without the convergence check");

    InverseArgs inverse_args;
    auto* inverse = app.add_subcommand("inverse", "Compute salt inputs for a target ion profile");
    inverse->add_option("--model", inverse_args.model_path, "Model file")->required();
    inverse->add_option("--target", inverse_args.target_path, "Target ion file")->required();
    inverse->add_option("--mode", inverse_args.mode, "stoichiometric | reverse-sim")
        ->check(CLI::IsMember({"stoichiometric", "reverse-sim"}))
        ->capture_default_str();
    inverse->add_option("--tolerance", inverse_args.tolerance, "Feasibility tolerance (mol/L)")
        ->capture_default_str();
    inverse->add_option("--dt", inverse_args.dt, "Reverse-simulation time step")
        ->capture_default_str();
    inverse->add_option("--max-steps", inverse_args.horizon, "Reverse-simulation horizon")
        ->capture_default_str();
    inverse->add_option("--seed-floor", inverse_args.seed_floor,
                        "Seed for exactly-zero input species in reverse mode")
        ->capture_default_str();

    std::string validate_model_path;
    auto* validate = app.add_subcommand("validate", "Check a model file and report implied K");
    validate->add_option("--model", validate_model_path, "Model file")->required();

    GoldenArgs golden_args;
    auto* golden = app.add_subcommand("golden", "Reproduce the bundled reference predictions");
    golden->add_option("--jobs", golden_args.jobs, "Parallel scenarios")->capture_default_str();
    golden->add_option("--goldens", golden_args.goldens_path,
                       "Override the bundled expectations CSV");

    std::string topology_model_path, topology_out_path;
    auto* topology = app.add_subcommand("topology", "Export the species/reaction edge list");
    topology->add_option("--model", topology_model_path, "Model file")->required();
    topology->add_option("--out", topology_out_path, "Edge list CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    if (simulate->parsed()) return run_simulate(simulate_args);
    if (inverse->parsed()) return run_inverse(inverse_args);
    if (validate->parsed()) return run_validate(validate_model_path);
    if (golden->parsed()) return run_golden(golden_args);
    if (topology->parsed()) return run_topology(topology_model_path, topology_out_path);
    return kUsageError;
}
