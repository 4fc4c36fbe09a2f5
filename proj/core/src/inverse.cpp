#include "rxnet/inverse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>

#include "rxnet/engine.hpp"
#include "rxnet/errors.hpp"

namespace rxnet {

namespace {

// Solves the symmetric positive (semi-)definite system G z = h in place by
// Gaussian elimination with partial pivoting. Sizes here are tiny.
std::vector<double> solve_dense(std::vector<double> g, std::vector<double> h, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(g[r * n + k]) > std::abs(g[pivot * n + k])) pivot = r;
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(g[k * n + c], g[pivot * n + c]);
            std::swap(h[k], h[pivot]);
        }
        const double d = g[k * n + k];
        if (d == 0.0) throw ValidationError("singular stoichiometry system");
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = g[r * n + k] / d;
            if (factor == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) g[r * n + c] -= factor * g[k * n + c];
            h[r] -= factor * h[k];
        }
    }
    std::vector<double> z(n);
    for (std::size_t k = n; k-- > 0;) {
        double sum = h[k];
        for (std::size_t c = k + 1; c < n; ++c) sum -= g[k * n + c] * z[c];
        z[k] = sum / g[k * n + k];
    }
    return z;
}

const CompiledReaction* dissolution_reaction(const CompiledNetwork& network,
                                             std::uint32_t input) {
    for (const auto& r : network.reactions())
        if (r.kb == 0.0 && r.reactants.size() == 1 && r.reactants[0].species == input) return &r;
    return nullptr;
}

}  // namespace

std::vector<std::string> default_input_species(const CompiledNetwork& network) {
    std::vector<std::string> inputs;
    for (std::size_t i = 0; i < network.species_count(); ++i)
        if (dissolution_reaction(network, static_cast<std::uint32_t>(i)))
            inputs.push_back(network.species_name(i));
    return inputs;
}

std::vector<double> nnls(const std::vector<double>& a, std::size_t rows, std::size_t cols,
                         const std::vector<double>& b) {
    if (a.size() != rows * cols || b.size() != rows)
        throw ValidationError("nnls dimension mismatch");
    std::vector<double> x(cols, 0.0);
    if (cols == 0 || rows == 0) return x;

    std::vector<bool> passive(cols, false);
    std::vector<double> w(cols);
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    double bscale = 0.0;
    for (double v : b) bscale = std::max(bscale, std::abs(v));
    const double w_tol = 1e-12 * std::max(scale * bscale, 1e-300);

    auto compute_w = [&] {
        // w = A^T (b - A x)
        std::vector<double> residual(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            double ax = 0.0;
            for (std::size_t c = 0; c < cols; ++c) ax += a[r * cols + c] * x[c];
            residual[r] = b[r] - ax;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            double sum = 0.0;
            for (std::size_t r = 0; r < rows; ++r) sum += a[r * cols + c] * residual[r];
            w[c] = sum;
        }
    };

    for (std::size_t outer = 0; outer <= 3 * cols; ++outer) {
        compute_w();
        std::optional<std::size_t> enter;
        for (std::size_t c = 0; c < cols; ++c) {
            if (passive[c] || w[c] <= w_tol) continue;
            if (!enter || w[c] > w[*enter]) enter = c;  // ties keep the lowest index
        }
        if (!enter) break;
        passive[*enter] = true;

        for (std::size_t inner = 0; inner <= 2 * cols; ++inner) {
            std::vector<std::size_t> active;
            for (std::size_t c = 0; c < cols; ++c)
                if (passive[c]) active.push_back(c);
            const std::size_t n = active.size();
            // Normal equations restricted to the passive set.
            std::vector<double> gram(n * n, 0.0), rhs(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    double sum = 0.0;
                    for (std::size_t r = 0; r < rows; ++r)
                        sum += a[r * cols + active[i]] * a[r * cols + active[j]];
                    gram[i * n + j] = sum;
                }
                double sum = 0.0;
                for (std::size_t r = 0; r < rows; ++r) sum += a[r * cols + active[i]] * b[r];
                rhs[i] = sum;
            }
            std::vector<double> z = solve_dense(std::move(gram), std::move(rhs), n);

            bool all_positive = true;
            for (double v : z)
                if (!(v > 0.0)) all_positive = false;
            if (all_positive) {
                std::fill(x.begin(), x.end(), 0.0);
                for (std::size_t i = 0; i < n; ++i) x[active[i]] = z[i];
                break;
            }
            // Step back towards feasibility and drop the first variable that
            // reaches zero.
            double alpha = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (z[i] > 0.0) continue;
                const double xi = x[active[i]];
                const double candidate = xi / (xi - z[i]);
                alpha = std::min(alpha, candidate);
            }
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t c = active[i];
                x[c] += alpha * (z[i] - x[c]);
                if (z[i] <= 0.0 && x[c] <= 1e-15 * std::max(1.0, std::abs(z[i]))) {
                    x[c] = 0.0;
                    passive[c] = false;
                }
            }
        }
    }
    return x;
}

namespace {

struct StoichSystem {
    std::vector<std::string> ions;          // row labels, sorted
    std::vector<double> matrix;             // rows x cols, row-major
    std::vector<std::uint32_t> input_ids;   // species index per column
};

StoichSystem build_system(const CompiledNetwork& network, const std::vector<std::string>& inputs,
                          const std::set<std::string>& ion_names) {
    StoichSystem sys;
    sys.ions.assign(ion_names.begin(), ion_names.end());
    sys.matrix.assign(sys.ions.size() * inputs.size(), 0.0);
    for (std::size_t c = 0; c < inputs.size(); ++c) {
        const std::uint32_t idx = network.index_of(inputs[c]);
        const CompiledReaction* reaction = dissolution_reaction(network, idx);
        if (!reaction)
            throw ValidationError("input species " + inputs[c] +
                                  " has no irreversible dissolution reaction");
        sys.input_ids.push_back(idx);
        const double per_mol = 1.0 / reaction->reactants[0].stoichiometry;
        for (const auto& product : reaction->products) {
            const std::string& name = network.species_name(product.species);
            auto it = std::lower_bound(sys.ions.begin(), sys.ions.end(), name);
            if (it == sys.ions.end() || *it != name) continue;
            const std::size_t row = static_cast<std::size_t>(it - sys.ions.begin());
            sys.matrix[row * inputs.size() + c] += product.stoichiometry * per_mol;
        }
    }
    return sys;
}

}  // namespace

DosingPlan invert_stoichiometric(const CompiledNetwork& network,
                                 const std::vector<std::string>& inputs,
                                 const std::map<std::string, double>& target, double tolerance) {
    std::set<std::string> ion_names;
    for (const auto& [name, conc] : target) {
        if (!network.has_species(name))
            throw ValidationError("target references unknown ion " + name);
        if (!(conc >= 0.0) || !std::isfinite(conc))
            throw ValidationError("target concentration of " + name + " must be >= 0");
        ion_names.insert(name);
    }
    StoichSystem sys = build_system(network, inputs, ion_names);

    std::vector<double> b(sys.ions.size());
    for (std::size_t r = 0; r < sys.ions.size(); ++r) b[r] = target.at(sys.ions[r]);
    std::vector<double> x = nnls(sys.matrix, sys.ions.size(), inputs.size(), b);

    DosingPlan plan;
    for (std::size_t c = 0; c < inputs.size(); ++c) plan.amounts[inputs[c]] = x[c];
    double worst = 0.0;
    for (std::size_t r = 0; r < sys.ions.size(); ++r) {
        double achieved = 0.0;
        for (std::size_t c = 0; c < inputs.size(); ++c)
            achieved += sys.matrix[r * inputs.size() + c] * x[c];
        plan.residual[sys.ions[r]] = achieved - b[r];
        worst = std::max(worst, std::abs(achieved - b[r]));
    }
    plan.feasible = worst <= tolerance;
    return plan;
}

namespace {

std::string format_amounts(const std::map<std::string, double>& amounts) {
    std::string out;
    for (const auto& [name, value] : amounts) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s%s=%.9g", out.empty() ? "" : ", ", name.c_str(), value);
        out += buf;
    }
    return out;
}

struct ReverseOutcome {
    std::map<std::string, double> amounts;
    std::map<std::string, double> residual;
    bool depleted = false;
    std::string note;
};

ReverseOutcome reverse_once(const CompiledNetwork& network, const StoichSystem& sys,
                            const StateVector& final_state, double dt, std::uint64_t horizon,
                            double seed_floor, double ion_tolerance) {
    ReverseOutcome outcome;
    StateVector state = final_state;
    for (std::uint32_t idx : sys.input_ids)
        if (state.conc[idx] == 0.0) state.conc[idx] = seed_floor;

    std::vector<std::uint32_t> ion_ids;
    for (const auto& name : sys.ions) ion_ids.push_back(network.index_of(name));
    auto ion_sum = [&](const StateVector& s) {
        double sum = 0.0;
        for (std::uint32_t idx : ion_ids) sum += std::max(s.conc[idx], 0.0);
        return sum;
    };

    const double start_sum = ion_sum(state);
    if (start_sum == 0.0) {
        outcome.depleted = true;
    } else {
        StateVector best = state;
        double best_sum = start_sum;
        std::vector<double> grad(network.species_count());
        std::uint64_t n = 0;
        std::string stop_note;
        while (n < horizon) {
            network.eval_into(state.conc, grad);
            bool diverged = false;
            for (std::size_t i = 0; i < state.conc.size(); ++i) {
                const double v = state.conc[i] - grad[i] * dt;
                if (!(std::abs(v) <= kDivergenceLimit)) {
                    stop_note = "reverse integration diverged at step " + std::to_string(n + 1) +
                                " ([" + network.species_name(i) + "])";
                    diverged = true;
                    break;
                }
                state.conc[i] = v;
            }
            if (diverged) break;
            ++n;
            const double sum = ion_sum(state);
            if (sum < best_sum) {
                best_sum = sum;
                best = state;
                best.time = final_state.time - static_cast<double>(n) * dt;
            }
            if (sum <= ion_tolerance * start_sum) {
                outcome.depleted = true;
                break;
            }
        }
        if (!outcome.depleted && stop_note.empty())
            stop_note = "horizon of " + std::to_string(horizon) +
                        " steps exhausted before ion depletion";
        outcome.note = stop_note;
        state = best;
    }

    for (std::size_t c = 0; c < sys.input_ids.size(); ++c)
        outcome.amounts[network.species_name(sys.input_ids[c])] =
            std::max(state.conc[sys.input_ids[c]], 0.0);
    for (std::uint32_t idx : ion_ids)
        outcome.residual[network.species_name(idx)] = state.conc[idx];
    return outcome;
}

}  // namespace

DosingPlan invert_by_reverse_simulation(const CompiledNetwork& network,
                                        const std::vector<std::string>& inputs,
                                        const StateVector& final_state, double dt,
                                        std::uint64_t horizon, double seed_floor,
                                        double ion_tolerance) {
    if (!(seed_floor > 0.0)) throw ValidationError("seed floor must be > 0");
    if (final_state.conc.size() != network.species_count())
        throw ValidationError("state dimension does not match network");

    // Ions of interest: everything produced by the inputs' dissolutions.
    std::set<std::string> ion_names;
    for (const auto& input : inputs) {
        const CompiledReaction* reaction =
            dissolution_reaction(network, network.index_of(input));
        if (!reaction)
            throw ValidationError("input species " + input +
                                  " has no irreversible dissolution reaction");
        for (const auto& product : reaction->products)
            ion_names.insert(network.species_name(product.species));
    }
    StoichSystem sys = build_system(network, inputs, ion_names);

    ReverseOutcome primary =
        reverse_once(network, sys, final_state, dt, horizon, seed_floor, ion_tolerance);
    ReverseOutcome check =
        reverse_once(network, sys, final_state, dt, horizon, seed_floor / 10.0, ion_tolerance);

    DosingPlan plan;
    plan.amounts = primary.amounts;
    plan.residual = primary.residual;
    plan.feasible = primary.depleted;
    if (!primary.note.empty()) plan.notes.push_back(primary.note);

    for (const auto& [name, value] : primary.amounts) {
        const double other = check.amounts.at(name);
        const double scale = std::max({std::abs(value), std::abs(other), 1e-300});
        if (std::abs(value - other) / scale > 0.01) {
            plan.sensitive = true;
            break;
        }
    }
    if (plan.sensitive) {
        plan.notes.push_back(
            "result is sensitive to the seed floor (changed by more than 1% under seed/10)");
        // Attach the stoichiometric solution of the same ion profile for
        // comparison.
        std::map<std::string, double> target;
        for (const auto& name : sys.ions)
            target[name] = std::max(final_state.conc[network.index_of(name)], 0.0);
        DosingPlan reference = invert_stoichiometric(network, inputs, target, 1e-9);
        plan.notes.push_back("stoichiometric inversion of the same profile: " +
                             format_amounts(reference.amounts));
    }
    return plan;
}

std::map<std::string, double> parse_target(std::string_view text) {
    std::map<std::string, double> target;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        // Tokenize on whitespace.
        std::vector<std::pair<std::string, int>> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            tokens.emplace_back(std::string(line.substr(start, i - start)),
                                static_cast<int>(start + 1));
        }
        if (!tokens.empty()) {
            if (tokens[0].first != "target" || tokens.size() != 3)
                throw ParseError(ParseErrorKind::Syntax, line_no, tokens[0].second,
                                 "expected: target <ion> <mmol/L>");
            double value = 0.0;
            const std::string& vtext = tokens[2].first;
            auto [ptr, ec] = std::from_chars(vtext.data(), vtext.data() + vtext.size(), value);
            if (ec != std::errc() || ptr != vtext.data() + vtext.size() || !(value >= 0.0))
                throw ParseError(ParseErrorKind::Syntax, line_no, tokens[2].second,
                                 "target concentration must be a number >= 0");
            if (target.count(tokens[1].first))
                throw ParseError(ParseErrorKind::Syntax, line_no, tokens[1].second,
                                 "duplicate target for " + tokens[1].first);
            target[tokens[1].first] = value * 1e-3;  // mmol/L -> mol/L
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return target;
}

}  // namespace rxnet
