#include "rxnet/observables.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "rxnet/errors.hpp"

namespace rxnet {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string num17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Water-derived species (H2O, H+, OH-) carry only H and O.
bool water_derived(const Species& species) {
    for (const auto& [element, count] : species.formula)
        if (element != "H" && element != "O") return false;
    return true;
}

}  // namespace

double ph(const StateVector& state, const CompiledNetwork& network) {
    if (!network.has_species("H+")) throw ValidationError("network has no H+ species");
    const double h = state.conc[network.index_of("H+")];
    if (!(h > 0.0)) throw ValidationError("pH undefined: [H+] must be > 0");
    return -std::log10(h);
}

double charge_balance(const StateVector& state, const CompiledNetwork& network) {
    if (state.conc.size() != network.species_count())
        throw ValidationError("state dimension does not match network");
    double sum = 0.0;
    for (std::size_t i = 0; i < state.conc.size(); ++i)
        sum += static_cast<double>(network.species_at(i).charge) * state.conc[i];
    return sum;
}

std::map<std::string, double> element_totals(const StateVector& state,
                                             const CompiledNetwork& network) {
    if (state.conc.size() != network.species_count())
        throw ValidationError("state dimension does not match network");
    std::map<std::string, double> totals;
    for (std::size_t i = 0; i < state.conc.size(); ++i) {
        const Species& species = network.species_at(i);
        if (species.formula.empty())
            throw ValidationError("species " + species.name + " has no formula");
        for (const auto& [element, count] : species.formula)
            totals[element] += count * state.conc[i];
    }
    return totals;
}

double tds(const StateVector& state, const CompiledNetwork& network) {
    if (state.conc.size() != network.species_count())
        throw ValidationError("state dimension does not match network");
    double total = 0.0;
    for (std::size_t i = 0; i < state.conc.size(); ++i) {
        const Species& species = network.species_at(i);
        if (species.phase != Phase::Aqueous || water_derived(species)) continue;
        if (!species.molar_mass)
            throw ValidationError("species " + species.name +
                                  " needs molar_mass for the TDS report");
        total += state.conc[i] * *species.molar_mass * 1000.0;
    }
    return total;
}

Report build_report(const SimulationResult& result, const CompiledNetwork& network) {
    Report report;
    report.converged = result.converged;
    report.steps = result.steps_executed;
    report.time_s = result.final.time;
    report.diagnostics = result.diagnostics;
    for (std::size_t i = 0; i < network.species_count(); ++i) {
        const double c = result.final.conc[i];
        report.concentrations.push_back({network.species_name(i), c, c * 1000.0});
        if (network.species_at(i).phase == Phase::Solid && c > 0.0)
            report.sediments.push_back({network.species_name(i), c, c * 1000.0});
    }
    try {
        report.ph = ph(result.final, network);
    } catch (const ValidationError&) {
    }
    try {
        report.tds_mg_per_l = tds(result.final, network);
    } catch (const ValidationError&) {
    }
    report.net_charge = charge_balance(result.final, network);
    report.element_totals = element_totals(result.final, network);
    return report;
}

std::string render_report(const Report& report) {
    std::ostringstream out;
    out << "converged: " << (report.converged ? "true" : "false") << '\n';
    out << "steps: " << report.steps << '\n';
    out << "time_s: " << num(report.time_s) << '\n';
    if (report.ph) out << "ph: " << num(*report.ph) << '\n';
    if (report.tds_mg_per_l) out << "tds_mg_per_L: " << num(*report.tds_mg_per_l) << '\n';
    out << "net_charge_mol_per_L: " << num(report.net_charge) << '\n';
    out << "elements:" << '\n';
    for (const auto& [element, total] : report.element_totals)
        out << "  " << element << ": " << num(total) << '\n';
    out << "species:" << '\n';
    for (const auto& reading : report.concentrations)
        out << "  " << reading.name << ": " << num(reading.mmol_per_l) << " mmol/L ("
            << num(reading.mol_per_l) << " mol/L)" << '\n';
    if (!report.sediments.empty()) {
        out << "sediments:" << '\n';
        for (const auto& reading : report.sediments)
            out << "  " << reading.name << ": " << num(reading.mmol_per_l) << " mmol/L ("
                << num(reading.mol_per_l) << " mol/L)" << '\n';
    }
    for (const auto& diag : report.diagnostics) out << "diagnostic: " << diag << '\n';
    return out.str();
}

std::string trajectory_csv(const std::vector<StateVector>& trajectory,
                           const CompiledNetwork& network) {
    std::ostringstream out;
    out << "time";
    for (std::size_t i = 0; i < network.species_count(); ++i)
        out << ',' << network.species_name(i);
    out << '\n';
    for (const auto& state : trajectory) {
        out << num17(state.time);
        for (double c : state.conc) out << ',' << num17(c);
        out << '\n';
    }
    return out.str();
}

}  // namespace rxnet
