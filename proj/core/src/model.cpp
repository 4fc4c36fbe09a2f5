#include "rxnet/model.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "model_checks.hpp"
#include "rxnet/errors.hpp"

namespace rxnet {

namespace {

std::string precise(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void append_side(std::ostringstream& out, const std::vector<Participant>& side) {
    for (std::size_t i = 0; i < side.size(); ++i) {
        if (i > 0) out << " + ";
        out << side[i].stoichiometry << ' ' << side[i].species;
    }
}

}  // namespace

RateSpec RateSpec::explicit_pair(double kf, double kb) {
    RateSpec r;
    r.form = Form::Explicit;
    r.kf = kf;
    r.kb = kb;
    return r;
}

RateSpec RateSpec::derived(double equilibrium_constant, double correction) {
    RateSpec r;
    r.form = Form::Derived;
    r.equilibrium_constant = equilibrium_constant;
    r.correction = correction;
    r.kf = equilibrium_constant * correction;
    r.kb = correction;
    return r;
}

const Species* ModelDefinition::find_species(const std::string& name) const {
    for (const auto& s : species)
        if (s.name == name) return &s;
    return nullptr;
}

const Reaction* ModelDefinition::find_reaction(const std::string& id) const {
    for (const auto& r : reactions)
        if (r.id == id) return &r;
    return nullptr;
}

namespace detail {

SpeciesLookup make_lookup(const ModelDefinition& model) {
    SpeciesLookup lookup;
    for (const auto& s : model.species) lookup.emplace(s.name, &s);
    return lookup;
}

std::optional<Issue> species_issue(const Species& species) {
    if (species.name.empty())
        return Issue{ParseErrorKind::Syntax, "species with empty name"};
    if (species.formula.empty())
        return Issue{ParseErrorKind::Syntax, "species " + species.name + " has an empty formula"};
    for (const auto& [element, count] : species.formula) {
        if (count < 1)
            return Issue{ParseErrorKind::Syntax, "species " + species.name + ": element " +
                                                     element + " has count < 1"};
    }
    if (species.molar_mass && !(*species.molar_mass > 0.0 && std::isfinite(*species.molar_mass)))
        return Issue{ParseErrorKind::Syntax,
                     "species " + species.name + ": molar_mass must be a positive number"};
    return std::nullopt;
}

std::optional<Issue> reaction_issue(const SpeciesLookup& lookup, const Reaction& reaction) {
    if (reaction.reactants.empty() || reaction.products.empty())
        return Issue{ParseErrorKind::Syntax, "reaction " + reaction.id +
                                                 " needs at least one reactant and one product"};

    const RateSpec& rate = reaction.rate;
    if (!(std::isfinite(rate.kf) && std::isfinite(rate.kb)) || rate.kf < 0.0 || rate.kb < 0.0)
        return Issue{ParseErrorKind::BadRate,
                     "reaction " + reaction.id + ": rate constants must be finite and >= 0"};
    if (rate.form == RateSpec::Form::Derived) {
        if (!(rate.equilibrium_constant > 0.0) || !std::isfinite(rate.equilibrium_constant))
            return Issue{ParseErrorKind::BadRate,
                         "reaction " + reaction.id + ": equilibrium constant K must be > 0"};
        if (!(rate.correction > 0.0) || rate.correction > 1000.0)
            return Issue{ParseErrorKind::BadRate, "reaction " + reaction.id +
                                                      ": correction coefficient c must be in "
                                                      "(0, 1000]"};
    }

    // Charge and element balance, weighted by stoichiometry.
    long charge = 0;
    std::map<std::string, long> elements;
    auto accumulate = [&](const std::vector<Participant>& side,
                          int sign) -> std::optional<Issue> {
        for (const auto& part : side) {
            if (part.stoichiometry < 1)
                return Issue{ParseErrorKind::Syntax, "reaction " + reaction.id + ": species " +
                                                         part.species +
                                                         " has stoichiometry < 1"};
            auto it = lookup.find(part.species);
            if (it == lookup.end())
                return Issue{ParseErrorKind::UndeclaredSpecies,
                             "reaction " + reaction.id + " references undeclared species " +
                                 part.species};
            charge += static_cast<long>(sign) * part.stoichiometry * it->second->charge;
            for (const auto& [element, count] : it->second->formula)
                elements[element] +=
                    static_cast<long>(sign) * part.stoichiometry * count;
        }
        return std::nullopt;
    };
    if (auto issue = accumulate(reaction.reactants, +1)) return issue;
    if (auto issue = accumulate(reaction.products, -1)) return issue;

    if (charge != 0)
        return Issue{ParseErrorKind::ChargeUnbalanced,
                     "reaction " + reaction.id + " is charge-unbalanced (reactants exceed "
                                                 "products by " +
                         std::to_string(charge) + " elementary charges)"};
    for (const auto& [element, diff] : elements) {
        if (diff != 0)
            return Issue{ParseErrorKind::ElementUnbalanced,
                         "reaction " + reaction.id + ": element " + element +
                             " is unbalanced (reactant minus product count = " +
                             std::to_string(diff) + ")"};
    }
    return std::nullopt;
}

}  // namespace detail

void validate_model(const ModelDefinition& model) {
    std::set<std::string> names;
    for (const auto& s : model.species) {
        if (!names.insert(s.name).second)
            throw ValidationError("duplicate species name " + s.name);
        if (auto issue = detail::species_issue(s)) throw ValidationError(issue->message);
    }
    auto lookup = detail::make_lookup(model);
    std::set<std::string> ids;
    for (const auto& r : model.reactions) {
        if (!ids.insert(r.id).second) throw ValidationError("duplicate reaction id " + r.id);
        if (auto issue = detail::reaction_issue(lookup, r)) throw ValidationError(issue->message);
    }
}

std::string serialize_model(const ModelDefinition& model) {
    std::ostringstream out;
    for (const auto& s : model.species) {
        out << "species " << s.name << " charge=" << s.charge << " phase=" << to_string(s.phase)
            << " formula=";
        for (const auto& [element, count] : s.formula) out << element << count;
        if (s.molar_mass) out << " molar_mass=" << precise(*s.molar_mass);
        out << '\n';
    }
    for (const auto& r : model.reactions) {
        out << "reaction " << r.id << ": ";
        append_side(out, r.reactants);
        out << (r.rate.irreversible() ? " -> " : " <-> ");
        append_side(out, r.products);
        if (r.rate.form == RateSpec::Form::Derived)
            out << " K=" << precise(r.rate.equilibrium_constant)
                << " c=" << precise(r.rate.correction);
        else
            out << " kf=" << precise(r.rate.kf) << " kb=" << precise(r.rate.kb);
        if (r.paper_compat) out << " paper_compat";
        out << '\n';
    }
    return out.str();
}

}  // namespace rxnet
