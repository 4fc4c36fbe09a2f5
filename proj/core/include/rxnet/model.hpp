#pragma once

#include <string>
#include <vector>

#include "rxnet/reaction.hpp"
#include "rxnet/species.hpp"

namespace rxnet {

/// A parsed reaction model: the full set of species and reactions.
struct ModelDefinition {
    std::vector<Species> species;
    std::vector<Reaction> reactions;

    const Species* find_species(const std::string& name) const;
    const Reaction* find_reaction(const std::string& id) const;

    bool operator==(const ModelDefinition&) const = default;
};

/// Checks every model invariant: unique names, declared references, charge
/// and element balance, rate constant ranges. Throws ValidationError on the
/// first violation. parse_model() runs this before returning.
void validate_model(const ModelDefinition& model);

/// Canonical text form. parse_model(serialize_model(m)) == m for any valid m.
std::string serialize_model(const ModelDefinition& model);

}  // namespace rxnet
