#pragma once

// Shared invariant checks used by both parse_model (with line positions) and
// validate_model (without). Not installed.

#include <optional>
#include <string>
#include <unordered_map>

#include "rxnet/errors.hpp"
#include "rxnet/model.hpp"

namespace rxnet::detail {

struct Issue {
    ParseErrorKind kind;
    std::string message;
};

using SpeciesLookup = std::unordered_map<std::string, const Species*>;

SpeciesLookup make_lookup(const ModelDefinition& model);

/// Formula / molar-mass invariants of a single species.
std::optional<Issue> species_issue(const Species& species);

/// Arity, declared references, rate ranges, charge and element balance.
std::optional<Issue> reaction_issue(const SpeciesLookup& lookup, const Reaction& reaction);

}  // namespace rxnet::detail
