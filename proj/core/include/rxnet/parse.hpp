#pragma once

#include <string_view>

#include "rxnet/model.hpp"

namespace rxnet {

/// Parses a reaction model file.
///
/// Line-oriented grammar, `#` starts a comment, one statement per line:
///
///   species <name> charge=<int> [phase=<aqueous|solid|liquid>]
///           formula=<Elem>[<count>]... [molar_mass=<float>]
///   reaction <id>: [<n>] <name> [+ [<n>] <name>]... (-> | <->)
///           [<n>] <name> [+ [<n>] <name>]...
///           ( kf=<float> kb=<float> | K=<float> c=<float> ) [paper_compat]
///
/// Stoichiometry defaults to 1, phase defaults to aqueous. Species names may
/// contain letters, digits, `+`, `-`, `(`, `)` and must contain at least one
/// letter. Throws ParseError with line/column on rejection.
ModelDefinition parse_model(std::string_view text);

}  // namespace rxnet
