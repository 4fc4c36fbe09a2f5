#include "rxnet/errors.hpp"

#include "rxnet/species.hpp"

namespace rxnet {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Syntax: return "syntax";
        case ParseErrorKind::DuplicateSpecies: return "duplicate-species";
        case ParseErrorKind::DuplicateReactionId: return "duplicate-reaction";
        case ParseErrorKind::UndeclaredSpecies: return "undeclared-species";
        case ParseErrorKind::ChargeUnbalanced: return "charge-unbalanced";
        case ParseErrorKind::ElementUnbalanced: return "element-unbalanced";
        case ParseErrorKind::BadRate: return "bad-rate";
    }
    return "unknown";
}

std::string ParseError::format(ParseErrorKind kind, int line, int column,
                               const std::string& msg) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg +
           " [" + to_string(kind) + "]";
}

const char* to_string(Phase phase) {
    switch (phase) {
        case Phase::Aqueous: return "aqueous";
        case Phase::Solid: return "solid";
        case Phase::Liquid: return "liquid";
    }
    return "aqueous";
}

std::optional<Phase> phase_from_string(const std::string& text) {
    if (text == "aqueous") return Phase::Aqueous;
    if (text == "solid") return Phase::Solid;
    if (text == "liquid") return Phase::Liquid;
    return std::nullopt;
}

}  // namespace rxnet
