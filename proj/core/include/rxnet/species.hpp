#pragma once

#include <map>
#include <optional>
#include <string>

namespace rxnet {

enum class Phase { Aqueous, Solid, Liquid };

const char* to_string(Phase phase);
std::optional<Phase> phase_from_string(const std::string& text);

/// Elemental composition: element symbol -> atom count. Ordered map so that
/// iteration (serialization, element totals) is deterministic.
using Formula = std::map<std::string, int>;

/// One node of the reaction network.
struct Species {
    std::string name;
    int charge = 0;
    Phase phase = Phase::Aqueous;
    Formula formula;
    std::optional<double> molar_mass;  // g/mol, only needed for TDS

    bool operator==(const Species&) const = default;
};

}  // namespace rxnet
