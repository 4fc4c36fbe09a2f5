#pragma once

#include <string>
#include <vector>

namespace rxnet {

/// Rate specification. Either the coefficient pair is given verbatim, or it
/// is derived from an equilibrium constant K and a correction coefficient c
/// as kf = K*c, kb = c. kb == 0 marks an irreversible reaction.
struct RateSpec {
    enum class Form { Explicit, Derived };

    Form form = Form::Explicit;
    double kf = 0.0;
    double kb = 0.0;
    // Populated for Form::Derived only, kept for faithful serialization.
    double equilibrium_constant = 0.0;
    double correction = 0.0;

    static RateSpec explicit_pair(double kf, double kb);
    static RateSpec derived(double equilibrium_constant, double correction);

    bool irreversible() const { return kb == 0.0; }
    bool operator==(const RateSpec&) const = default;
};

struct Participant {
    std::string species;
    int stoichiometry = 1;

    bool operator==(const Participant&) const = default;
};

struct Reaction {
    std::string id;
    std::vector<Participant> reactants;
    std::vector<Participant> products;
    RateSpec rate;
    /// Suppress the stoichiometric multiplier on backward terms, matching the
    /// convention of some published equation sets.
    bool paper_compat = false;

    bool operator==(const Reaction&) const = default;
};

}  // namespace rxnet
