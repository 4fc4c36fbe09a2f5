#pragma once

#include <optional>
#include <vector>

#include "rxnet/reaction.hpp"

namespace rxnet {

enum class ConstantKind { Kd, Ksp, Ka, Kw };

const char* to_string(ConstantKind kind);

struct EquilibriumConstant {
    double value;  // > 0
    ConstantKind kind;
};

enum class IonRole { Cation, Anion };

struct IonStoich {
    IonRole role;
    int count;  // >= 1
};

/// Solubility product of a salt dissolving into the given ions from its molar
/// solubility s (mol/L): Ksp = prod_ions (count*s)^count.
EquilibriumConstant ksp_from_solubility(const std::vector<IonStoich>& stoich, double solubility);

struct RatePair {
    double kf;
    double kb;
};

/// Expands an equilibrium constant into a coefficient pair kf = K*c, kb = c.
/// The correction coefficient c scales both directions, changing convergence
/// speed but not the equilibrium. Accepted range: 0 < c <= 1000.
RatePair rate_pair_from_K(const EquilibriumConstant& K, double correction);

/// Coefficient pair for an irreversible process: backward rate exactly 0.
RatePair irreversible_rate(double kf);

struct RateConsistency {
    bool irreversible;
    double implied_K;       // kf / kb, meaningful when !irreversible
    bool mismatch;          // declared K disagrees beyond tolerance
    double declared_K;      // the reference value checked against, if any
    double relative_error;  // |implied - declared| / declared, when checked
};

/// Reports the equilibrium constant implied by a reaction's coefficient pair.
/// When declared_K is given, flags a mismatch if kf/kb differs from it by
/// more than 1e-9 relative.
RateConsistency check_rate_consistency(const Reaction& reaction,
                                       std::optional<double> declared_K = std::nullopt);

}  // namespace rxnet
