#include "rxnet/kinetics.hpp"

#include <cmath>
#include <string>

#include "rxnet/errors.hpp"

namespace rxnet {

const char* to_string(ConstantKind kind) {
    switch (kind) {
        case ConstantKind::Kd: return "Kd";
        case ConstantKind::Ksp: return "Ksp";
        case ConstantKind::Ka: return "Ka";
        case ConstantKind::Kw: return "Kw";
    }
    return "K";
}

EquilibriumConstant ksp_from_solubility(const std::vector<IonStoich>& stoich, double solubility) {
    if (!(solubility > 0.0) || !std::isfinite(solubility))
        throw ValidationError("solubility must be > 0");
    if (stoich.empty()) throw ValidationError("ion stoichiometry must not be empty");
    double value = 1.0;
    for (const auto& ion : stoich) {
        if (ion.count < 1) throw ValidationError("ion count must be >= 1");
        const double conc = ion.count * solubility;
        for (int i = 0; i < ion.count; ++i) value *= conc;
    }
    return {value, ConstantKind::Ksp};
}

RatePair rate_pair_from_K(const EquilibriumConstant& K, double correction) {
    if (!(K.value > 0.0) || !std::isfinite(K.value))
        throw ValidationError("equilibrium constant must be > 0");
    if (!(correction > 0.0) || !std::isfinite(correction))
        throw ValidationError("correction coefficient must be > 0");
    return {K.value * correction, correction};
}

RatePair irreversible_rate(double kf) {
    if (kf < 0.0 || !std::isfinite(kf)) throw ValidationError("forward coefficient must be >= 0");
    return {kf, 0.0};
}

RateConsistency check_rate_consistency(const Reaction& reaction, std::optional<double> declared_K) {
    RateConsistency report{};
    if (reaction.rate.irreversible()) {
        report.irreversible = true;
        return report;
    }
    report.implied_K = reaction.rate.kf / reaction.rate.kb;
    if (declared_K) {
        report.declared_K = *declared_K;
        report.relative_error = std::abs(report.implied_K - *declared_K) / *declared_K;
        report.mismatch = report.relative_error > 1e-9;
    }
    return report;
}

}  // namespace rxnet
