#pragma once

#include <vector>

namespace rxnet {

/// Concentrations (mol/L) of every species at one instant, indexed by the
/// compiled network's dense species index.
struct StateVector {
    double time = 0.0;  // seconds; negative while integrating backwards
    std::vector<double> conc;
};

}  // namespace rxnet
