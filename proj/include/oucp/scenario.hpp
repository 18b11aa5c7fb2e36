#pragma once

#include <cstdint>

#include "oucp/basis.hpp"
#include "oucp/existence.hpp"
#include "oucp/model.hpp"

namespace oucp {

/**
 * One Monte Carlo study configuration. Scenario 1 is the classical OU
 * process (constant basis); scenario 2 adds the sqrt(2)*cos(pi t/(2 dt))
 * component. Break variants switch drift at s0 = 0.5; sigma = 0.2 and
 * X_0 = 0.05 throughout.
 */
struct ScenarioConfig {
    int scenario = 1;          // 1 = classical, 2 = periodic
    bool with_break = true;
    double T = 5.0;
    double dt = 1.0 / 252.0;
    double x0 = 0.05;
    double s0 = 0.5;
    int iterations = 200;
    std::uint64_t master_seed = 42;
    Penalty penalty;           // selected penalty (PA is reported for all four)
    double min_frac = 0.05;
    bool known_sigma = false;  // use the true sigma instead of the realized-vol estimate
};

/// The preset drift/diffusion parameters for a scenario.
SegmentedModel scenario_model(int scenario, bool with_break, double s0 = 0.5);

/// The matching basis (constant, or constant + cosine tied to dt).
BasisSet scenario_basis(int scenario, double dt);

}  // namespace oucp
