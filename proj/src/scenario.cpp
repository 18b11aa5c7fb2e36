#include "oucp/scenario.hpp"

#include <stdexcept>

namespace oucp {

SegmentedModel scenario_model(int scenario, bool with_break, double s0) {
    SegmentedModel model;
    model.sigma = 0.2;
    if (scenario == 1) {
        model.theta1 = DriftParams{{0.08}, 0.1};
        model.theta2 = DriftParams{{2.5}, 1.0};
    } else if (scenario == 2) {
        model.theta1 = DriftParams{{0.08, 0.02}, 0.1};
        model.theta2 = DriftParams{{2.5, 1.2}, 1.0};
    } else {
        throw std::invalid_argument("scenario must be 1 or 2, got " + std::to_string(scenario));
    }
    if (with_break) {
        model.s0 = s0;
    } else {
        // Without a break both regimes are the post-break parameter set.
        model.theta1 = model.theta2;
        model.s0.reset();
    }
    model.validate();
    return model;
}

BasisSet scenario_basis(int scenario, double dt) {
    if (scenario == 1) return BasisSet::constant();
    if (scenario == 2) return BasisSet::constant_plus_cosine(dt);
    throw std::invalid_argument("scenario must be 1 or 2, got " + std::to_string(scenario));
}

}  // namespace oucp
