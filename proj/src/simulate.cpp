#include "oucp/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oucp/rng.hpp"

namespace oucp {

int grid_steps(double T, double dt) {
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("horizon T must be finite and > 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("grid step dt must be finite and > 0");
    const double ratio = T / dt;
    const double rounded = std::nearbyint(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded))
        throw std::invalid_argument("T/dt must be a positive integer, got " + std::to_string(ratio));
    return static_cast<int>(rounded);
}

SamplePath simulate_euler(const SegmentedModel& model, const BasisSet& basis, double T, double dt,
                          double x0, std::uint64_t seed) {
    model.validate();
    if (!std::isfinite(x0)) throw std::invalid_argument("simulate_euler: non-finite x0");
    if (model.theta1.p() != basis.size())
        throw std::invalid_argument("simulate_euler: model dimension does not match basis");
    const int n = grid_steps(T, dt);

    // Regime 1 applies on [0, tau), regime 2 on [tau, T]: the step at t_i
    // uses theta2 from the first grid point with t_i >= s0*T.
    int break_index = n + 1;
    if (model.s0) break_index = static_cast<int>(std::ceil(*model.s0 * n - 1e-9));

    SamplePath path;
    path.t0 = 0.0;
    path.dt = dt;
    path.values.resize(static_cast<std::size_t>(n) + 1);
    path.values[0] = x0;

    SplitMix64 rng(seed);
    const double sqdt = std::sqrt(dt);
    std::vector<double> phi(static_cast<std::size_t>(basis.size()));
    double x = x0;
    for (int i = 0; i < n; ++i) {
        const double t = i * dt;
        const DriftParams& theta = (i < break_index) ? model.theta1 : model.theta2;
        basis.evaluate(t, phi);
        double level = 0.0;
        for (int j = 0; j < theta.p(); ++j) level += theta.mu[static_cast<std::size_t>(j)] * phi[static_cast<std::size_t>(j)];
        x += (level - theta.a * x) * dt + model.sigma * sqdt * rng.normal();
        path.values[static_cast<std::size_t>(i) + 1] = x;
    }
    return path;
}

SamplePath simulate_exact_classical(double mu, double a, double sigma, double T, double dt,
                                    double x0, std::uint64_t seed) {
    if (!(a > 0.0)) throw std::invalid_argument("simulate_exact_classical: a must be > 0");
    if (!(sigma >= 0.0)) throw std::invalid_argument("simulate_exact_classical: sigma must be >= 0");
    if (!std::isfinite(x0)) throw std::invalid_argument("simulate_exact_classical: non-finite x0");
    const int n = grid_steps(T, dt);

    const double decay = std::exp(-a * dt);
    const double mean_pull = (mu / a) * (1.0 - decay);
    const double noise_sd = sigma * std::sqrt((1.0 - decay * decay) / (2.0 * a));

    SamplePath path;
    path.t0 = 0.0;
    path.dt = dt;
    path.values.resize(static_cast<std::size_t>(n) + 1);
    path.values[0] = x0;

    SplitMix64 rng(seed);
    double x = x0;
    for (int i = 0; i < n; ++i) {
        x = x * decay + mean_pull + noise_sd * rng.normal();
        path.values[static_cast<std::size_t>(i) + 1] = x;
    }
    return path;
}

}  // namespace oucp
