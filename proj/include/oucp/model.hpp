#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oucp {

/**
 * Drift parameters of the generalized mean-reverting model
 *
 *   dX_t = (sum_i mu[i] * phi_i(t) - a * X_t) dt + sigma dW_t.
 *
 * The stored convention is (mu, a) with the drift using -a*X; a > 0 means
 * mean reversion. Estimation may return any real a.
 */
struct DriftParams {
    std::vector<double> mu;  // mean-level coefficients, one per basis function
    double a = 0.0;          // mean-reversion speed

    int p() const { return static_cast<int>(mu.size()); }

    void validate() const {
        if (mu.empty()) throw std::invalid_argument("DriftParams: mu must be non-empty");
        for (double m : mu)
            if (!std::isfinite(m)) throw std::invalid_argument("DriftParams: non-finite mu entry");
        if (!std::isfinite(a)) throw std::invalid_argument("DriftParams: non-finite a");
    }
};

/**
 * Two drift regimes separated by a break at fraction s0 of the horizon,
 * sharing a single diffusion coefficient. s0 absent means no break.
 */
struct SegmentedModel {
    DriftParams theta1;           // regime on [0, s0*T)
    DriftParams theta2;           // regime on [s0*T, T]
    std::optional<double> s0;     // break fraction in (0,1), absent = no break
    double sigma = 0.0;           // diffusion; 0 gives a deterministic path

    void validate() const {
        theta1.validate();
        theta2.validate();
        if (theta1.p() != theta2.p())
            throw std::invalid_argument("SegmentedModel: theta1 and theta2 must share basis dimension");
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("SegmentedModel: sigma must be finite and >= 0");
        if (s0 && !(*s0 > 0.0 && *s0 < 1.0))
            throw std::invalid_argument("SegmentedModel: s0 must lie in (0,1), got " + std::to_string(*s0));
    }
};

/**
 * A uniformly sampled realization X_{t_0},...,X_{t_n} with grid step dt.
 * Holds n+1 values; the horizon is T = n*dt.
 */
struct SamplePath {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    int steps() const { return static_cast<int>(values.size()) - 1; }
    double horizon() const { return steps() * dt; }
    double time_at(int i) const { return t0 + i * dt; }

    void validate() const {
        if (steps() < 2) throw std::invalid_argument("SamplePath: need at least 3 samples (n >= 2)");
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw std::invalid_argument("SamplePath: dt must be finite and > 0");
        if (!std::isfinite(t0)) throw std::invalid_argument("SamplePath: non-finite t0");
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i]))
                throw std::invalid_argument("SamplePath: non-finite value at index " + std::to_string(i));
    }
};

}  // namespace oucp
