#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "oucp/changepoint.hpp"

namespace oucp {

struct ScenarioConfig;  // scenario.hpp

/**
 * Penalty term of the information criterion
 *   IC(m) = -2 log L(tau_hat, theta_hat) + (m+1) h(p) phi(T),
 * with h(p) in {p+1, p+2} (whether sigma is counted as changing) and
 * phi(T) in {log T, log(T/dt)}. log(T/dt) is the default: log T tends to
 * over-detect on short horizons.
 */
struct Penalty {
    enum class Count { p_plus_one, p_plus_two };
    enum class Scale { log_T, log_T_over_dt };

    Count h = Count::p_plus_one;
    Scale phi = Scale::log_T_over_dt;

    /// h(p) * phi(T). Throws std::invalid_argument when the result is not
    /// a positive real (T <= 1 for log T, T <= dt for the ratio variant).
    double value(int p, double T, double dt) const;

    std::string name() const;               // e.g. "p1-logTdt"
    static Penalty parse(const std::string& name);
    static const std::array<Penalty, 4>& all();  // table column order
};

/**
 * Outcome of the existence test. m_hat = 1 (break detected) iff
 * ic0 >= ic1, the rejection region of H0: no break.
 */
struct ICResult {
    double ic0 = 0, ic1 = 0;
    int m_hat = 0;
    SegmentFit fit0;        // single-regime fit over the full path
    ChangePointFit fit1;    // MLL scan under the one-break model
    double loglik0 = 0, loglik1 = 0;
    double sigma = 0;       // diffusion shared by both models
    Penalty penalty;
    int window_lo = 0, window_hi = 0;
};

/**
 * Schwarz-type test for the existence of one break. sigma is estimated once
 * from the full path (realized volatility) and shared by both models; the
 * break location inside IC(1) comes from the MLL scan.
 */
ICResult ic_test(const SamplePath& path, const BasisSet& basis, const Penalty& penalty,
                 double min_frac = 0.05);

/// Same with a caller-supplied sigma (e.g. the true simulation value).
ICResult ic_test_known_sigma(const SamplePath& path, const BasisSet& basis, const Penalty& penalty,
                             double sigma, double min_frac = 0.05);

/**
 * Detection percentage of ic_test over freshly simulated scenario paths:
 * the empirical power when the scenario has a break (PA(1)), the empirical
 * significance level when it does not (1 - PA(0)). Iteration failures are
 * counted separately, not folded into the percentage.
 */
struct PowerLevelResult {
    double percent_detect = 0;  // % of completed iterations with m_hat = 1
    bool is_power = false;      // true under a break model
    int iterations = 0;
    int completed = 0;
    int failures = 0;
};

PowerLevelResult empirical_power_and_level(const ScenarioConfig& config, const Penalty& penalty,
                                           int iterations, std::uint64_t seed);

}  // namespace oucp
