#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "oucp/scenario.hpp"

namespace oucp {

/**
 * Per-iteration record of a scenario run. m_hat holds the detection outcome
 * under each of the four penalty variants, in Penalty::all() order.
 */
struct IterationRecord {
    std::uint64_t seed = 0;
    double s_lsse = 0, s_mll = 0;
    double sigma_hat = 0;
    double loglik0 = 0, loglik1 = 0;
    std::array<int, 4> m_hat{};
    bool failed = false;
    std::string error;
};

/**
 * Aggregated Monte Carlo summary. Location statistics are over the LSSE and
 * MLL break-fraction estimates; MSE is against the configured s0 and is only
 * populated for break configurations. pa_break / pa_nobreak are the percent
 * accuracy per penalty variant, populated for the matching configuration.
 */
struct MCSummary {
    ScenarioConfig config;
    int completed = 0;
    int failures = 0;
    double mean_s_lsse = 0, mse_s_lsse = 0;
    double mean_s_mll = 0, mse_s_mll = 0;
    std::optional<std::array<double, 4>> pa_break;    // PA(1) per penalty, %
    std::optional<std::array<double, 4>> pa_nobreak;  // PA(0) per penalty, %
    std::vector<IterationRecord> records;
};

/**
 * Runs the full scenario study: per iteration k the seed is
 * derive_seed(master_seed, k); simulate, scan (LSSE and MLL), fit the
 * no-break model and test existence under all four penalties, then fold the
 * records in index order. Bitwise deterministic for a fixed master seed,
 * serial or parallel.
 *
 * Individual iteration failures are recorded; throws numerical_error only
 * if more than 1% of iterations fail.
 */
MCSummary run_scenario(const ScenarioConfig& config, int threads = 1);

}  // namespace oucp
