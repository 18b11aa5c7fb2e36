#include "oucp/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "oucp/errors.hpp"
#include "oucp/rng.hpp"
#include "oucp/simulate.hpp"

namespace oucp {

namespace {

IterationRecord run_iteration(const ScenarioConfig& cfg, const SegmentedModel& model,
                              const BasisSet& basis, std::uint64_t seed) {
    IterationRecord rec;
    rec.seed = seed;
    try {
        const SamplePath path = simulate_euler(model, basis, cfg.T, cfg.dt, cfg.x0, seed);
        const double sigma = cfg.known_sigma ? model.sigma : estimate_sigma(path);
        if (!(sigma > 0.0)) throw numerical_error("degenerate path: zero realized volatility");

        PathStats stats(path, basis);
        const int n = stats.steps();
        const ChangePointFit lsse = scan_lsse(stats, cfg.min_frac);
        const ChangePointFit mll = scan_mll(stats, sigma, cfg.min_frac);
        const SegmentFit fit0 = fit_mle(stats, 0, n);

        rec.s_lsse = lsse.s_hat;
        rec.s_mll = mll.s_hat;
        rec.sigma_hat = sigma;
        rec.loglik0 = fit0.loglik(sigma);
        rec.loglik1 = mll.objective_at_opt;

        // IC(0) >= IC(1)  <=>  2(loglik1 - loglik0) >= h(p) phi(T), so all
        // four penalty verdicts come from one pair of likelihoods.
        const double gain = 2.0 * (rec.loglik1 - rec.loglik0);
        const auto& penalties = Penalty::all();
        for (std::size_t j = 0; j < penalties.size(); ++j)
            rec.m_hat[j] = (gain >= penalties[j].value(basis.size(), stats.horizon(), cfg.dt)) ? 1 : 0;
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

MCSummary run_scenario(const ScenarioConfig& config, int threads) {
    if (config.iterations < 1) throw std::invalid_argument("run_scenario: iterations must be >= 1");
    if (threads < 1) threads = 1;
    const SegmentedModel model = scenario_model(config.scenario, config.with_break, config.s0);
    const BasisSet basis = scenario_basis(config.scenario, config.dt);
    (void)grid_steps(config.T, config.dt);  // reject non-integral T/dt up front

    MCSummary summary;
    summary.config = config;
    summary.records.resize(static_cast<std::size_t>(config.iterations));

    const auto worker = [&](std::atomic<int>& next) {
        for (int k = next.fetch_add(1); k < config.iterations; k = next.fetch_add(1)) {
            const std::uint64_t seed_k =
                derive_seed(config.master_seed, static_cast<std::uint64_t>(k));
            summary.records[static_cast<std::size_t>(k)] = run_iteration(config, model, basis, seed_k);
        }
    };

    std::atomic<int> next{0};
    if (threads == 1) {
        worker(next);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back([&] { worker(next); });
        for (auto& t : pool) t.join();
    }

    // Deterministic fold in iteration order.
    long double sum_lsse = 0, sum_mll = 0, sq_lsse = 0, sq_mll = 0;
    std::array<int, 4> detections{};
    for (const IterationRecord& rec : summary.records) {
        if (rec.failed) {
            ++summary.failures;
            continue;
        }
        ++summary.completed;
        sum_lsse += rec.s_lsse;
        sum_mll += rec.s_mll;
        const long double d_lsse = rec.s_lsse - config.s0;
        const long double d_mll = rec.s_mll - config.s0;
        sq_lsse += d_lsse * d_lsse;
        sq_mll += d_mll * d_mll;
        for (std::size_t j = 0; j < detections.size(); ++j) detections[j] += rec.m_hat[j];
    }
    if (summary.completed == 0) throw numerical_error("run_scenario: every iteration failed");
    if (100.0 * summary.failures > 1.0 * config.iterations)
        throw numerical_error("run_scenario: " + std::to_string(summary.failures) + " of " +
                              std::to_string(config.iterations) + " iterations failed (>1%)");

    const double m = summary.completed;
    summary.mean_s_lsse = static_cast<double>(sum_lsse / m);
    summary.mean_s_mll = static_cast<double>(sum_mll / m);
    if (config.with_break) {
        summary.mse_s_lsse = static_cast<double>(sq_lsse / m);
        summary.mse_s_mll = static_cast<double>(sq_mll / m);
    } else {
        summary.mse_s_lsse = std::numeric_limits<double>::quiet_NaN();
        summary.mse_s_mll = std::numeric_limits<double>::quiet_NaN();
    }

    std::array<double, 4> pa{};
    for (std::size_t j = 0; j < pa.size(); ++j) {
        const double detect_pct = 100.0 * detections[j] / m;
        pa[j] = config.with_break ? detect_pct : 100.0 - detect_pct;
    }
    if (config.with_break)
        summary.pa_break = pa;
    else
        summary.pa_nobreak = pa;
    return summary;
}

}  // namespace oucp
