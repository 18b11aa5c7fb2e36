#include "oucp/existence.hpp"

#include <cmath>

#include "oucp/errors.hpp"
#include "oucp/rng.hpp"
#include "oucp/scenario.hpp"
#include "oucp/simulate.hpp"

namespace oucp {

double Penalty::value(int p, double T, double dt) const {
    const double count = (h == Count::p_plus_one) ? p + 1 : p + 2;
    const double scale = (phi == Scale::log_T) ? std::log(T) : std::log(T / dt);
    const double result = count * scale;
    if (!(result > 0.0) || !std::isfinite(result))
        throw std::invalid_argument("penalty " + name() + " is not positive for T=" +
                                    std::to_string(T) + ", dt=" + std::to_string(dt));
    return result;
}

std::string Penalty::name() const {
    std::string s = (h == Count::p_plus_one) ? "p1" : "p2";
    s += (phi == Scale::log_T) ? "-logT" : "-logTdt";
    return s;
}

Penalty Penalty::parse(const std::string& name) {
    for (const Penalty& p : all())
        if (p.name() == name) return p;
    throw std::invalid_argument("unknown penalty '" + name +
                                "' (expected p1-logT, p2-logT, p1-logTdt or p2-logTdt)");
}

const std::array<Penalty, 4>& Penalty::all() {
    static const std::array<Penalty, 4> variants{{
        {Count::p_plus_one, Scale::log_T},
        {Count::p_plus_two, Scale::log_T},
        {Count::p_plus_one, Scale::log_T_over_dt},
        {Count::p_plus_two, Scale::log_T_over_dt},
    }};
    return variants;
}

namespace {

ICResult ic_test_impl(const SamplePath& path, const BasisSet& basis, const Penalty& penalty,
                      double sigma, double min_frac) {
    if (!(sigma > 0.0))
        throw numerical_error("ic_test: sigma is not positive (degenerate constant path?)");
    PathStats stats(path, basis);
    const int n = stats.steps();
    const double T = stats.horizon();

    ICResult result;
    result.penalty = penalty;
    result.sigma = sigma;
    result.fit0 = fit_mle(stats, 0, n);
    result.loglik0 = result.fit0.loglik(sigma);
    result.fit1 = scan_mll(stats, sigma, min_frac);
    result.loglik1 = result.fit1.objective_at_opt;
    result.window_lo = result.fit1.window_lo;
    result.window_hi = result.fit1.window_hi;

    const double hphi = penalty.value(basis.size(), T, path.dt);
    result.ic0 = -2.0 * result.loglik0 + hphi;
    result.ic1 = -2.0 * result.loglik1 + 2.0 * hphi;
    result.m_hat = (result.ic0 >= result.ic1) ? 1 : 0;
    return result;
}

}  // namespace

ICResult ic_test(const SamplePath& path, const BasisSet& basis, const Penalty& penalty,
                 double min_frac) {
    return ic_test_impl(path, basis, penalty, estimate_sigma(path), min_frac);
}

ICResult ic_test_known_sigma(const SamplePath& path, const BasisSet& basis, const Penalty& penalty,
                             double sigma, double min_frac) {
    if (!(sigma > 0.0)) throw std::invalid_argument("ic_test_known_sigma: sigma must be > 0");
    return ic_test_impl(path, basis, penalty, sigma, min_frac);
}

PowerLevelResult empirical_power_and_level(const ScenarioConfig& config, const Penalty& penalty,
                                           int iterations, std::uint64_t seed) {
    if (iterations < 1) throw std::invalid_argument("empirical_power_and_level: iterations must be >= 1");
    const SegmentedModel model = scenario_model(config.scenario, config.with_break, config.s0);
    const BasisSet basis = scenario_basis(config.scenario, config.dt);

    PowerLevelResult result;
    result.is_power = config.with_break;
    result.iterations = iterations;
    int detections = 0;
    for (int k = 0; k < iterations; ++k) {
        const std::uint64_t seed_k = derive_seed(seed, static_cast<std::uint64_t>(k));
        try {
            const SamplePath path =
                simulate_euler(model, basis, config.T, config.dt, config.x0, seed_k);
            const ICResult ic = config.known_sigma
                                    ? ic_test_known_sigma(path, basis, penalty, model.sigma,
                                                          config.min_frac)
                                    : ic_test(path, basis, penalty, config.min_frac);
            ++result.completed;
            detections += ic.m_hat;
        } catch (const numerical_error&) {
            ++result.failures;
        }
    }
    if (result.completed == 0)
        throw numerical_error("empirical_power_and_level: every iteration failed");
    result.percent_detect = 100.0 * detections / result.completed;
    return result;
}

}  // namespace oucp
