#include "oucp/changepoint.hpp"

#include <cmath>
#include <limits>

#include "oucp/errors.hpp"

namespace oucp {

std::string to_string(ScanMethod m) { return m == ScanMethod::lsse ? "lsse" : "mll"; }

int min_segment_steps(int n, int p, double min_frac) {
    if (!(min_frac > 0.0 && min_frac < 0.5))
        throw std::invalid_argument("min_frac must lie in (0, 0.5)");
    const int frac_steps = static_cast<int>(std::ceil(n * min_frac - 1e-9));
    return std::max(frac_steps, p + 2);
}

namespace {

// Per-candidate segment refit reusing one factorization workspace.
// Returns false (skip) when Q is not numerically positive definite.
struct SegmentSolver {
    Eigen::MatrixXd Q;
    Eigen::VectorXd rtilde;
    Eigen::VectorXd theta;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    double yy = 0;

    explicit SegmentSolver(int p) : Q(p + 1, p + 1), rtilde(p + 1), theta(p + 1), ldlt(p + 1) {}

    bool solve(const PathStats& stats, int lo, int hi) {
        stats.stats_into(lo, hi, Q, rtilde, yy);
        ldlt.compute(Q);
        if (ldlt.info() != Eigen::Success) return false;
        const double dmin = ldlt.vectorD().minCoeff();
        const double dmax = ldlt.vectorD().maxCoeff();
        // Same guard as fit_mle, with the pivot spectrum as condition proxy.
        if (!(dmin > 0.0) || dmax > kMaxConditionNumber * dmin) return false;
        theta = ldlt.solve(rtilde);
        return theta.allFinite();
    }

    double sse(double dt) const {
        return yy - 2.0 * dt * theta.dot(rtilde) + dt * theta.dot(Q * theta);
    }

    double loglik(double sigma) const {
        return (theta.dot(rtilde) - 0.5 * theta.dot(Q * theta)) / (sigma * sigma);
    }
};

ChangePointFit scan_impl(const PathStats& stats, ScanMethod method, double sigma, double min_frac) {
    const int n = stats.steps();
    const int p = stats.p();
    const int i_min = min_segment_steps(n, p, min_frac);
    const int lo = i_min;
    const int hi = n - i_min;
    if (lo > hi)
        throw std::invalid_argument("scan: admissible window empty (n=" + std::to_string(n) +
                                    ", min segment " + std::to_string(i_min) + " steps per side)");

    ChangePointFit fit;
    fit.method = method;
    fit.window_lo = lo;
    fit.window_hi = hi;
    fit.objective.assign(static_cast<std::size_t>(hi - lo + 1),
                         std::numeric_limits<double>::quiet_NaN());

    SegmentSolver left(p), right(p);
    const double dt = stats.dt();
    const bool minimizing = (method == ScanMethod::lsse);
    int best_index = -1;
    double best = 0.0;
    for (int i = lo; i <= hi; ++i) {
        if (!left.solve(stats, 0, i) || !right.solve(stats, i, n)) {
            ++fit.skipped;
            continue;
        }
        const double value = minimizing ? left.sse(dt) + right.sse(dt)
                                        : left.loglik(sigma) + right.loglik(sigma);
        fit.objective[static_cast<std::size_t>(i - lo)] = value;
        if (!std::isfinite(value)) {
            ++fit.skipped;
            continue;
        }
        // Strict comparison keeps the smallest index on ties.
        if (best_index < 0 || (minimizing ? value < best : value > best)) {
            best_index = i;
            best = value;
        }
    }
    if (best_index < 0)
        throw numerical_error("scan: every candidate split failed (" + std::to_string(fit.skipped) +
                              " skipped)");

    fit.tau_index = best_index;
    fit.tau_time = stats.t0() + best_index * dt;
    fit.s_hat = static_cast<double>(best_index) / n;
    fit.objective_at_opt = best;
    left.solve(stats, 0, best_index);
    right.solve(stats, best_index, n);
    fit.theta1 = drift_from_coefficients(left.theta);
    fit.theta2 = drift_from_coefficients(right.theta);
    return fit;
}

}  // namespace

ChangePointFit scan_lsse(const PathStats& stats, double min_frac) {
    return scan_impl(stats, ScanMethod::lsse, 1.0, min_frac);
}

ChangePointFit scan_lsse(const SamplePath& path, const BasisSet& basis, double min_frac) {
    return scan_lsse(PathStats(path, basis), min_frac);
}

ChangePointFit scan_mll(const PathStats& stats, double sigma, double min_frac) {
    if (!(sigma > 0.0)) throw std::invalid_argument("scan_mll: sigma must be > 0");
    return scan_impl(stats, ScanMethod::mll, sigma, min_frac);
}

ChangePointFit scan_mll(const SamplePath& path, const BasisSet& basis, double sigma,
                        double min_frac) {
    return scan_mll(PathStats(path, basis), sigma, min_frac);
}

}  // namespace oucp
