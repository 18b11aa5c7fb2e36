#include "oucp/estimate.hpp"

#include <cmath>
#include <sstream>

#include "oucp/errors.hpp"

namespace oucp {

double SegmentFit::loglik(double sigma) const {
    if (!(sigma > 0.0)) throw std::invalid_argument("SegmentFit::loglik: sigma must be > 0");
    return loglik_part / (sigma * sigma);
}

namespace {

void check_fit_interval(int i_lo, int i_hi, int n, int p) {
    if (i_lo < 0 || i_hi > n || i_lo >= i_hi)
        throw std::invalid_argument("fit_mle: index range out of range");
    // p+2 grid points = p+1 steps is the bare minimum for an invertible Q.
    if (i_hi - i_lo < p + 1)
        throw std::invalid_argument("fit_mle: interval too short, need at least " +
                                    std::to_string(p + 2) + " points for p=" + std::to_string(p));
}

SegmentFit fit_from_stats(const QuadStats& stats) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(stats.Q);
    if (eig.info() != Eigen::Success)
        throw numerical_error("fit_mle: eigendecomposition of Q failed");
    const double min_eig = eig.eigenvalues().minCoeff();
    const double max_eig = eig.eigenvalues().maxCoeff();
    if (!(min_eig > 0.0)) {
        std::ostringstream os;
        os << "fit_mle: Q is not positive definite on [" << stats.i_lo << "," << stats.i_hi
           << "), smallest eigenvalue " << min_eig;
        throw numerical_error(os.str());
    }
    const double cond = max_eig / min_eig;
    if (cond > kMaxConditionNumber) {
        std::ostringstream os;
        os << "fit_mle: Q condition number " << cond << " exceeds " << kMaxConditionNumber;
        throw numerical_error(os.str());
    }

    Eigen::LDLT<Eigen::MatrixXd> ldlt(stats.Q);
    Eigen::VectorXd theta = ldlt.solve(stats.rtilde);
    // One refinement step, then enforce the solve-residual contract.
    theta += ldlt.solve(stats.rtilde - stats.Q * theta);
    const double resid = (stats.Q * theta - stats.rtilde).norm();
    if (resid > 1e-8 * std::max(stats.rtilde.norm(), 1e-300))
        throw numerical_error("fit_mle: solve residual " + std::to_string(resid) +
                              " exceeds 1e-8 * ||rtilde||");

    SegmentFit fit;
    fit.theta = drift_from_coefficients(theta);
    fit.i_lo = stats.i_lo;
    fit.i_hi = stats.i_hi;
    fit.cond = cond;
    fit.min_eigenvalue = min_eig;
    fit.loglik_part = theta.dot(stats.rtilde) - 0.5 * theta.dot(stats.Q * theta);
    return fit;
}

}  // namespace

SegmentFit fit_mle(const PathStats& stats, int i_lo, int i_hi) {
    check_fit_interval(i_lo, i_hi, stats.steps(), stats.p());
    return fit_from_stats(stats.stats(i_lo, i_hi));
}

SegmentFit fit_mle(const SamplePath& path, const BasisSet& basis, int i_lo, int i_hi) {
    check_fit_interval(i_lo, i_hi, path.steps(), basis.size());
    return fit_from_stats(compute_stats(path, basis, i_lo, i_hi));
}

double estimate_sigma(const SamplePath& path) {
    path.validate();
    long double yy = 0.0L;
    for (int i = 0; i < path.steps(); ++i) {
        const long double y = static_cast<long double>(path.values[static_cast<std::size_t>(i) + 1]) -
                              static_cast<long double>(path.values[static_cast<std::size_t>(i)]);
        yy += y * y;
    }
    return std::sqrt(static_cast<double>(yy) / path.horizon());
}

double estimate_sigma_residual(const SamplePath& path, const BasisSet& basis) {
    const int n = path.steps();
    const int p = basis.size();
    if (n <= p + 1) throw std::invalid_argument("estimate_sigma_residual: path too short");
    const QuadStats stats = compute_stats(path, basis, 0, n);
    const SegmentFit fit = fit_from_stats(stats);
    const double sse = sse_of_segment(stats, fit.theta);
    return std::sqrt(std::max(sse, 0.0) / (n - (p + 1))) / std::sqrt(path.dt);
}

double loglik_segment(const QuadStats& stats, const DriftParams& theta, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("loglik_segment: sigma must be > 0");
    if (theta.p() != stats.p()) throw std::invalid_argument("loglik_segment: dimension mismatch");
    const Eigen::VectorXd v = coefficient_vector(theta);
    return (v.dot(stats.rtilde) - 0.5 * v.dot(stats.Q * v)) / (sigma * sigma);
}

double loglik_segment(const SamplePath& path, const BasisSet& basis, int i_lo, int i_hi,
                      const DriftParams& theta, double sigma) {
    return loglik_segment(compute_stats(path, basis, i_lo, i_hi), theta, sigma);
}

}  // namespace oucp
