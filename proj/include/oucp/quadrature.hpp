#pragma once

#include <Eigen/Dense>

#include "oucp/basis.hpp"
#include "oucp/model.hpp"

namespace oucp {

/**
 * Sufficient statistics of a path segment for drift estimation.
 *
 * Over the step range [i_lo, i_hi) with Y_i = X_{t_{i+1}} - X_{t_i} and all
 * sums evaluated at the left endpoint (Ito convention):
 *
 *   Q[j][k] =  sum phi_j(t_i) phi_k(t_i) dt      j,k < p
 *   Q[j][p] = -sum phi_j(t_i) X_{t_i} dt         (and symmetric)
 *   Q[p][p] =  sum X_{t_i}^2 dt
 *   rtilde[j] =  sum phi_j(t_i) Y_i              j < p
 *   rtilde[p] = -sum X_{t_i} Y_i
 *
 * Equivalently, with the regression rows Z_i = (phi(t_i), -X_{t_i}) dt of the
 * Euler-discretized model Y_i = Z_i theta + eps_i, theta = (mu, a):
 * sum Z_i'Z_i = dt*Q and sum Z_i'Y_i = dt*rtilde, so the OLS solution equals
 * Q^{-1} rtilde exactly at any dt.
 */
struct QuadStats {
    Eigen::MatrixXd Q;             // (p+1) x (p+1), symmetric by assembly
    Eigen::VectorXd rtilde;        // p+1
    double sum_sq_increments = 0;  // sum Y_i^2 over the range
    double dt = 0;
    int i_lo = 0, i_hi = 0;

    int p() const { return static_cast<int>(rtilde.size()) - 1; }
};

/**
 * Per-step prefix sums of every QuadStats contribution, built in one O(n p^2)
 * pass; any segment's statistics follow in O(p^2) by subtraction. Prefixes
 * are accumulated in long double so that subtracted segment sums match direct
 * summation well past the 1e-10 additivity tolerance.
 */
class PathStats {
public:
    PathStats(const SamplePath& path, const BasisSet& basis);

    /// Statistics over steps [i_lo, i_hi). Requires 0 <= i_lo < i_hi <= n
    /// and at least 2 steps.
    QuadStats stats(int i_lo, int i_hi) const;

    /// Same, writing into preallocated storage (scan hot path).
    void stats_into(int i_lo, int i_hi, Eigen::MatrixXd& Q, Eigen::VectorXd& rtilde,
                    double& sum_sq_increments) const;

    double sum_sq_increments(int i_lo, int i_hi) const;

    int steps() const { return n_; }
    int p() const { return p_; }
    double dt() const { return dt_; }
    double t0() const { return t0_; }
    double horizon() const { return n_ * dt_; }

private:
    void check_range(int i_lo, int i_hi) const;
    const long double* node(int i) const { return pref_.data() + static_cast<std::size_t>(i) * stride_; }

    int n_ = 0, p_ = 0;
    double dt_ = 0, t0_ = 0;
    std::size_t stride_ = 0;
    std::vector<long double> pref_;  // (n+1) nodes of cumulative contributions
};

/// One-off statistics by direct summation over [i_lo, i_hi); the scan uses
/// PathStats instead. Both routes agree entrywise (additivity invariant).
QuadStats compute_stats(const SamplePath& path, const BasisSet& basis, int i_lo, int i_hi);

/**
 * Sum of squared Euler residuals of the segment under drift theta:
 *
 *   SSE(theta) = sum (Y_i - Z_i theta)^2
 *              = sum Y_i^2 - 2 dt theta'rtilde + dt theta'Q theta,
 *
 * evaluated through the cached statistics, no second path pass.
 */
double sse_of_segment(const QuadStats& stats, const DriftParams& theta);

/// (mu_1,...,mu_p,a) as the coefficient vector matching the Z_i layout above.
Eigen::VectorXd coefficient_vector(const DriftParams& theta);
DriftParams drift_from_coefficients(const Eigen::VectorXd& theta_vec);

}  // namespace oucp
