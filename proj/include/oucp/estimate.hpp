#pragma once

#include "oucp/quadrature.hpp"

namespace oucp {

/**
 * Drift MLE on one segment: theta_hat = Q^{-1} rtilde, stored as (mu_hat,
 * a_hat) in the library's sign convention (drift = sum mu phi - a X).
 *
 * loglik_part is the segment log-likelihood at sigma = 1,
 *   theta'rtilde - theta'Q theta / 2;
 * divide by sigma^2 for a specific diffusion value.
 */
struct SegmentFit {
    DriftParams theta;
    int i_lo = 0, i_hi = 0;
    double cond = 0;            // eigenvalue condition estimate of Q
    double min_eigenvalue = 0;  // smallest eigenvalue of Q
    double loglik_part = 0;

    double loglik(double sigma) const;
};

/// Condition-number guard: fits fail rather than return garbage beyond this.
inline constexpr double kMaxConditionNumber = 1e12;

/**
 * Maximum-likelihood fit of the drift on steps [i_lo, i_hi).
 *
 * Throws std::invalid_argument for an interval shorter than p+2 points and
 * numerical_error when Q is not positive definite (message reports the
 * smallest eigenvalue) or its condition number exceeds kMaxConditionNumber.
 */
SegmentFit fit_mle(const PathStats& stats, int i_lo, int i_hi);
SegmentFit fit_mle(const SamplePath& path, const BasisSet& basis, int i_lo, int i_hi);

/// Realized-volatility diffusion estimate sqrt(sum Y_i^2 / T), T = n dt.
double estimate_sigma(const SamplePath& path);

/// Alternative: residual standard error of the full-path fit divided by
/// sqrt(dt) (residual variance uses n - (p+1) degrees of freedom).
double estimate_sigma_residual(const SamplePath& path, const BasisSet& basis);

/**
 * Discretized Girsanov log-likelihood of a segment under drift theta:
 *   (1/sigma^2) theta'rtilde - (1/(2 sigma^2)) theta'Q theta,
 * the left-point Riemann/Ito discretization of
 *   (1/sigma^2) int S dX - (1/(2 sigma^2)) int S^2 dt.
 */
double loglik_segment(const QuadStats& stats, const DriftParams& theta, double sigma);
double loglik_segment(const SamplePath& path, const BasisSet& basis, int i_lo, int i_hi,
                      const DriftParams& theta, double sigma);

}  // namespace oucp
