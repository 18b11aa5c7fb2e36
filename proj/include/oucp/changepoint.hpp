#pragma once

#include <string>
#include <vector>

#include "oucp/estimate.hpp"

namespace oucp {

enum class ScanMethod { lsse, mll };

std::string to_string(ScanMethod m);

/**
 * Result of a full change-point scan. Candidate break indices i split the
 * steps into [0, i) and [i, n); the admissible window is
 * [window_lo, window_hi] inclusive. objective[j] is the objective at
 * candidate window_lo + j (NaN where a segment fit failed and the candidate
 * was skipped).
 */
struct ChangePointFit {
    ScanMethod method = ScanMethod::lsse;
    int tau_index = 0;      // grid index of the break
    double tau_time = 0;    // t0 + tau_index * dt
    double s_hat = 0;       // (tau_time - t0) / T
    DriftParams theta1;     // refit on [0, tau_index)
    DriftParams theta2;     // refit on [tau_index, n)
    std::vector<double> objective;  // profile over the window
    int window_lo = 0, window_hi = 0;
    double objective_at_opt = 0;
    int skipped = 0;        // candidates skipped due to fit failures

    double objective_at(int tau) const { return objective.at(tau - window_lo); }
};

/// Smallest admissible segment length in steps: max(ceil(n*min_frac), p+2).
/// The scan needs invertible statistics on both sides, so candidates within
/// this margin of either end are excluded.
int min_segment_steps(int n, int p, double min_frac);

/**
 * Least-sum-of-squared-errors scan: for every admissible split index,
 * refit both segments by MLE and record SSE_1 + SSE_2; the estimate is the
 * argmin, ties broken toward the smallest index.
 *
 * Candidates whose segment fit fails are skipped and counted; throws
 * numerical_error only if every candidate fails, std::invalid_argument if
 * the window is empty.
 */
ChangePointFit scan_lsse(const PathStats& stats, double min_frac = 0.05);
ChangePointFit scan_lsse(const SamplePath& path, const BasisSet& basis, double min_frac = 0.05);

/**
 * Maximum-log-likelihood scan: argmax over the window of
 * loglik(left segment) + loglik(right segment) with per-candidate MLE
 * refits, sharing one sigma. Ties break toward the smallest index.
 *
 * With the same sigma at every candidate the two objectives are affine
 * transforms of each other, so the located index matches scan_lsse.
 */
ChangePointFit scan_mll(const PathStats& stats, double sigma, double min_frac = 0.05);
ChangePointFit scan_mll(const SamplePath& path, const BasisSet& basis, double sigma,
                        double min_frac = 0.05);

}  // namespace oucp
