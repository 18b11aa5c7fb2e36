#pragma once

#include <cstdint>

#include "oucp/basis.hpp"
#include "oucp/model.hpp"

namespace oucp {

/**
 * Euler-Maruyama simulation of the segmented model:
 *
 *   X_{i+1} = X_i + (sum_j mu_j phi_j(t_i) - a X_i) dt + sigma sqrt(dt) N_i
 *
 * with independent standard normal N_i. If the model has a break fraction
 * s0, the step at t_i uses theta1 when t_i < s0*T and theta2 otherwise
 * (regime 1 on [0, tau), regime 2 on [tau, T]).
 *
 * T/dt must be a positive integer n (checked to 1e-9 relative).
 * Deterministic given (inputs, seed).
 */
SamplePath simulate_euler(const SegmentedModel& model, const BasisSet& basis, double T, double dt,
                          double x0, std::uint64_t seed);

/**
 * Exact Gaussian transition sampling for the classical OU process
 * dX = (mu - a X) dt + sigma dW, a > 0:
 *
 *   X_{i+1} = X_i e^{-a dt} + (mu/a)(1 - e^{-a dt})
 *             + sqrt(sigma^2 (1 - e^{-2 a dt}) / (2a)) N_i.
 *
 * Used as the transition-law oracle for the constant-basis case.
 */
SamplePath simulate_exact_classical(double mu, double a, double sigma, double T, double dt,
                                    double x0, std::uint64_t seed);

/// Number of grid steps for a horizon: T/dt rounded, after checking it is
/// integral to 1e-9 relative. Throws std::invalid_argument otherwise.
int grid_steps(double T, double dt);

}  // namespace oucp
