#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace oucp {

/**
 * A set of p periodic, orthonormal basis functions {phi_1,...,phi_p}
 * spanning the time-dependent mean level L(t) = sum_i mu_i phi_i(t).
 *
 * Orthonormality is over one period v: (1/v) int_0^v phi_j phi_k dt = delta_jk.
 * The set must be incomplete for the sufficient-statistic matrix to be
 * positive definite; that is enforced numerically downstream, not here.
 *
 * Immutable after construction; safe to share across threads.
 */
class BasisSet {
public:
    using Fn = std::function<double(double)>;

    BasisSet(std::vector<Fn> functions, double period, std::string name = "custom");

    int size() const { return static_cast<int>(functions_.size()); }  // p
    double period() const { return period_; }                         // v
    const std::string& name() const { return name_; }

    /// Evaluates (phi_1(t),...,phi_p(t)) into out; out.size() must equal p.
    void evaluate(double t, std::span<double> out) const;
    std::vector<double> evaluate(double t) const;

    /// The constant basis {1} with period 1.
    static BasisSet constant();

    /// {1, sqrt(2)*cos(pi t / (2 dt))} with period 4*dt. The cosine's period
    /// is tied to the sampling step, so dt must be supplied at construction.
    static BasisSet constant_plus_cosine(double dt);

private:
    std::vector<Fn> functions_;
    double period_;
    std::string name_;
};

/// Looks up a CLI preset by name: "constant" or "cosine" (needs dt).
BasisSet make_preset_basis(const std::string& name, double dt);

struct BasisValidationOptions {
    int nodes_per_period = 10'000;   // composite-trapezoid nodes (>= 1e4)
    double periodicity_rtol = 1e-9;
    double orthonormality_atol = 1e-6;
};

/// Per-pair / per-function residuals from validating a BasisSet.
struct BasisValidationReport {
    struct PairResidual {
        int j, k;         // 1-based, j <= k
        double residual;  // |(1/v) int phi_j phi_k dt - delta_jk|
        bool ok;
    };
    struct PeriodicityResidual {
        int i;            // 1-based
        double residual;  // max relative |phi_i(t+v) - phi_i(t)| over the grid
        bool ok;
    };

    bool passed = false;
    std::vector<PairResidual> orthonormality;
    std::vector<PeriodicityResidual> periodicity;
    BasisValidationOptions options;

    /// One-line outcome; names the first offending pair/function on failure.
    std::string summary() const;
};

/**
 * Checks periodicity (relative tolerance) and orthonormality over one
 * period (composite trapezoid, absolute tolerance) for every function
 * and pair. Never throws on a failing basis; inspect `passed`.
 */
BasisValidationReport validate(const BasisSet& basis, const BasisValidationOptions& options = {});

/// validate() + throw std::invalid_argument with the report summary on failure.
void validate_or_throw(const BasisSet& basis, const BasisValidationOptions& options = {});

}  // namespace oucp
