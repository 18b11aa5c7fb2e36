#include "oucp/basis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace oucp {

BasisSet::BasisSet(std::vector<Fn> functions, double period, std::string name)
    : functions_(std::move(functions)), period_(period), name_(std::move(name)) {
    if (functions_.empty()) throw std::invalid_argument("BasisSet: need at least one function (p >= 1)");
    if (!(period_ > 0.0) || !std::isfinite(period_))
        throw std::invalid_argument("BasisSet: period must be finite and > 0");
    for (const auto& f : functions_)
        if (!f) throw std::invalid_argument("BasisSet: empty function");
}

void BasisSet::evaluate(double t, std::span<double> out) const {
    if (!std::isfinite(t)) throw std::invalid_argument("BasisSet::evaluate: non-finite t");
    if (out.size() != functions_.size())
        throw std::invalid_argument("BasisSet::evaluate: output span has wrong size");
    for (std::size_t i = 0; i < functions_.size(); ++i) out[i] = functions_[i](t);
}

std::vector<double> BasisSet::evaluate(double t) const {
    std::vector<double> out(functions_.size());
    evaluate(t, out);
    return out;
}

BasisSet BasisSet::constant() {
    return BasisSet({[](double) { return 1.0; }}, 1.0, "constant");
}

BasisSet BasisSet::constant_plus_cosine(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("constant_plus_cosine: dt must be finite and > 0");
    const double sqrt2 = std::sqrt(2.0);
    const double omega = M_PI / (2.0 * dt);
    return BasisSet({[](double) { return 1.0; },
                     [sqrt2, omega](double t) { return sqrt2 * std::cos(omega * t); }},
                    4.0 * dt, "cosine");
}

BasisSet make_preset_basis(const std::string& name, double dt) {
    if (name == "constant") return BasisSet::constant();
    if (name == "cosine") return BasisSet::constant_plus_cosine(dt);
    throw std::invalid_argument("unknown basis preset '" + name + "' (expected constant or cosine)");
}

BasisValidationReport validate(const BasisSet& basis, const BasisValidationOptions& options) {
    if (options.nodes_per_period < 2)
        throw std::invalid_argument("validate: nodes_per_period must be >= 2");
    const int p = basis.size();
    const double v = basis.period();
    const int q = options.nodes_per_period;
    const double h = v / q;

    BasisValidationReport report;
    report.options = options;
    report.passed = true;

    // phi_i(t + v) == phi_i(t) on the node grid, relative to max(1, |phi_i|).
    for (int i = 0; i < p; ++i) {
        double worst = 0.0;
        for (int j = 0; j < q; ++j) {
            const double t = j * h;
            const double a = basis.evaluate(t)[i];
            const double b = basis.evaluate(t + v)[i];
            const double rel = std::abs(b - a) / std::max(1.0, std::abs(a));
            worst = std::max(worst, rel);
        }
        const bool ok = worst <= options.periodicity_rtol;
        report.periodicity.push_back({i + 1, worst, ok});
        report.passed = report.passed && ok;
    }

    // (1/v) int_0^v phi_j phi_k dt == delta_jk by composite trapezoid.
    std::vector<std::vector<double>> vals(static_cast<std::size_t>(q) + 1);
    for (int j = 0; j <= q; ++j) vals[j] = basis.evaluate(j * h);
    for (int j = 0; j < p; ++j) {
        for (int k = j; k < p; ++k) {
            long double acc = 0.5L * (static_cast<long double>(vals[0][j]) * vals[0][k] +
                                      static_cast<long double>(vals[q][j]) * vals[q][k]);
            for (int m = 1; m < q; ++m) acc += static_cast<long double>(vals[m][j]) * vals[m][k];
            const double integral = static_cast<double>(acc * h / v);
            const double target = (j == k) ? 1.0 : 0.0;
            const double residual = std::abs(integral - target);
            const bool ok = residual <= options.orthonormality_atol;
            report.orthonormality.push_back({j + 1, k + 1, residual, ok});
            report.passed = report.passed && ok;
        }
    }
    return report;
}

std::string BasisValidationReport::summary() const {
    if (passed) {
        double worst = 0.0;
        for (const auto& r : orthonormality) worst = std::max(worst, r.residual);
        std::ostringstream os;
        os << "basis valid (worst orthonormality residual " << worst << ")";
        return os.str();
    }
    std::ostringstream os;
    os << "basis validation failed:";
    for (const auto& r : periodicity)
        if (!r.ok) os << " phi_" << r.i << " not periodic (residual " << r.residual << ");";
    for (const auto& r : orthonormality)
        if (!r.ok)
            os << " pair (" << r.j << "," << r.k << ") orthonormality residual " << r.residual
               << " exceeds " << options.orthonormality_atol << ";";
    return os.str();
}

void validate_or_throw(const BasisSet& basis, const BasisValidationOptions& options) {
    const auto report = validate(basis, options);
    if (!report.passed) throw std::invalid_argument(report.summary());
}

}  // namespace oucp
