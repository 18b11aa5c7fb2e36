#include "oucp/quadrature.hpp"

#include <stdexcept>
#include <string>

namespace oucp {

namespace {

// Prefix layout per node: gram upper triangle (p(p+1)/2), cross (p),
// corner (1), r_phi (p), r_x (1), yy (1).
std::size_t stride_for(int p) {
    const std::size_t pu = static_cast<std::size_t>(p);
    return pu * (pu + 1) / 2 + pu + 1 + pu + 1 + 1;
}

inline std::size_t gram_index(int p, int j, int k) {  // j <= k < p
    return static_cast<std::size_t>(j) * p - static_cast<std::size_t>(j) * (j - 1) / 2 +
           static_cast<std::size_t>(k - j);
}

}  // namespace

PathStats::PathStats(const SamplePath& path, const BasisSet& basis) {
    path.validate();
    n_ = path.steps();
    p_ = basis.size();
    dt_ = path.dt;
    t0_ = path.t0;
    stride_ = stride_for(p_);
    pref_.assign(static_cast<std::size_t>(n_ + 1) * stride_, 0.0L);

    const std::size_t ngram = static_cast<std::size_t>(p_) * (p_ + 1) / 2;
    const std::size_t o_cross = ngram;
    const std::size_t o_corner = o_cross + static_cast<std::size_t>(p_);
    const std::size_t o_rphi = o_corner + 1;
    const std::size_t o_rx = o_rphi + static_cast<std::size_t>(p_);
    const std::size_t o_yy = o_rx + 1;

    std::vector<double> phi(static_cast<std::size_t>(p_));
    const long double dtl = dt_;
    for (int i = 0; i < n_; ++i) {
        const long double x = path.values[static_cast<std::size_t>(i)];
        const long double y = static_cast<long double>(path.values[static_cast<std::size_t>(i) + 1]) -
                              static_cast<long double>(path.values[static_cast<std::size_t>(i)]);
        basis.evaluate(path.time_at(i), phi);

        const long double* prev = node(i);
        long double* cur = pref_.data() + static_cast<std::size_t>(i + 1) * stride_;
        std::size_t s = 0;
        for (int j = 0; j < p_; ++j)
            for (int k = j; k < p_; ++k, ++s)
                cur[s] = prev[s] + static_cast<long double>(phi[static_cast<std::size_t>(j)]) *
                                       phi[static_cast<std::size_t>(k)] * dtl;
        for (int j = 0; j < p_; ++j)
            cur[o_cross + static_cast<std::size_t>(j)] =
                prev[o_cross + static_cast<std::size_t>(j)] + phi[static_cast<std::size_t>(j)] * x * dtl;
        cur[o_corner] = prev[o_corner] + x * x * dtl;
        for (int j = 0; j < p_; ++j)
            cur[o_rphi + static_cast<std::size_t>(j)] =
                prev[o_rphi + static_cast<std::size_t>(j)] + phi[static_cast<std::size_t>(j)] * y;
        cur[o_rx] = prev[o_rx] + x * y;
        cur[o_yy] = prev[o_yy] + y * y;
    }
}

void PathStats::check_range(int i_lo, int i_hi) const {
    if (i_lo < 0 || i_hi > n_ || i_lo >= i_hi)
        throw std::invalid_argument("PathStats: index range [" + std::to_string(i_lo) + "," +
                                    std::to_string(i_hi) + ") out of range for n=" + std::to_string(n_));
    if (i_hi - i_lo < 2)
        throw std::invalid_argument("PathStats: interval too short, need at least 2 steps");
}

void PathStats::stats_into(int i_lo, int i_hi, Eigen::MatrixXd& Q, Eigen::VectorXd& rtilde,
                           double& sum_sq_increments) const {
    check_range(i_lo, i_hi);
    const long double* lo = node(i_lo);
    const long double* hi = node(i_hi);

    const std::size_t ngram = static_cast<std::size_t>(p_) * (p_ + 1) / 2;
    const std::size_t o_cross = ngram;
    const std::size_t o_corner = o_cross + static_cast<std::size_t>(p_);
    const std::size_t o_rphi = o_corner + 1;
    const std::size_t o_rx = o_rphi + static_cast<std::size_t>(p_);
    const std::size_t o_yy = o_rx + 1;

    Q.resize(p_ + 1, p_ + 1);
    rtilde.resize(p_ + 1);
    for (int j = 0; j < p_; ++j)
        for (int k = j; k < p_; ++k) {
            const double g = static_cast<double>(hi[gram_index(p_, j, k)] - lo[gram_index(p_, j, k)]);
            Q(j, k) = g;
            Q(k, j) = g;
        }
    for (int j = 0; j < p_; ++j) {
        const double c = static_cast<double>(hi[o_cross + static_cast<std::size_t>(j)] -
                                             lo[o_cross + static_cast<std::size_t>(j)]);
        Q(j, p_) = -c;
        Q(p_, j) = -c;
    }
    Q(p_, p_) = static_cast<double>(hi[o_corner] - lo[o_corner]);
    for (int j = 0; j < p_; ++j)
        rtilde(j) = static_cast<double>(hi[o_rphi + static_cast<std::size_t>(j)] -
                                        lo[o_rphi + static_cast<std::size_t>(j)]);
    rtilde(p_) = -static_cast<double>(hi[o_rx] - lo[o_rx]);
    sum_sq_increments = static_cast<double>(hi[o_yy] - lo[o_yy]);
}

QuadStats PathStats::stats(int i_lo, int i_hi) const {
    QuadStats out;
    stats_into(i_lo, i_hi, out.Q, out.rtilde, out.sum_sq_increments);
    out.dt = dt_;
    out.i_lo = i_lo;
    out.i_hi = i_hi;
    return out;
}

double PathStats::sum_sq_increments(int i_lo, int i_hi) const {
    check_range(i_lo, i_hi);
    const std::size_t o_yy = stride_ - 1;
    return static_cast<double>(node(i_hi)[o_yy] - node(i_lo)[o_yy]);
}

QuadStats compute_stats(const SamplePath& path, const BasisSet& basis, int i_lo, int i_hi) {
    path.validate();
    const int n = path.steps();
    const int p = basis.size();
    if (i_lo < 0 || i_hi > n || i_lo >= i_hi)
        throw std::invalid_argument("compute_stats: index range out of range");
    if (i_hi - i_lo < 2) throw std::invalid_argument("compute_stats: interval too short");

    QuadStats out;
    out.Q = Eigen::MatrixXd::Zero(p + 1, p + 1);
    out.rtilde = Eigen::VectorXd::Zero(p + 1);
    out.dt = path.dt;
    out.i_lo = i_lo;
    out.i_hi = i_hi;

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd cross = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd rphi = Eigen::VectorXd::Zero(p);
    long double corner = 0.0L, rx = 0.0L, yy = 0.0L;

    std::vector<double> phi(static_cast<std::size_t>(p));
    const double dt = path.dt;
    for (int i = i_lo; i < i_hi; ++i) {
        const double x = path.values[static_cast<std::size_t>(i)];
        const double y = path.values[static_cast<std::size_t>(i) + 1] - x;
        basis.evaluate(path.time_at(i), phi);
        for (int j = 0; j < p; ++j) {
            for (int k = j; k < p; ++k) gram(j, k) += phi[static_cast<std::size_t>(j)] * phi[static_cast<std::size_t>(k)] * dt;
            cross(j) += phi[static_cast<std::size_t>(j)] * x * dt;
            rphi(j) += phi[static_cast<std::size_t>(j)] * y;
        }
        corner += static_cast<long double>(x) * x * dt;
        rx += static_cast<long double>(x) * y;
        yy += static_cast<long double>(y) * y;
    }
    for (int j = 0; j < p; ++j)
        for (int k = j; k < p; ++k) {
            out.Q(j, k) = gram(j, k);
            out.Q(k, j) = gram(j, k);
        }
    for (int j = 0; j < p; ++j) {
        out.Q(j, p) = -cross(j);
        out.Q(p, j) = -cross(j);
        out.rtilde(j) = rphi(j);
    }
    out.Q(p, p) = static_cast<double>(corner);
    out.rtilde(p) = -static_cast<double>(rx);
    out.sum_sq_increments = static_cast<double>(yy);
    return out;
}

Eigen::VectorXd coefficient_vector(const DriftParams& theta) {
    Eigen::VectorXd v(theta.p() + 1);
    for (int j = 0; j < theta.p(); ++j) v(j) = theta.mu[static_cast<std::size_t>(j)];
    v(theta.p()) = theta.a;
    return v;
}

DriftParams drift_from_coefficients(const Eigen::VectorXd& theta_vec) {
    DriftParams theta;
    const int p = static_cast<int>(theta_vec.size()) - 1;
    theta.mu.assign(theta_vec.data(), theta_vec.data() + p);
    theta.a = theta_vec(p);
    return theta;
}

double sse_of_segment(const QuadStats& stats, const DriftParams& theta) {
    if (theta.p() != stats.p())
        throw std::invalid_argument("sse_of_segment: theta dimension " + std::to_string(theta.p()) +
                                    " does not match stats dimension " + std::to_string(stats.p()));
    const Eigen::VectorXd v = coefficient_vector(theta);
    return stats.sum_sq_increments - 2.0 * stats.dt * v.dot(stats.rtilde) +
           stats.dt * v.dot(stats.Q * v);
}

}  // namespace oucp
