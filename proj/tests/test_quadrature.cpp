#include <Eigen/Eigenvalues>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "oucp/estimate.hpp"
#include "oucp/quadrature.hpp"
#include "oucp/simulate.hpp"

using namespace oucp;

TEST_SUITE("quadrature") {

TEST_CASE("zero path: only the basis Gram block survives") {
    SamplePath path{0.0, 0.25, {0, 0, 0, 0, 0}};
    const QuadStats s = compute_stats(path, BasisSet::constant(), 0, 4);
    CHECK(s.Q(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.Q(0, 1) == 0.0);
    CHECK(s.Q(1, 0) == 0.0);
    CHECK(s.Q(1, 1) == 0.0);
    CHECK(s.rtilde(0) == 0.0);
    CHECK(s.rtilde(1) == 0.0);
    CHECK(s.sum_sq_increments == 0.0);
}

TEST_CASE("constant path: zero increments, rank-one Q") {
    SamplePath path{0.0, 0.5, {1, 1, 1}};
    const QuadStats s = compute_stats(path, BasisSet::constant(), 0, 2);
    CHECK(s.Q(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.Q(0, 1) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s.Q(1, 0) == s.Q(0, 1));
    CHECK(s.Q(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.rtilde(0) == 0.0);
    CHECK(s.rtilde(1) == 0.0);
}

TEST_CASE("additivity: split statistics sum to the full interval") {
    const SamplePath path = oracle::random_path(20, 0.1, 31);
    const BasisSet basis = BasisSet::constant();
    const QuadStats full = compute_stats(path, basis, 0, 20);
    const QuadStats left = compute_stats(path, basis, 0, 10);
    const QuadStats right = compute_stats(path, basis, 10, 20);
    for (int j = 0; j <= 1; ++j) {
        CHECK(oracle::rel_diff(left.rtilde(j) + right.rtilde(j), full.rtilde(j)) < 1e-10);
        for (int k = 0; k <= 1; ++k)
            CHECK(oracle::rel_diff(left.Q(j, k) + right.Q(j, k), full.Q(j, k)) < 1e-10);
    }
    CHECK(oracle::rel_diff(left.sum_sq_increments + right.sum_sq_increments,
                           full.sum_sq_increments) < 1e-10);
}

TEST_CASE("prefix sums match direct summation and the naive oracle") {
    const double dt = 1.0 / 252.0;
    const BasisSet basis = BasisSet::constant_plus_cosine(dt);
    SegmentedModel model{DriftParams{{0.08, 0.02}, 0.1}, DriftParams{{2.5, 1.2}, 1.0}, 0.5, 0.2};
    const SamplePath path = simulate_euler(model, basis, 2.0, dt, 0.05, 123);
    const PathStats ps(path, basis);

    for (auto [lo, hi] : {std::pair{0, 504}, {0, 100}, {100, 300}, {250, 504}, {3, 17}}) {
        const QuadStats fast = ps.stats(lo, hi);
        const QuadStats direct = compute_stats(path, basis, lo, hi);
        const auto naive = oracle::naive_stats(path, basis, lo, hi);
        // Cosine cross-terms cancel to near zero, so tolerances are relative
        // to the matrix scale rather than entrywise.
        const double q_scale = fast.Q.cwiseAbs().maxCoeff();
        const double r_scale = std::max(fast.rtilde.cwiseAbs().maxCoeff(), 1e-12);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(fast.rtilde(j) - direct.rtilde(j)) < 1e-12 * r_scale);
            CHECK(std::abs(fast.rtilde(j) - naive.rtilde(j)) < 1e-10 * r_scale);
            for (int k = 0; k < 3; ++k) {
                CHECK(fast.Q(j, k) == fast.Q(k, j));  // assembled symmetric
                CHECK(std::abs(fast.Q(j, k) - direct.Q(j, k)) < 1e-12 * q_scale);
                CHECK(std::abs(fast.Q(j, k) - naive.Q(j, k)) < 1e-10 * q_scale);
            }
        }
        CHECK(oracle::rel_diff(fast.sum_sq_increments, naive.sum_sq_increments) < 1e-10);
    }
}

TEST_CASE("positive definiteness on noisy paths (>= p+2 points)") {
    const double dt = 1.0 / 252.0;
    for (int scenario : {1, 2}) {
        const BasisSet basis =
            scenario == 1 ? BasisSet::constant() : BasisSet::constant_plus_cosine(dt);
        DriftParams theta{scenario == 1 ? std::vector<double>{2.5} : std::vector<double>{2.5, 1.2},
                          1.0};
        SegmentedModel model{theta, theta, std::nullopt, 0.2};
        const SamplePath path = simulate_euler(model, basis, 1.0, dt, 0.05, 5 + scenario);
        const PathStats ps(path, basis);
        const int p = basis.size();
        for (auto [lo, hi] : {std::pair{0, p + 2}, {10, 40}, {0, 252}, {200, 252}}) {
            const QuadStats s = ps.stats(lo, hi);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.Q);
            CHECK(eig.eigenvalues().minCoeff() > 0.0);
        }
    }
}

TEST_CASE("sse_of_segment: zero model returns sum of squared increments") {
    const SamplePath path = oracle::random_path(50, 0.1, 99);
    const QuadStats s = compute_stats(path, BasisSet::constant(), 0, 50);
    DriftParams zero{{0.0}, 0.0};
    CHECK(sse_of_segment(s, zero) == doctest::Approx(s.sum_sq_increments).epsilon(1e-15));
}

TEST_CASE("sse_of_segment: exact fit on a deterministic path") {
    // Small-magnitude path keeps the cancellation residue far below 1e-18.
    SegmentedModel model{DriftParams{{0.01}, 1.0}, DriftParams{{0.01}, 1.0}, std::nullopt, 0.0};
    const SamplePath path = simulate_euler(model, BasisSet::constant(), 2.0, 1.0 / 252.0, 0.02, 1);
    const QuadStats s = compute_stats(path, BasisSet::constant(), 0, path.steps());
    CHECK(std::abs(sse_of_segment(s, model.theta1)) <= 1e-18);
}

TEST_CASE("sse_of_segment matches the naive residual loop") {
    const SamplePath path = oracle::random_path(10, 0.2, 404, 0.5, 1.0);
    const QuadStats s = compute_stats(path, BasisSet::constant(), 0, 10);
    for (auto [m, a] : {std::pair{0.3, 0.7}, {-1.0, 2.0}, {5.0, -0.4}}) {
        DriftParams theta{{m}, a};
        CHECK(oracle::rel_diff(sse_of_segment(s, theta),
                               oracle::naive_sse(path, BasisSet::constant(), 0, 10, {m}, a)) <
              1e-12);
    }
    DriftParams wrong_dim{{1.0, 2.0}, 0.5};
    CHECK_THROWS_AS(sse_of_segment(s, wrong_dim), std::invalid_argument);
}

TEST_CASE("OLS identity: regression solution equals Q^{-1} rtilde") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const SamplePath path = oracle::random_path(60, 0.05, seed, 0.3, 0.5);
        const Eigen::VectorXd ols = oracle::naive_ols(path, BasisSet::constant(), 0, 60);
        const SegmentFit fit = fit_mle(path, BasisSet::constant(), 0, 60);
        CHECK(oracle::rel_diff(ols(0), fit.theta.mu[0]) < 1e-10);
        CHECK(oracle::rel_diff(ols(1), fit.theta.a) < 1e-10);
    }
}

TEST_CASE("scaling: path times c scales the X blocks by c and c^2") {
    const SamplePath path = oracle::random_path(40, 0.1, 7, 1.0, 2.0);
    SamplePath scaled = path;
    const double c = 3.5;
    for (double& v : scaled.values) v *= c;
    const QuadStats s1 = compute_stats(path, BasisSet::constant(), 0, 40);
    const QuadStats s2 = compute_stats(scaled, BasisSet::constant(), 0, 40);
    CHECK(oracle::rel_diff(s2.Q(0, 0), s1.Q(0, 0)) < 1e-12);            // Gram unchanged
    CHECK(oracle::rel_diff(s2.Q(0, 1), c * s1.Q(0, 1)) < 1e-12);        // cross ~ c
    CHECK(oracle::rel_diff(s2.Q(1, 1), c * c * s1.Q(1, 1)) < 1e-12);    // corner ~ c^2
    CHECK(oracle::rel_diff(s2.rtilde(0), c * s1.rtilde(0)) < 1e-12);
    CHECK(oracle::rel_diff(s2.rtilde(1), c * c * s1.rtilde(1)) < 1e-12);
}

TEST_CASE("(1/T) Q approaches the stationary second moments at T=200") {
    SegmentedModel model{DriftParams{{2.5}, 1.0}, DriftParams{{2.5}, 1.0}, std::nullopt, 0.2};
    const SamplePath path = simulate_euler(model, BasisSet::constant(), 200.0, 1.0 / 252.0, 2.5, 8);
    const QuadStats s = compute_stats(path, BasisSet::constant(), 0, path.steps());
    const double T = path.horizon();
    CHECK(s.Q(0, 0) / T == doctest::Approx(1.0).epsilon(1e-12));
    const double corner_limit = 2.5 * 2.5 + 0.2 * 0.2 / 2.0;  // (mu/a)^2 + sigma^2/(2a)
    CHECK(std::abs(s.Q(1, 1) / T - corner_limit) < 0.1 * corner_limit);
    CHECK(std::abs(std::abs(s.Q(0, 1)) / T - 2.5) < 0.25);
}

TEST_CASE("range errors") {
    const SamplePath path = oracle::random_path(10, 0.1, 1);
    CHECK_THROWS_AS(compute_stats(path, BasisSet::constant(), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(compute_stats(path, BasisSet::constant(), -1, 5), std::invalid_argument);
    CHECK_THROWS_AS(compute_stats(path, BasisSet::constant(), 0, 11), std::invalid_argument);
    CHECK_THROWS_AS(compute_stats(path, BasisSet::constant(), 5, 5), std::invalid_argument);
    const PathStats ps(path, BasisSet::constant());
    CHECK_THROWS_AS(ps.stats(4, 5), std::invalid_argument);
}

}  // TEST_SUITE
