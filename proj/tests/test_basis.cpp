#include <cmath>

#include "doctest.h"
#include "oucp/basis.hpp"
#include "oucp/quadrature.hpp"

using namespace oucp;

namespace {

// Orthonormal over period 1 together with {1}: +1 on [0,1/2), -1 on [1/2,1).
// Discontinuous on purpose: trigonometric bases are summed exactly by
// left-point rules over whole periods, so this is the basis that actually
// exercises first-order Riemann convergence.
BasisSet square_wave_basis() {
    return BasisSet({[](double) { return 1.0; },
                     [](double t) {
                         const double u = t - std::floor(t);
                         return u < 0.5 ? 1.0 : -1.0;
                     }},
                    1.0, "square");
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("evaluate: constant basis") {
    const BasisSet basis = BasisSet::constant();
    CHECK(basis.size() == 1);
    CHECK(basis.period() == 1.0);
    CHECK(basis.evaluate(0.37)[0] == 1.0);
}

TEST_CASE("evaluate: cosine preset at t=0 and t=dt") {
    const double dt = 1.0 / 252.0;
    const BasisSet basis = BasisSet::constant_plus_cosine(dt);
    CHECK(basis.size() == 2);
    CHECK(basis.period() == doctest::Approx(4.0 * dt).epsilon(1e-15));

    const auto at0 = basis.evaluate(0.0);
    CHECK(at0[0] == 1.0);
    CHECK(at0[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // cos(pi/2) = 0 at a quarter period.
    const auto at_dt = basis.evaluate(dt);
    CHECK(at_dt[0] == 1.0);
    CHECK(std::abs(at_dt[1]) < 1e-12);
}

TEST_CASE("constructor rejects bad inputs") {
    CHECK_THROWS_AS(BasisSet({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BasisSet({[](double) { return 1.0; }}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BasisSet({[](double) { return 1.0; }}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(BasisSet::constant().evaluate(std::nan("")), std::invalid_argument);
}

TEST_CASE("validate: constant basis passes with zero residual") {
    const auto report = validate(BasisSet::constant());
    CHECK(report.passed);
    REQUIRE(report.orthonormality.size() == 1);
    CHECK(report.orthonormality[0].residual < 1e-14);
    CHECK(report.periodicity[0].residual == 0.0);
}

TEST_CASE("validate: cosine preset passes") {
    const auto report = validate(BasisSet::constant_plus_cosine(1.0 / 252.0));
    CHECK(report.passed);
    for (const auto& r : report.orthonormality) CHECK(r.residual < 1e-6);
}

TEST_CASE("validate: duplicated function fails on pair (1,2) with residual 1") {
    const BasisSet dup({[](double) { return 1.0; }, [](double) { return 1.0; }}, 1.0);
    const auto report = validate(dup);
    CHECK_FALSE(report.passed);
    bool found = false;
    for (const auto& r : report.orthonormality) {
        if (r.j == 1 && r.k == 2) {
            found = true;
            CHECK_FALSE(r.ok);
            CHECK(r.residual == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    CHECK(found);
    CHECK(report.summary().find("(1,2)") != std::string::npos);
    CHECK_THROWS_AS(validate_or_throw(dup), std::invalid_argument);
}

TEST_CASE("validate: non-periodic function is caught") {
    const BasisSet drift({[](double t) { return 1.0 + t; }}, 1.0);
    const auto report = validate(drift);
    CHECK_FALSE(report.passed);
    CHECK_FALSE(report.periodicity[0].ok);
}

TEST_CASE("preset lookup") {
    CHECK(make_preset_basis("constant", 0.0).name() == "constant");
    CHECK(make_preset_basis("cosine", 1.0 / 252.0).name() == "cosine");
    CHECK_THROWS_AS(make_preset_basis("fourier", 1.0), std::invalid_argument);
}

TEST_CASE("Gram matrix converges to k*v*I at first order in dt") {
    const BasisSet basis = square_wave_basis();
    REQUIRE(validate(basis).passed);

    const int k = 2;  // periods
    const double kv = k * basis.period();
    // Odd points per period so the jump never lands on the grid.
    const auto gram_error = [&](int points_per_period) {
        const int m = k * points_per_period;
        SamplePath zero;
        zero.dt = kv / m;
        zero.values.assign(static_cast<std::size_t>(m) + 1, 0.0);
        const QuadStats stats = compute_stats(zero, basis, 0, m);
        double err = 0.0;
        for (int j = 0; j < basis.size(); ++j)
            for (int l = 0; l < basis.size(); ++l)
                err = std::max(err, std::abs(stats.Q(j, l) - (j == l ? kv : 0.0)));
        return err;
    };

    const double coarse = gram_error(101);
    const double fine = gram_error(201);
    CHECK(fine < coarse);
    CHECK(fine < 0.05 * kv);

    const double observed_ratio = coarse / fine;
    const double expected_ratio = 201.0 / 101.0;  // dt_coarse / dt_fine
    CHECK(observed_ratio > 0.5 * expected_ratio);
    CHECK(observed_ratio < 1.5 * expected_ratio);
}

}  // TEST_SUITE
