#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dipgp/sweep.hpp"

using namespace dipgp;

namespace {

SweepPlan small_plan() {
    SweepPlan plan;
    plan.beta = 0.25;
    plan.Ns = {8, 32, 128};
    plan.t_final = 0.2;
    plan.dt = 5e-3;
    plan.grid = Grid3(16, 8.0);
    plan.pot.a = 1.0;
    plan.pot.b = 0.5;
    plan.pot.sigma = 0.25;
    plan.pot.R = 0.25;
    plan.pot.center = {0.3, 0.2, 0.1};
    plan.init.sigma = 0.8;
    plan.threads = 2;
    return plan;
}

std::vector<SweepRow> synthetic(double c, double exponent) {
    std::vector<SweepRow> rows;
    for (long N : {8L, 16L, 32L, 64L})
        rows.push_back({N, c * std::pow(static_cast<double>(N), exponent), 0.0, 0.0, 0.0});
    return rows;
}

} // namespace

TEST_CASE("rate fit recovers exact log-linear data") {
    {
        const RateFit fit = fit_rate(synthetic(1.0, -0.25));
        CHECK(std::abs(fit.slope + 0.25) < 1e-12);
        CHECK(std::abs(fit.intercept) < 1e-12);
        CHECK(fit.residual < 1e-13);
    }
    {
        const RateFit fit = fit_rate(synthetic(3.0, -0.4));
        CHECK(std::abs(fit.slope + 0.4) < 1e-12);
        CHECK(std::abs(fit.intercept - std::log(3.0)) < 1e-12);
    }
}

TEST_CASE("rate fit refuses degenerate inputs") {
    std::vector<SweepRow> two = {{8, 0.1, 0, 0, 0}, {16, 0.05, 0, 0, 0}};
    CHECK_THROWS_AS(fit_rate(two), UsageError);

    std::vector<SweepRow> floor = synthetic(1.0, -0.25);
    floor[2].error_l2 = 1e-14;
    try {
        fit_rate(floor);
        FAIL("expected inconclusive-fit error");
    } catch (const AccuracyError& e) {
        CHECK(std::string(e.what()).find("increase t_final") != std::string::npos);
    }
}

TEST_CASE("plan validation") {
    SweepPlan plan = small_plan();
    plan.Ns = {8};
    CHECK_THROWS_AS(plan.validate(), UsageError);
    plan.Ns = {32, 8};
    CHECK_THROWS_AS(plan.validate(), UsageError);
}

TEST_CASE("errors decrease with N and respect the time-growth direction") {
    SweepPlan plan = small_plan();
    const auto rows = run_sweep(plan);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].error_l2 > rows[1].error_l2);
    CHECK(rows[1].error_l2 > rows[2].error_l2);
    for (const auto& r : rows) {
        CHECK(r.mass_drift < 1e-10);
        CHECK(r.error_density_l1 > 0.0);
    }

    SweepPlan longer = plan;
    longer.t_final = 0.4;
    const auto rows2 = run_sweep(longer);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(rows2[i].error_l2 >= rows[i].error_l2 * (1.0 - 1e-9));
}

TEST_CASE("a common global phase on the initial data changes nothing") {
    SweepPlan plan = small_plan();
    SweepPlan phased = plan;
    phased.init.global_phase = 0.448798950512827; // pi/7
    const auto r1 = run_sweep(plan);
    const auto r2 = run_sweep(phased);
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(std::abs(r1[i].error_l2 - r2[i].error_l2) < 1e-12);
        CHECK(std::abs(r1[i].error_density_l1 - r2[i].error_density_l1) < 1e-12);
    }
}

TEST_CASE("the N -> infinity proxy reproduces the limiting trajectory") {
    SweepPlan plan = small_plan();
    plan.use_limit_multiplier_proxy = true;
    const auto rows = run_sweep(plan);
    for (const auto& r : rows) CHECK(r.error_l2 < 1e-9);
}

TEST_CASE("fitted slope tracks -beta, with and without the dipolar part") {
    SweepPlan plan = small_plan();
    plan.Ns = {8, 16, 32, 64, 128};
    plan.t_final = 0.3;
    const RateFit with_dip = fit_rate(run_sweep(plan));
    MESSAGE("slope with b > 0: ", with_dip.slope);
    CHECK(std::abs(with_dip.slope + plan.beta) < 0.12);

    plan.pot.b = 0.0;
    const RateFit no_dip = fit_rate(run_sweep(plan));
    MESSAGE("slope with b = 0: ", no_dip.slope);
    CHECK(std::abs(no_dip.slope + plan.beta) < 0.12);

    // the dipolar defect is second order in N^{-beta}; it must not push the
    // fitted slope below -2 beta - 0.1
    CHECK(with_dip.slope > -2.0 * plan.beta - 0.1);
}
