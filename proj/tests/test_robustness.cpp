#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "hfc/assets.hpp"
#include "hfc/design.hpp"
#include "hfc/errors.hpp"
#include "hfc/observer_loops.hpp"
#include "hfc/qfilter.hpp"
#include "hfc/robustness.hpp"
#include "hfc/transfer_function.hpp"

using hfc::TransferFunction;

namespace {

TransferFunction nominal_loop() {
    const hfc::AssetParams nominal;
    const auto plant = hfc::asset_plant(nominal);
    const auto c_p = TransferFunction::pi(0.8912509381337459, 1.6788040181225607);
    const auto q = hfc::selection_q(3, 30.0);
    return hfc::observer_loop_transfer(q, c_p, plant, plant);
}

}  // namespace

TEST_CASE("frequency grid spans the requested range") {
    hfc::RobustnessGrid grid;
    grid.w_min = 0.1;
    grid.w_max = 10.0;
    grid.n_points = 9;
    const auto w = hfc::robustness_frequencies(grid);
    REQUIRE(w.size() == 9);
    CHECK(w.front() == doctest::Approx(0.1));
    CHECK(w.back() == doctest::Approx(10.0));
    CHECK(std::is_sorted(w.begin(), w.end()));
}

TEST_CASE("delay envelope follows the chord formula and caps at 2") {
    const std::vector<double> omega = {0.1, 1.0, 10.0, 100.0, 1000.0};
    const double t_max = 0.5;
    const auto env = hfc::delay_envelope(t_max, omega);
    REQUIRE(env.size() == omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double wt = omega[i] * t_max;
        const double expect = wt >= M_PI ? 2.0 : 2.0 * std::sin(wt / 2.0);
        CHECK(env[i] == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(env.back() == doctest::Approx(2.0));
}

TEST_CASE("model envelope is the worst relative deviation") {
    const auto nominal = TransferFunction::first_order_lag(1.0);
    const std::vector<TransferFunction> perturbed = {
        TransferFunction::first_order_lag(0.5),
        TransferFunction::first_order_lag(2.0),
    };
    const std::vector<double> omega = {0.5, 1.0, 5.0};
    const auto env = hfc::uncertainty_envelope(nominal, perturbed, omega);
    REQUIRE(env.size() == omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        double worst = 0.0;
        for (const auto& p : perturbed) {
            const auto rel = p.eval(omega[i]) / nominal.eval(omega[i]) - 1.0;
            worst = std::max(worst, std::abs(rel));
        }
        CHECK(env[i] == doctest::Approx(worst).epsilon(1e-12));
    }
}

TEST_CASE("nominal design tolerates the parameter corners") {
    const hfc::AssetParams nominal;
    const auto loop = nominal_loop();
    std::vector<TransferFunction> corners;
    for (const auto& p : hfc::corner_params(nominal, {})) {
        corners.push_back(hfc::asset_plant(p));
    }
    REQUIRE(corners.size() == 64);

    const auto report = hfc::robust_check_models(loop, hfc::asset_plant(nominal), corners);
    CHECK(report.satisfied);
    CHECK(report.min_margin_ratio > 1.0);
    CHECK(report.min_margin_ratio == doctest::Approx(4.107619161877381).epsilon(1e-9));

    REQUIRE(!report.omega_rad_s.empty());
    CHECK(report.envelope_mag.size() == report.omega_rad_s.size());
    CHECK(report.weight_mag.size() == report.omega_rad_s.size());
    CHECK(report.margin_mag.size() == report.omega_rad_s.size());
    for (std::size_t i = 0; i < report.omega_rad_s.size(); ++i) {
        CHECK(report.weight_mag[i] >= report.envelope_mag[i] - 1e-12);
        CHECK(report.envelope_mag[i] < report.margin_mag[i]);
    }
}

TEST_CASE("nominal design tolerates command delay up to two seconds") {
    const auto report = hfc::robust_check_delay(nominal_loop(), 2.0);
    CHECK(report.satisfied);
    CHECK(report.min_margin_ratio > 1.0);
    CHECK(report.min_margin_ratio == doctest::Approx(7.561359740662813).epsilon(1e-9));
}

TEST_CASE("an aggressive loop fails the delay check honestly") {
    // High-gain PI without any estimate filtering: margins collapse near
    // crossover, so a 2 s delay uncertainty cannot be absorbed.
    const hfc::AssetParams nominal;
    const auto plant = hfc::asset_plant(nominal);
    const auto c_p = TransferFunction::pi(40.0, 80.0);
    const auto loop = hfc::series(c_p, plant);
    const auto report = hfc::robust_check_delay(loop, 2.0);
    CHECK_FALSE(report.satisfied);
    CHECK(report.min_margin_ratio < 1.0);
}

TEST_CASE("lead weight dominates its envelope") {
    hfc::RobustnessGrid grid;
    const auto omega = hfc::robustness_frequencies(grid);
    const auto nominal = TransferFunction::first_order_lag(1.0);
    const std::vector<TransferFunction> perturbed = {
        TransferFunction::first_order_lag(0.7),
        TransferFunction::first_order_lag(1.5),
    };
    const auto env = hfc::uncertainty_envelope(nominal, perturbed, omega);
    const auto weight = hfc::fit_lead_weight(omega, env);
    for (std::size_t i = 0; i < omega.size(); ++i) {
        CHECK(std::abs(weight.eval(omega[i])) >= env[i] - 1e-9);
    }
}

TEST_CASE("delay weight dominates the chord envelope") {
    hfc::RobustnessGrid grid;
    const auto omega = hfc::robustness_frequencies(grid);
    const double t_max = 2.0;
    const auto env = hfc::delay_envelope(t_max, omega);
    const auto weight = hfc::fit_delay_weight(t_max, omega, env);
    for (std::size_t i = 0; i < omega.size(); ++i) {
        CHECK(std::abs(weight.eval(omega[i])) >= env[i] - 1e-9);
    }
}
