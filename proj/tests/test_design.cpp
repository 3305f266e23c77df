#include <cmath>

#include <doctest.h>

#include "hfc/assets.hpp"
#include "hfc/design.hpp"
#include "hfc/errors.hpp"
#include "hfc/transfer_function.hpp"

using hfc::TransferFunction;

TEST_CASE("closed-loop bandwidth of known systems") {
    SUBCASE("first-order lag") {
        const auto bw = hfc::closed_loop_bandwidth(TransferFunction::first_order_lag(1.0));
        REQUIRE(bw.has_value());
        CHECK(*bw == doctest::Approx(1.0).epsilon(0.02));
    }

    SUBCASE("faster lag, scaled corner") {
        const auto bw = hfc::closed_loop_bandwidth(TransferFunction::first_order_lag(0.1));
        REQUIRE(bw.has_value());
        CHECK(*bw == doctest::Approx(10.0).epsilon(0.02));
    }

    SUBCASE("a constant never crosses the half-power line") {
        CHECK_FALSE(hfc::closed_loop_bandwidth(TransferFunction::constant(1.0)).has_value());
    }
}

TEST_CASE("phase margin of known loops") {
    SUBCASE("pure integrator crosses at 1 rad/s with 90 degrees") {
        const auto pm = hfc::phase_margin(TransferFunction::integrator());
        REQUIRE(pm.has_value());
        CHECK(*pm == doctest::Approx(90.0).epsilon(0.01));
    }

    SUBCASE("integrator plus lag loses phase at crossover") {
        const auto l = hfc::series(TransferFunction::integrator(),
                                   TransferFunction::first_order_lag(1.0));
        const auto pm = hfc::phase_margin(l);
        REQUIRE(pm.has_value());
        // crossover of 1/(s sqrt(1+w^2)) = 1 at w = 0.786; pm = 90 - atan(w)
        CHECK(*pm == doctest::Approx(51.8).epsilon(0.02));
    }

    SUBCASE("a loop that never reaches unity gain has no margin to report") {
        CHECK_FALSE(hfc::phase_margin(TransferFunction::constant(0.1)).has_value());
    }
}

TEST_CASE("pi tuning on the nominal asset chain") {
    const hfc::AssetParams nominal;
    const auto plant = hfc::asset_plant(nominal);
    const auto gains = hfc::pi_tune(plant, 0.25, 150.0);

    // frozen outcome of the deterministic grid search
    CHECK(gains.kp == doctest::Approx(0.8912509381337459).epsilon(1e-12));
    CHECK(gains.ki == doctest::Approx(1.6788040181225607).epsilon(1e-12));
    CHECK(gains.achieved_bw_hz == doctest::Approx(0.2385).epsilon(0.01));
    CHECK(gains.achieved_pm_deg == doctest::Approx(111.74).epsilon(0.01));
    CHECK_FALSE(gains.pm_met);  // 150 degrees is not reachable; largest margin wins

    // the bandwidth target is a hard constraint
    CHECK(gains.achieved_bw_hz == doctest::Approx(0.25).epsilon(0.10));
}

TEST_CASE("pi tuning refuses an unreachable bandwidth") {
    const hfc::AssetParams nominal;
    const auto plant = hfc::asset_plant(nominal);
    CHECK_THROWS_AS(hfc::pi_tune(plant, 500.0, 30.0), hfc::UnstableResultError);
}

TEST_CASE("estimate-filter selection on the nominal design") {
    const auto r = hfc::run_design({});

    SUBCASE("selected filter") {
        CHECK(r.selection.degree == 3);
        CHECK(r.selection.omega_c == doctest::Approx(30.0).epsilon(1e-9));
        CHECK(r.selection.q.tf.dc_gain() == doctest::Approx(1.0));
    }

    SUBCASE("raising the degree widens both bands across the trace") {
        REQUIRE(r.selection.trace.size() >= 3);
        for (std::size_t i = 0; i + 1 < 3; ++i) {
            CHECK(r.selection.trace[i + 1].unity_edge_rad_s >=
                  r.selection.trace[i].unity_edge_rad_s);
            CHECK(r.selection.trace[i + 1].noise_edge_rad_s <=
                  r.selection.trace[i].noise_edge_rad_s);
        }
    }

    SUBCASE("selected degree meets both band targets") {
        const auto& last = r.selection.trace[r.selection.degree - 1];
        CHECK(last.feasible);
        CHECK(last.unity_edge_rad_s >= 1.0);
        CHECK(last.noise_edge_rad_s <= 30.0);
    }

    SUBCASE("robustness outcome is frozen") {
        CHECK(r.corner_check.satisfied);
        CHECK(r.corner_check.min_margin_ratio ==
              doctest::Approx(4.107619161877381).epsilon(1e-9));
        CHECK(r.delay_check.satisfied);
        CHECK(r.delay_check.min_margin_ratio ==
              doctest::Approx(7.561359740662813).epsilon(1e-9));
    }
}

TEST_CASE("band measurement flags an inadequate filter") {
    const hfc::AssetParams nominal;
    const auto plant = hfc::asset_plant(nominal);
    const auto inner = hfc::asset_inner_dynamics(nominal);
    const auto c_p = TransferFunction::pi(0.8912509381337459, 1.6788040181225607);
    hfc::QSelectOptions opt;

    // A filter whose cutoff sits far below the response band cannot pass it.
    const auto low = hfc::selection_q(1, 0.05);
    const auto edges = hfc::measure_band_edges(low, c_p, plant, plant, inner, opt);
    CHECK_FALSE(edges.feasible);
    CHECK(edges.unity_edge_rad_s < opt.omega_resp);
}

TEST_CASE("selection rejects inverted band targets") {
    const hfc::AssetParams nominal;
    const auto plant = hfc::asset_plant(nominal);
    const auto inner = hfc::asset_inner_dynamics(nominal);
    const auto c_p = TransferFunction::pi(0.89, 1.68);
    hfc::QSelectOptions opt;
    opt.omega_resp = 50.0;
    opt.omega_noise = 30.0;
    CHECK_THROWS_AS(hfc::q_select(c_p, plant, plant, inner, opt),
                    hfc::NoFeasibleFilterError);
}
