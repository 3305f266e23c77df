#include <cmath>
#include <utility>
#include <vector>

#include <doctest.h>

#include "hfc/assets.hpp"
#include "hfc/transfer_function.hpp"

using hfc::AssetParams;
using hfc::DroopSettings;
using hfc::FfrSettings;

TEST_CASE("droop response") {
    DroopSettings s;
    s.enabled = true;  // deadband 0.01 Hz, droop 0.04, reserves 0.05 pu

    SUBCASE("silent inside the deadband") {
        CHECK(hfc::droop_response(50.0, 50.0, s) == 0.0);
        CHECK(hfc::droop_response(50.009, 50.0, s) == 0.0);
        CHECK(hfc::droop_response(49.991, 50.0, s) == 0.0);
    }

    SUBCASE("injects under low frequency, absorbs above") {
        CHECK(hfc::droop_response(49.9, 50.0, s) > 0.0);
        CHECK(hfc::droop_response(50.1, 50.0, s) < 0.0);
    }

    SUBCASE("slope beyond the deadband") {
        // (|df| - deadband) / (f_nom * droop)
        const double expect = (0.1 - 0.01) / (50.0 * 0.04);
        CHECK(hfc::droop_response(49.9, 50.0, s) == doctest::Approx(expect));
        CHECK(hfc::droop_response(50.1, 50.0, s) == doctest::Approx(-expect));
    }

    SUBCASE("clamped at the reserve limits") {
        CHECK(hfc::droop_response(48.0, 50.0, s) == doctest::Approx(s.reserve_up_pu));
        CHECK(hfc::droop_response(52.0, 50.0, s) == doctest::Approx(-s.reserve_down_pu));
        s.reserve_down_pu = 0.02;
        CHECK(hfc::droop_response(52.0, 50.0, s) == doctest::Approx(-0.02));
    }

    SUBCASE("disabled gives zero everywhere") {
        s.enabled = false;
        CHECK(hfc::droop_response(48.0, 50.0, s) == 0.0);
    }
}

TEST_CASE("fast reserve trapezoid") {
    FfrSettings s;
    s.enabled = true;
    s.threshold_hz = 0.2;
    s.power_pu = 0.04;
    s.t_rise_s = 0.5;
    s.t_hold_s = 2.0;
    s.t_fall_s = 1.0;
    const double dt = 0.01;

    SUBCASE("armed unit stays quiet inside the threshold") {
        hfc::FfrUnit u(s);
        for (int k = 0; k < 100; ++k) {
            CHECK(u.step(49.85, 50.0, dt) == 0.0);
        }
        CHECK_FALSE(u.active());
    }

    SUBCASE("trigger, ramp, hold, release") {
        hfc::FfrUnit u(s);
        double p = 0.0;
        // trigger (low frequency -> inject) and ride through the rise; the
        // last rise sample sits one dt short of the plateau
        for (int k = 0; k < 50; ++k) p = u.step(49.7, 50.0, dt);
        CHECK(u.active());
        CHECK(p == doctest::Approx(0.98 * s.power_pu));
        // hold plateau
        for (int k = 0; k < 100; ++k) p = u.step(49.7, 50.0, dt);
        CHECK(p == doctest::Approx(s.power_pu));
        // after hold expires the output falls back to zero
        for (int k = 0; k < 320; ++k) p = u.step(49.7, 50.0, dt);
        CHECK(p == doctest::Approx(0.0).epsilon(1e-9));
    }

    SUBCASE("over-frequency trigger absorbs") {
        hfc::FfrUnit u(s);
        double p = 0.0;
        // 150 steps: past the 0.5 s rise, inside the 2 s hold plateau
        for (int k = 0; k < 150; ++k) p = u.step(50.3, 50.0, dt);
        CHECK(p == doctest::Approx(-s.power_pu));
    }

    SUBCASE("no retrigger until frequency returns to the re-arm band") {
        hfc::FfrUnit u(s);
        // full cycle while frequency stays depressed
        for (int k = 0; k < 400; ++k) u.step(49.7, 50.0, dt);
        CHECK_FALSE(u.active());
        // still depressed: spent unit must not fire again
        double p = 0.0;
        for (int k = 0; k < 100; ++k) p = u.step(49.7, 50.0, dt);
        CHECK(p == 0.0);
        // recover inside the re-arm band, then a new event fires
        for (int k = 0; k < 100; ++k) u.step(50.0, 50.0, dt);
        for (int k = 0; k < 100; ++k) p = u.step(49.7, 50.0, dt);
        CHECK(p > 0.0);
    }

    SUBCASE("reset returns to the armed state") {
        hfc::FfrUnit u(s);
        for (int k = 0; k < 100; ++k) u.step(49.7, 50.0, dt);
        CHECK(u.active());
        u.reset();
        CHECK_FALSE(u.active());
        CHECK(u.step(49.95, 50.0, dt) == 0.0);
    }

    SUBCASE("disabled unit never fires") {
        s.enabled = false;
        hfc::FfrUnit u(s);
        for (int k = 0; k < 200; ++k) {
            CHECK(u.step(49.0, 50.0, dt) == 0.0);
        }
    }
}

TEST_CASE("capability bounds by asset kind") {
    AssetParams p;
    p.share = 0.4;
    p.available_frac = 0.8;

    SUBCASE("storage absorbs and injects symmetrically") {
        p.kind = hfc::AssetKind::EnergyStorage;
        const auto [lo, hi] = hfc::capability_bounds(p);
        CHECK(lo == doctest::Approx(-0.4));
        CHECK(hi == doctest::Approx(0.4));
    }

    SUBCASE("generation is one-sided and resource-limited") {
        p.kind = hfc::AssetKind::WindTurbine;
        const auto [lo, hi] = hfc::capability_bounds(p);
        CHECK(lo == doctest::Approx(0.0));
        CHECK(hi == doctest::Approx(0.4 * 0.8));
    }
}

TEST_CASE("parameter corners") {
    const AssetParams base;
    const hfc::AssetParamRanges r;

    SUBCASE("all 64 corners, extremes at the ends") {
        const auto corners = hfc::corner_params(base, r);
        REQUIRE(corners.size() == 64);
        CHECK(corners.front().t_cc_msc == doctest::Approx(r.t_cc_lo));
        CHECK(corners.front().ki_vc == doctest::Approx(r.ki_vc_lo));
        CHECK(corners.back().t_cc_msc == doctest::Approx(r.t_cc_hi));
        CHECK(corners.back().ki_vc == doctest::Approx(r.ki_vc_hi));
    }

    SUBCASE("bit positions map to chain parameters in order") {
        const auto lo = hfc::corner_params_at(base, 0, r);
        CHECK(lo.t_cc_msc == doctest::Approx(r.t_cc_lo));
        CHECK(lo.t_cc_gsc == doctest::Approx(r.t_cc_lo));
        CHECK(lo.kp_pc == doctest::Approx(r.kp_pc_lo));
        CHECK(lo.ki_pc == doctest::Approx(r.ki_pc_lo));
        CHECK(lo.kp_vc == doctest::Approx(r.kp_vc_lo));
        CHECK(lo.ki_vc == doctest::Approx(r.ki_vc_lo));

        const auto b0 = hfc::corner_params_at(base, 1, r);
        CHECK(b0.t_cc_msc == doctest::Approx(r.t_cc_hi));
        CHECK(b0.t_cc_gsc == doctest::Approx(r.t_cc_lo));

        const auto b5 = hfc::corner_params_at(base, 32, r);
        CHECK(b5.ki_vc == doctest::Approx(r.ki_vc_hi));
        CHECK(b5.t_cc_msc == doctest::Approx(r.t_cc_lo));

        const auto hi = hfc::corner_params_at(base, 63, r);
        CHECK(hi.t_cc_gsc == doctest::Approx(r.t_cc_hi));
        CHECK(hi.kp_pc == doctest::Approx(r.kp_pc_hi));
        CHECK(hi.ki_pc == doctest::Approx(r.ki_pc_hi));
        CHECK(hi.kp_vc == doctest::Approx(r.kp_vc_hi));
    }

    SUBCASE("untouched fields carry over from the base") {
        AssetParams named = base;
        named.name = "wpp";
        named.share = 0.7;
        const auto c = hfc::corner_params_at(named, 17, r);
        CHECK(c.name == "wpp");
        CHECK(c.share == doctest::Approx(0.7));
    }
}

TEST_CASE("small-signal chain models have unity dc gain") {
    const AssetParams p;
    CHECK(hfc::asset_command_path(p).dc_gain() == doctest::Approx(1.0));
    CHECK(hfc::asset_inner_dynamics(p).dc_gain() == doctest::Approx(1.0));
    CHECK(hfc::asset_plant(p).dc_gain() == doctest::Approx(1.0));
}

TEST_CASE("asset runtime") {
    const double dt = 0.001;

    SUBCASE("steady initialization holds the operating point") {
        AssetParams p;
        p.kind = hfc::AssetKind::EnergyStorage;
        p.share = 1.0;
        hfc::Asset a(p, dt);
        a.init_steady(0.6);
        for (int k = 0; k < 2000; ++k) {
            const double y = a.step(0.6, 50.0, 50.0);
            CHECK(y == doctest::Approx(0.6).epsilon(1e-9));
        }
        CHECK_FALSE(a.saturated());
        CHECK(a.fc_power() == doctest::Approx(0.0));
    }

    SUBCASE("command step settles at the new point") {
        hfc::Asset a(AssetParams{}, dt);
        a.init_steady(0.5);
        double y = 0.5;
        for (int k = 0; k < 20000; ++k) y = a.step(0.55, 50.0, 50.0);
        CHECK(y == doctest::Approx(0.55).epsilon(1e-4));
    }

    SUBCASE("droop layer adds to the tracked command") {
        AssetParams p;
        p.fc.droop.enabled = true;
        hfc::Asset a(p, dt);
        a.init_steady(0.5);
        double y = 0.5;
        for (int k = 0; k < 20000; ++k) y = a.step(0.5, 49.9, 50.0);
        const double inj = hfc::droop_response(49.9, 50.0, p.fc.droop);
        CHECK(a.fc_power() == doctest::Approx(inj));
        CHECK(y == doctest::Approx(0.5 + inj).epsilon(1e-3));
    }

    SUBCASE("partial delivery scales the injected response only") {
        AssetParams p;
        p.fc.droop.enabled = true;
        p.fc.delivery_scale = 0.5;
        hfc::Asset a(p, dt);
        a.init_steady(0.5);
        double y = 0.5;
        for (int k = 0; k < 20000; ++k) y = a.step(0.5, 49.9, 50.0);
        const double inj = hfc::droop_response(49.9, 50.0, p.fc.droop);
        CHECK(a.fc_power() == doctest::Approx(0.5 * inj));
        CHECK(y == doctest::Approx(0.5 + 0.5 * inj).epsilon(1e-3));
    }

    SUBCASE("saturation clamps at the capability bound and flags it") {
        AssetParams p;
        p.kind = hfc::AssetKind::WindTurbine;
        p.share = 0.5;
        p.available_frac = 1.0;
        hfc::Asset a(p, dt);
        a.init_steady(0.4);
        double y = 0.4;
        for (int k = 0; k < 20000; ++k) y = a.step(0.9, 50.0, 50.0);
        CHECK(a.saturated());
        CHECK(y == doctest::Approx(a.upper_bound()).epsilon(1e-6));
        CHECK(a.upper_bound() == doctest::Approx(0.5));
    }

    SUBCASE("generation cannot absorb below zero") {
        AssetParams p;
        p.kind = hfc::AssetKind::Photovoltaic;
        p.share = 0.5;
        hfc::Asset a(p, dt);
        a.init_steady(0.1);
        double y = 0.1;
        for (int k = 0; k < 20000; ++k) y = a.step(-0.3, 50.0, 50.0);
        CHECK(a.saturated());
        CHECK(y == doctest::Approx(0.0).epsilon(1e-6));
    }
}

TEST_CASE("asset kind names round-trip") {
    using hfc::AssetKind;
    for (const auto k :
         {AssetKind::WindTurbine, AssetKind::Photovoltaic, AssetKind::EnergyStorage}) {
        CHECK(hfc::asset_kind_from_string(hfc::to_string(k)) == k);
    }
    CHECK_THROWS(hfc::asset_kind_from_string("steam"));
}
