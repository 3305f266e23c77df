#include <cmath>

#include <doctest.h>

#include "hfc/bode.hpp"
#include "hfc/transfer_function.hpp"

using hfc::TransferFunction;

TEST_CASE("log grids") {
    SUBCASE("points per decade spacing, endpoints included") {
        const auto g = hfc::log_grid(1e-2, 1e2, 10);
        CHECK(g.size() == 41);
        CHECK(g.front() == doctest::Approx(1e-2));
        CHECK(g.back() == doctest::Approx(1e2));
        for (std::size_t i = 1; i < g.size(); ++i) {
            CHECK(g[i] > g[i - 1]);
            CHECK(g[i] / g[i - 1] == doctest::Approx(std::pow(10.0, 0.1)));
        }
    }

    SUBCASE("fixed-size grid") {
        const auto g = hfc::log_grid_n(1.0, 100.0, 5);
        CHECK(g.size() == 5);
        CHECK(g.front() == doctest::Approx(1.0));
        CHECK(g.back() == doctest::Approx(100.0));
        CHECK(g[2] == doctest::Approx(10.0));
    }
}

TEST_CASE("freq_response matches pointwise evaluation") {
    const TransferFunction g({1.0, 0.5}, {1.0, 0.8, 0.2});
    const auto grid = hfc::log_grid(1e-1, 1e1, 20);
    const auto resp = hfc::freq_response(g, grid);
    REQUIRE(resp.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(resp[i] - g.eval(grid[i])) < 1e-14);
}

TEST_CASE("bode sweep of a first-order lag") {
    const TransferFunction g = TransferFunction::first_order_lag(1.0);
    const auto data = hfc::bode(g, 1e-2, 1e2, 50);
    REQUIRE(!data.points.empty());

    // find the point closest to the corner frequency
    std::size_t at = 0;
    for (std::size_t i = 0; i < data.points.size(); ++i)
        if (std::abs(std::log10(data.points[i].omega_rad_s)) <
            std::abs(std::log10(data.points[at].omega_rad_s)))
            at = i;
    CHECK(data.points[at].mag_db == doctest::Approx(-3.01).epsilon(0.01));
    CHECK(data.points[at].phase_deg == doctest::Approx(-45.0).epsilon(0.02));

    // phase is unwrapped and monotone for this system
    for (std::size_t i = 1; i < data.points.size(); ++i)
        CHECK(data.points[i].phase_deg <= data.points[i - 1].phase_deg + 1e-9);
    CHECK(data.points.back().phase_deg == doctest::Approx(-90.0).epsilon(0.02));
}

TEST_CASE("bode phase unwrapping on a double integrator chain") {
    // 1/(s+1)^3 sweeps phase to -270 deg; without unwrapping it would fold.
    const TransferFunction lag = TransferFunction::first_order_lag(1.0);
    const auto g = hfc::series(lag, hfc::series(lag, lag));
    const auto data = hfc::bode(g, 1e-2, 1e3, 30);
    CHECK(data.points.back().phase_deg == doctest::Approx(-270.0).epsilon(0.02));
}
