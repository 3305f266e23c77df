#include <cmath>
#include <complex>

#include <doctest.h>

#include "hfc/observer_loops.hpp"
#include "hfc/qfilter.hpp"
#include "hfc/transfer_function.hpp"

using hfc::QFilter;
using hfc::TransferFunction;

namespace {

// A small but representative loop: PI controller, second-order plant split
// into a command stage and an actuation stage.
struct Fixture {
    TransferFunction c_p = TransferFunction::pi(0.9, 1.7);
    TransferFunction inner = TransferFunction::first_order_lag(0.05);
    TransferFunction g =
        hfc::series(TransferFunction::first_order_lag(0.2), inner);
};

QFilter unity_q() {
    QFilter q;
    q.degree = 0;
    q.omega_c = 0.0;
    q.tf = TransferFunction::constant(1.0);
    return q;
}

QFilter zero_q() {
    QFilter q;
    q.degree = 0;
    q.omega_c = 0.0;
    q.tf = TransferFunction::constant(0.0);
    return q;
}

}  // namespace

TEST_CASE("perfect estimation limit accepts the response exactly") {
    const Fixture f;
    const auto loops = hfc::observer_closed_loops(f.c_p, f.g, f.g, unity_q(), f.inner);
    for (double w : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        // injected response passes through the actuation stage untouched
        CHECK(std::abs(loops.g_pdy.eval(w) - f.inner.eval(w)) < 1e-9);
        // and measurement noise is fully stripped from the estimate path
        CHECK(std::abs(loops.g_ny.eval(w)) < 1e-9);
    }
}

TEST_CASE("disabled estimation reduces to the plain tracking loop") {
    const Fixture f;
    const auto loops = hfc::observer_closed_loops(f.c_p, f.g, f.g, zero_q(), f.inner);
    const auto plain = hfc::plain_tracking_loop(f.c_p, f.g);
    for (double w : {0.01, 0.1, 1.0, 10.0}) {
        const auto l = f.c_p.eval(w) * f.g.eval(w);
        // the response injection is rejected by the tracking loop
        const auto expect_pdy = f.inner.eval(w) / (1.0 + l);
        CHECK(std::abs(loops.g_pdy.eval(w) - expect_pdy) < 1e-9);
        // noise shows up with the full tracking-loop gain
        CHECK(std::abs(std::abs(loops.g_ny.eval(w)) - std::abs(plain.eval(w))) < 1e-9);
    }
}

TEST_CASE("closed-loop responses match complex arithmetic at every band") {
    const Fixture f;
    const auto q = hfc::butterworth_q(3, 30.0);
    const auto loops = hfc::observer_closed_loops(f.c_p, f.g, f.g, q, f.inner);
    for (double w : {0.02, 0.3, 3.0, 30.0, 300.0}) {
        const auto cp = f.c_p.eval(w), g = f.g.eval(w), qv = q.tf.eval(w),
                   ca = f.inner.eval(w);
        const auto delta = 1.0 + cp * g;  // with g_n = g the q terms cancel in the sum
        const auto pdy = ca * (1.0 + qv * cp * g) / delta;
        const auto ny = -(1.0 - qv) * cp * g / delta;
        CHECK(std::abs(loops.g_pdy.eval(w) - pdy) < 1e-8 * (1.0 + std::abs(pdy)));
        CHECK(std::abs(loops.g_ny.eval(w) - ny) < 1e-8 * (1.0 + std::abs(ny)));
        // setpoint channel is the ordinary complementary sensitivity
        CHECK(std::abs(loops.g_yry.eval(w) - cp * g / delta) < 1e-8);
    }
}

TEST_CASE("equivalent open loop for margin analysis") {
    const Fixture f;
    SUBCASE("no filtering leaves the raw loop gain") {
        const auto l = hfc::observer_loop_transfer(zero_q(), f.c_p, f.g, f.g);
        for (double w : {0.1, 1.0, 10.0})
            CHECK(std::abs(l.eval(w) - f.c_p.eval(w) * f.g.eval(w)) < 1e-9);
    }

    SUBCASE("perfect estimation removes the loop entirely") {
        const auto l = hfc::observer_loop_transfer(unity_q(), f.c_p, f.g, f.g);
        for (double w : {0.1, 1.0, 10.0}) CHECK(std::abs(l.eval(w)) < 1e-9);
    }

    SUBCASE("band-limited filtering strips gain inside the pass band only") {
        const auto q = hfc::butterworth_q(3, 30.0);
        const auto l = hfc::observer_loop_transfer(q, f.c_p, f.g, f.g);
        const auto raw = hfc::series(f.c_p, f.g);
        CHECK(std::abs(l.eval(0.01)) < 0.02 * std::abs(raw.eval(0.01)));
        CHECK(std::abs(l.eval(300.0)) ==
              doctest::Approx(std::abs(raw.eval(300.0))).epsilon(0.2));
    }
}
