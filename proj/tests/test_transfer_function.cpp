#include <cmath>
#include <complex>

#include <doctest.h>

#include "hfc/errors.hpp"
#include "hfc/transfer_function.hpp"

using hfc::TransferFunction;

TEST_CASE("construction and canonical form") {
    SUBCASE("trailing zero coefficients are stripped") {
        TransferFunction g({1.0, 0.0, 0.0}, {1.0, 1.0, 0.0});
        CHECK(g.num_degree() == 0);
        CHECK(g.den_degree() == 1);
    }

    SUBCASE("default is the identity") {
        TransferFunction g;
        CHECK(g.dc_gain() == doctest::Approx(1.0));
        CHECK(std::abs(g.eval(3.7)) == doctest::Approx(1.0));
    }

    SUBCASE("zero denominator is rejected") {
        CHECK_THROWS_AS(TransferFunction({1.0}, {0.0, 0.0}), hfc::ZeroDenominatorError);
    }

    SUBCASE("empty coefficient lists are rejected") {
        CHECK_THROWS_AS(TransferFunction({}, {1.0}), std::invalid_argument);
    }

    SUBCASE("non-finite coefficients are rejected") {
        const double inf = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(TransferFunction({inf}, {1.0}), hfc::NonFiniteInputError);
    }
}

TEST_CASE("degree queries") {
    const TransferFunction lag = TransferFunction::first_order_lag(0.5);
    CHECK(lag.relative_degree() == 1);
    CHECK(lag.is_proper());

    const TransferFunction d({0.0, 1.0}, {1.0});  // pure derivative
    CHECK(d.relative_degree() == -1);
    CHECK_FALSE(d.is_proper());

    const TransferFunction z({0.0}, {1.0});
    CHECK(z.is_zero());
}

TEST_CASE("evaluation against hand results") {
    SUBCASE("first-order lag at its corner") {
        const TransferFunction g = TransferFunction::first_order_lag(1.0);
        const auto v = g.eval(1.0);  // 1/(1+j)
        CHECK(std::abs(v) == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::arg(v) == doctest::Approx(-M_PI / 4));
        CHECK(g.dc_gain() == doctest::Approx(1.0));
    }

    SUBCASE("integrator") {
        const TransferFunction g = TransferFunction::integrator();
        const auto v = g.eval(2.0);  // 1/(2j)
        CHECK(v.real() == doctest::Approx(0.0));
        CHECK(v.imag() == doctest::Approx(-0.5));
        CHECK_THROWS_AS(g.dc_gain(), hfc::PoleOnGridError);
        CHECK_THROWS_AS(g.eval(0.0), hfc::PoleOnGridError);
    }

    SUBCASE("pi controller") {
        const TransferFunction g = TransferFunction::pi(2.0, 3.0);  // (2s+3)/s
        const auto v = g.eval(1.0);
        CHECK(v.real() == doctest::Approx(2.0));
        CHECK(v.imag() == doctest::Approx(-3.0));
    }

    SUBCASE("arbitrary complex point") {
        const TransferFunction g({1.0}, {1.0, 1.0});
        const auto v = g.eval_at({-0.5, 0.5});  // 1/(0.5 + 0.5j)
        CHECK(std::abs(v) == doctest::Approx(std::sqrt(2.0)));
    }
}

TEST_CASE("algebra") {
    const TransferFunction lag = TransferFunction::first_order_lag(1.0);
    const TransferFunction gain2 = TransferFunction::constant(2.0);

    SUBCASE("series multiplies responses") {
        const auto s = hfc::series(lag, gain2);
        CHECK(s.dc_gain() == doctest::Approx(2.0));
        CHECK(std::abs(s.eval(1.0)) == doctest::Approx(2.0 / std::sqrt(2.0)));
    }

    SUBCASE("parallel adds responses") {
        const auto p = hfc::parallel(lag, gain2);
        CHECK(p.dc_gain() == doctest::Approx(3.0));
    }

    SUBCASE("parallel over a shared denominator does not square it") {
        const TransferFunction a({1.0}, {1.0, 2.0});
        const TransferFunction b({0.0, 1.0}, {1.0, 2.0});
        const auto p = hfc::parallel(a, b);
        CHECK(p.den_degree() == 1);
        CHECK(p.num() == std::vector<double>{1.0, 1.0});
    }

    SUBCASE("unity feedback of an integrator is a lag") {
        const auto t = hfc::feedback_unity(TransferFunction::integrator());
        // 1/s / (1 + 1/s) = 1/(s+1)
        for (double w : {0.1, 1.0, 10.0}) {
            const auto expect = TransferFunction::first_order_lag(1.0).eval(w);
            CHECK(std::abs(t.eval(w) - expect) < 1e-12);
        }
    }

    SUBCASE("feedback with a loop that cancels throws") {
        // g = 1, h = -1: 1 + g h = 0
        const auto one = TransferFunction::constant(1.0);
        const auto minus = TransferFunction::constant(-1.0);
        CHECK_THROWS_AS(hfc::feedback(one, minus), hfc::ZeroDenominatorError);
    }

    SUBCASE("negate flips the sign everywhere") {
        const auto n = hfc::negate(lag);
        CHECK(std::abs(n.eval(0.7) + lag.eval(0.7)) < 1e-14);
    }
}

TEST_CASE("make_proper") {
    SUBCASE("proper blocks pass through unchanged") {
        const TransferFunction g({1.0, 1.0}, {1.0, 2.0, 1.0});
        const auto p = hfc::make_proper(g);
        CHECK(p.num() == g.num());
        CHECK(p.den() == g.den());
    }

    SUBCASE("improper blocks gain roll-off poles and keep low-frequency behavior") {
        const TransferFunction d({0.0, 1.0}, {1.0});  // s
        const auto p = hfc::make_proper(d);
        CHECK(p.is_proper());
        // At low frequency the augmented block still behaves like s.
        CHECK(std::abs(p.eval(0.01)) == doctest::Approx(0.01).epsilon(0.01));
    }
}
