#include <cmath>
#include <limits>

#include <doctest.h>

#include "hfc/discrete_filter.hpp"
#include "hfc/errors.hpp"
#include "hfc/transfer_function.hpp"

using hfc::DiscreteFilter;
using hfc::TransferFunction;

TEST_CASE("first-order lag step response") {
    const double tau = 1.0, dt = 0.001;
    auto f = DiscreteFilter::from_continuous(TransferFunction::first_order_lag(tau), dt);

    double y = 0.0;
    for (int k = 0; k < 1000; ++k) y = f.step(1.0);  // advance to t = tau
    CHECK(y == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-3));

    for (int k = 0; k < 9000; ++k) y = f.step(1.0);  // t = 10 tau
    CHECK(y == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dc gain matches the continuous model") {
    const TransferFunction g({2.0, 1.0}, {4.0, 3.0, 1.0});
    const auto f = DiscreteFilter::from_continuous(g, 0.01);
    CHECK(f.dc_gain() == doctest::Approx(g.dc_gain()));
}

TEST_CASE("priming yields the exact steady state immediately") {
    const TransferFunction g({3.0, 1.0}, {6.0, 5.0, 1.0});
    auto f = DiscreteFilter::from_continuous(g, 0.01);
    f.prime(0.7);
    const double expect = g.dc_gain() * 0.7;
    for (int k = 0; k < 50; ++k) CHECK(f.step(0.7) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("reset clears state") {
    auto f = DiscreteFilter::from_continuous(TransferFunction::first_order_lag(0.1), 0.01);
    for (int k = 0; k < 100; ++k) f.step(1.0);
    f.reset();
    CHECK(f.step(0.0) == doctest::Approx(0.0));
}

TEST_CASE("a static gain passes the input straight through") {
    DiscreteFilter f({2.5}, {1.0}, 0.01);
    CHECK(f.step(2.0) == doctest::Approx(5.0));
    CHECK(f.step(-1.0) == doctest::Approx(-2.5));
}

TEST_CASE("rejected inputs") {
    SUBCASE("improper system") {
        const TransferFunction d({0.0, 1.0}, {1.0});
        CHECK_THROWS_AS(DiscreteFilter::from_continuous(d, 0.01),
                        hfc::ImproperSystemError);
    }

    SUBCASE("pole at the bilinear singularity") {
        const double dt = 0.01, c = 2.0 / dt;
        const TransferFunction g({1.0}, {-c, 1.0});  // pole at s = +2/dt
        CHECK_THROWS_AS(DiscreteFilter::from_continuous(g, dt),
                        hfc::TustinSingularityError);
    }

    SUBCASE("non-finite sample") {
        auto f = DiscreteFilter::from_continuous(TransferFunction::first_order_lag(1.0),
                                                 0.01);
        CHECK_THROWS_AS(f.step(std::numeric_limits<double>::quiet_NaN()),
                        hfc::NonFiniteInputError);
    }

    SUBCASE("zero leading denominator coefficient") {
        CHECK_THROWS_AS(DiscreteFilter({1.0}, {0.0, 1.0}, 0.01), std::invalid_argument);
    }
}
