#include <cmath>

#include <doctest.h>

#include "hfc/errors.hpp"
#include "hfc/qfilter.hpp"

using hfc::butterworth_q;
using hfc::selection_q;

TEST_CASE("butterworth low-pass basics") {
    SUBCASE("unity dc gain for every degree") {
        for (int n = 1; n <= 6; ++n)
            CHECK(butterworth_q(n, 3.0).tf.dc_gain() == doctest::Approx(1.0));
    }

    SUBCASE("half-power point sits at the cutoff") {
        for (int n = 1; n <= 6; ++n) {
            const auto q = butterworth_q(n, 2.0);
            CHECK(std::abs(q.tf.eval(2.0)) ==
                  doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
        }
    }

    SUBCASE("relative degree equals the filter degree") {
        for (int n = 1; n <= 6; ++n)
            CHECK(butterworth_q(n, 1.0).tf.relative_degree() == n);
    }

    SUBCASE("degree-2 coefficients") {
        const auto q = butterworth_q(2, 1.0);
        REQUIRE(q.tf.den().size() == 3);
        CHECK(q.tf.den()[0] == doctest::Approx(1.0));
        CHECK(q.tf.den()[1] == doctest::Approx(std::sqrt(2.0)));
        CHECK(q.tf.den()[2] == doctest::Approx(1.0));
    }

    SUBCASE("roll-off steepens with degree") {
        const double w = 30.0;  // 10x the cutoff
        double prev = 1.0;
        for (int n = 1; n <= 4; ++n) {
            const double mag = std::abs(butterworth_q(n, 3.0).tf.eval(w));
            CHECK(mag < prev);
            prev = mag;
        }
    }

    SUBCASE("degree bounds enforced") {
        CHECK_THROWS_AS(butterworth_q(0, 1.0), hfc::DegreeOutOfRangeError);
        CHECK_THROWS_AS(butterworth_q(7, 1.0), hfc::DegreeOutOfRangeError);
        CHECK_THROWS_AS(butterworth_q(3, 0.0), std::invalid_argument);
    }
}

TEST_CASE("selection template filter") {
    SUBCASE("degree 1 coincides with the butterworth filter") {
        const auto a = selection_q(1, 5.0);
        const auto b = butterworth_q(1, 5.0);
        for (double w : {0.5, 5.0, 50.0}) CHECK(std::abs(a.tf.eval(w) - b.tf.eval(w)) < 1e-12);
    }

    SUBCASE("estimate error falls as (omega/omega_c)^n at low frequency") {
        const double wc = 10.0;
        for (int n = 1; n <= 3; ++n) {
            const auto q = selection_q(n, wc);
            for (double w : {0.01, 0.1}) {
                const double err = std::abs(1.0 - q.tf.eval(w));
                const double expect = std::pow(w / wc, n);
                CHECK(err == doctest::Approx(expect).epsilon(0.05));
            }
        }
    }

    SUBCASE("unity dc gain, proper with one pole of excess") {
        for (int n = 1; n <= 4; ++n) {
            const auto q = selection_q(n, 3.0);
            CHECK(q.tf.dc_gain() == doctest::Approx(1.0));
            CHECK(q.tf.relative_degree() == 1);
            CHECK(q.tf.den_degree() == n);
        }
    }
}
