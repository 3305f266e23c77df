#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hfc/design.hpp"
#include "hfc/errors.hpp"
#include "hfc/roots.hpp"

namespace hfc {

namespace {

std::vector<double> logspace(double lo_exp, double hi_exp, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
        out[static_cast<std::size_t>(i)] = std::pow(10.0, lo_exp + t * (hi_exp - lo_exp));
    }
    return out;
}

}  // namespace

std::optional<double> closed_loop_bandwidth(const TransferFunction& t, double w_min, double w_max) {
    constexpr double kTarget = 0.70710678118654752;
    const int ppd = 100;
    const int decades = static_cast<int>(std::ceil(std::log10(w_max / w_min)));
    const int n = decades * ppd + 1;
    double prev_w = 0.0, prev_m = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = w_min * std::pow(10.0, static_cast<double>(i) / ppd);
        if (w > w_max) w = w_max;
        double m = std::abs(t.eval(w));
        if (i > 0 && prev_m >= kTarget && m < kTarget) {
            // log-interpolate the crossing
            double lw0 = std::log(prev_w), lw1 = std::log(w);
            double lm0 = std::log(prev_m), lm1 = std::log(m);
            double a = (std::log(kTarget) - lm0) / (lm1 - lm0);
            return std::exp(lw0 + a * (lw1 - lw0));
        }
        prev_w = w;
        prev_m = m;
    }
    return std::nullopt;
}

std::optional<double> phase_margin(const TransferFunction& l, double w_min, double w_max) {
    const int ppd = 100;
    const int decades = static_cast<int>(std::ceil(std::log10(w_max / w_min)));
    const int n = decades * ppd + 1;
    double prev_w = 0.0, prev_m = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = w_min * std::pow(10.0, static_cast<double>(i) / ppd);
        if (w > w_max) w = w_max;
        double m = std::abs(l.eval(w));
        if (i > 0 && prev_m >= 1.0 && m < 1.0) {
            double lw0 = std::log(prev_w), lw1 = std::log(w);
            double lm0 = std::log(prev_m), lm1 = std::log(m);
            double a = (0.0 - lm0) / (lm1 - lm0);
            double wc = std::exp(lw0 + a * (lw1 - lw0));
            double ph = std::arg(l.eval(wc)) * 180.0 / std::numbers::pi;
            return 180.0 + ph;  // phase of L is in (-180, 180] from arg()
        }
        prev_w = w;
        prev_m = m;
    }
    return std::nullopt;
}

PiGains pi_tune(const TransferFunction& plant, double bw_target_hz, double pm_target_deg) {
    const double bw_target = 2.0 * std::numbers::pi * bw_target_hz;  // rad/s
    const auto kps = logspace(-2.0, 1.0, 61);
    const auto kis = logspace(-3.0, 1.5, 61);

    bool any_stable = false;
    // best candidate meeting the phase-margin target (min bandwidth error)
    PiGains best_pm{};
    double best_pm_err = std::numeric_limits<double>::infinity();
    // fallback: bandwidth-feasible with largest phase margin
    PiGains best_fb{};
    double best_fb_pm = -std::numeric_limits<double>::infinity();

    for (double kp : kps) {
        for (double ki : kis) {
            const TransferFunction c = TransferFunction::pi(kp, ki);
            const TransferFunction l = series(c, plant);
            const TransferFunction t = feedback_unity(l);
            if (!is_stable(t)) continue;
            any_stable = true;
            const auto bw = closed_loop_bandwidth(t);
            if (!bw) continue;
            const double err = std::abs(*bw - bw_target) / bw_target;
            if (err > 0.10) continue;  // hard bandwidth window
            const auto pm = phase_margin(l);
            const double pm_deg = pm.value_or(180.0);  // no crossover: gain never reaches 1
            PiGains cand{kp, ki, *bw / (2.0 * std::numbers::pi), pm_deg, pm_deg >= pm_target_deg};
            if (cand.pm_met) {
                if (err < best_pm_err) {
                    best_pm_err = err;
                    best_pm = cand;
                }
            } else if (pm_deg > best_fb_pm) {
                best_fb_pm = pm_deg;
                best_fb = cand;
            }
        }
    }

    if (best_pm_err < std::numeric_limits<double>::infinity()) return best_pm;
    if (best_fb_pm > -std::numeric_limits<double>::infinity()) return best_fb;
    if (!any_stable)
        throw UnstableResultError("pi_tune: no stabilizing gain pair on the search grid");
    throw UnstableResultError("pi_tune: no stabilizing pair reaches the bandwidth window");
}

}  // namespace hfc
