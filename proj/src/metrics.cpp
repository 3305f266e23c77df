#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hfc/errors.hpp"
#include "hfc/metrics.hpp"

namespace hfc {

namespace {

void check_nonempty(const std::vector<double>& y, const char* who) {
    if (y.empty()) throw ValidationError({std::string(who) + ": empty signal"});
}

std::size_t tail_start(std::size_t n, double tail_frac) {
    const auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * tail_frac));
    return n - std::max<std::size_t>(k, 1);
}

}  // namespace

Extremum min_point(const std::vector<double>& t, const std::vector<double>& y) {
    check_nonempty(y, "min_point");
    const auto it = std::min_element(y.begin(), y.end());
    const auto i = static_cast<std::size_t>(it - y.begin());
    return {*it, t[i]};
}

Extremum max_point(const std::vector<double>& t, const std::vector<double>& y) {
    check_nonempty(y, "max_point");
    const auto it = std::max_element(y.begin(), y.end());
    const auto i = static_cast<std::size_t>(it - y.begin());
    return {*it, t[i]};
}

double tail_mean(const std::vector<double>& y, double tail_frac) {
    check_nonempty(y, "tail_mean");
    double sum = 0.0;
    const std::size_t start = tail_start(y.size(), tail_frac);
    for (std::size_t i = start; i < y.size(); ++i) sum += y[i];
    return sum / static_cast<double>(y.size() - start);
}

double tail_spread(const std::vector<double>& y, double tail_frac) {
    check_nonempty(y, "tail_spread");
    const std::size_t start = tail_start(y.size(), tail_frac);
    auto [lo, hi] = std::minmax_element(y.begin() + static_cast<std::ptrdiff_t>(start),
                                        y.end());
    return *hi - *lo;
}

double settled_value(const std::vector<double>& y, double tail_frac, double tol) {
    const double spread = tail_spread(y, tail_frac);
    if (spread > tol)
        throw NoSteadyStateError("signal tail still moves by " + std::to_string(spread));
    return tail_mean(y, tail_frac);
}

double rise_time(const std::vector<double>& t, const std::vector<double>& y, double y0,
                 double yf) {
    check_nonempty(y, "rise_time");
    const double span = yf - y0;
    if (span == 0.0) throw NoSteadyStateError("rise_time: zero transition span");
    const double lo = y0 + 0.1 * span;
    const double hi = y0 + 0.9 * span;
    const double sgn = (span > 0.0) ? 1.0 : -1.0;
    auto crossing = [&](double level, std::size_t from) -> std::pair<double, std::size_t> {
        for (std::size_t i = from; i < y.size(); ++i) {
            if (sgn * (y[i] - level) >= 0.0) {
                if (i == 0) return {t[0], 0};
                const double a = (level - y[i - 1]) / (y[i] - y[i - 1]);
                return {t[i - 1] + a * (t[i] - t[i - 1]), i};
            }
        }
        throw NoSteadyStateError("rise_time: level never reached");
    };
    const auto [t_lo, i_lo] = crossing(lo, 0);
    const auto [t_hi, i_hi] = crossing(hi, i_lo);
    (void)i_hi;
    return t_hi - t_lo;
}

double rms(const std::vector<double>& y) {
    check_nonempty(y, "rms");
    double s = 0.0;
    for (double v : y) s += v * v;
    return std::sqrt(s / static_cast<double>(y.size()));
}

double rms_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError({"rms_diff: size mismatch"});
    check_nonempty(a, "rms_diff");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(a.size()));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError({"max_abs_diff: size mismatch"});
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& t, double t0,
                                                   double t1) {
    const auto lo = std::lower_bound(t.begin(), t.end(), t0);
    const auto hi = std::lower_bound(t.begin(), t.end(), t1);
    return {static_cast<std::size_t>(lo - t.begin()), static_cast<std::size_t>(hi - t.begin())};
}

std::vector<double> slice_window(const std::vector<double>& t, const std::vector<double>& y,
                                 double t0, double t1) {
    const auto [i0, i1] = window_indices(t, t0, t1);
    return {y.begin() + static_cast<std::ptrdiff_t>(i0),
            y.begin() + static_cast<std::ptrdiff_t>(i1)};
}

ResponseMetrics response_metrics(const Record& rec, double event_t,
                                 const std::string& channel, double window_end_s) {
    const auto& t = rec.column("t_s");
    const auto& y = rec.column(channel);
    const auto& f = rec.column("f_hz");
    if (t.empty()) throw ValidationError({"response_metrics: empty record"});
    const double end = (window_end_s > event_t) ? window_end_s : t.back() + 1.0;

    // Pre-event baseline: last sample at or before the event.
    auto ev = std::upper_bound(t.begin(), t.end(), event_t);
    if (ev == t.begin())
        throw ValidationError({"response_metrics: event precedes the record"});
    const std::size_t i_ev = static_cast<std::size_t>(ev - t.begin()) - 1;
    const double y0 = y[i_ev];
    const double f0 = f[i_ev];

    const auto [i0, i1] = window_indices(t, event_t, end);
    if (i1 <= i0 + 1) throw ValidationError({"response_metrics: empty analysis window"});
    const std::vector<double> tw(t.begin() + static_cast<std::ptrdiff_t>(i0),
                                 t.begin() + static_cast<std::ptrdiff_t>(i1));
    const std::vector<double> yw(y.begin() + static_cast<std::ptrdiff_t>(i0),
                                 y.begin() + static_cast<std::ptrdiff_t>(i1));
    const std::vector<double> fw(f.begin() + static_cast<std::ptrdiff_t>(i0),
                                 f.begin() + static_cast<std::ptrdiff_t>(i1));

    const double yf = tail_mean(yw, 0.10);
    const double span = yf - y0;
    const double scale = std::max({std::abs(y0), std::abs(yf), 1e-12});
    if (std::abs(span) <= 1e-9 * std::max(scale, 1.0))
        throw NoResponseError("response_metrics: channel '" + channel +
                              "' shows no post-event change");

    ResponseMetrics m;
    const double sgn = (span > 0.0) ? 1.0 : -1.0;
    auto crossing = [&](double level, std::size_t from) -> std::pair<double, std::size_t> {
        for (std::size_t i = from; i < yw.size(); ++i) {
            if (sgn * (yw[i] - level) >= 0.0) {
                if (i == 0) return {tw[0], 0};
                const double a = (level - yw[i - 1]) / (yw[i] - yw[i - 1]);
                return {tw[i - 1] + a * (tw[i] - tw[i - 1]), i};
            }
        }
        throw NoSteadyStateError("response_metrics: level never reached");
    };
    const auto [t10, i10] = crossing(y0 + 0.1 * span, 0);
    const auto [t90, i90] = crossing(y0 + 0.9 * span, i10);
    (void)i90;
    m.rise_time_s = t90 - t10;
    m.event_to_90_s = t90 - event_t;

    m.nadir_hz = *std::min_element(fw.begin(), fw.end());
    m.steady_state_dev_hz = tail_mean(fw, 0.10) - f0;

    const double band = 0.05 * std::abs(span);
    std::size_t i_settle = 0;
    for (std::size_t i = yw.size(); i-- > 0;) {
        if (std::abs(yw[i] - yf) > band) {
            i_settle = i + 1;
            break;
        }
    }
    m.settle_time_s =
        (i_settle < yw.size()) ? tw[i_settle] - event_t : tw.back() - event_t;

    double peak = 0.0;
    for (double v : yw) peak = std::max(peak, sgn * (v - yf));
    m.overshoot_pct = 100.0 * peak / std::abs(span);
    return m;
}

std::string metrics_text(const ResponseMetrics& m) {
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return std::string(buf);
    };
    std::string out;
    out += "rise_time_s           " + fmt(m.rise_time_s) + "\n";
    out += "event_to_90_s         " + fmt(m.event_to_90_s) + "\n";
    out += "nadir_hz              " + fmt(m.nadir_hz) + "\n";
    out += "steady_state_dev_hz   " + fmt(m.steady_state_dev_hz) + "\n";
    out += "settle_time_s         " + fmt(m.settle_time_s) + "\n";
    out += "overshoot_pct         " + fmt(m.overshoot_pct) + "\n";
    return out;
}

}  // namespace hfc
