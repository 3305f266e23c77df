#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hfc/record.hpp"

namespace hfc {

struct Extremum {
    double value = 0.0;
    double time_s = 0.0;
};

Extremum min_point(const std::vector<double>& t, const std::vector<double>& y);
Extremum max_point(const std::vector<double>& t, const std::vector<double>& y);

/// Mean of the trailing fraction of a signal.
double tail_mean(const std::vector<double>& y, double tail_frac = 0.05);

/// Max minus min over the trailing fraction.
double tail_spread(const std::vector<double>& y, double tail_frac = 0.05);

/// Tail mean, guarded: throws NoSteadyStateError when the tail still moves by
/// more than `tol`.
double settled_value(const std::vector<double>& y, double tail_frac, double tol);

/// 10%-to-90% rise time of a transition from y0 to yf (sign-aware, linearly
/// interpolated between samples).  Throws NoSteadyStateError when the signal
/// never reaches the 90% level.
double rise_time(const std::vector<double>& t, const std::vector<double>& y, double y0,
                 double yf);

double rms(const std::vector<double>& y);
double rms_diff(const std::vector<double>& a, const std::vector<double>& b);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

/// Indices of the half-open time window [t0, t1).
std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& t, double t0,
                                                   double t1);

/// Copy of y restricted to [t0, t1).
std::vector<double> slice_window(const std::vector<double>& t, const std::vector<double>& y,
                                 double t0, double t1);

/// Step-response metrics of one recorded channel around an event at `event_t`.
struct ResponseMetrics {
    double rise_time_s = 0.0;          // first 90% crossing minus first 10% crossing
    double event_to_90_s = 0.0;        // event instant to the first 90% crossing
    double nadir_hz = 0.0;             // minimum of f_hz after the event
    double steady_state_dev_hz = 0.0;  // mean f_hz change over the last 10% of the window
    double settle_time_s = 0.0;        // event to the channel staying within 5% of its change
    double overshoot_pct = 0.0;        // peak excursion beyond the steady change, percent
};

/// Compute ResponseMetrics for `channel` after an event at `event_t`.  The
/// steady value is the mean over the last 10% of [event_t, window_end_s); pass
/// the AGC activation time as `window_end_s` so secondary control does not
/// contaminate the steady estimate (defaults to the end of the record).
/// Throws NoResponseError when the channel shows no post-event change and
/// ChannelMissingError when the channel (or f_hz / t_s) is absent.
ResponseMetrics response_metrics(const Record& rec, double event_t,
                                 const std::string& channel,
                                 double window_end_s = -1.0);

std::string metrics_text(const ResponseMetrics& m);

}  // namespace hfc
