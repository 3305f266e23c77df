#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hfc {

/// Fixed-rate circular history buffer with linear interpolation, used to model
/// communication delays.  The buffer is prefilled with an initial value so a
/// system started in equilibrium reads its steady value at any lag.
class DelayLine {
  public:
    DelayLine(double max_delay_s, double dt, double initial_value = 0.0);

    void push(double v);

    /// Value `delay_s` seconds before the most recent push (interpolated).
    /// Throws BufferUnderrunError when the lag exceeds the buffer span.
    double read(double delay_s) const;

    void fill(double v);
    double max_delay_s() const;

  private:
    std::vector<double> buf_;
    std::size_t head_ = 0;  // index of the most recent sample
    double dt_;
};

/// Delay that may wander sinusoidally between bounds over the run.
struct DelayProfile {
    double base_s = 0.0;
    double wobble_s = 0.0;      // amplitude of the sinusoidal component
    double wobble_rad_s = 0.1;  // rate of the sinusoidal component

    double at(double t) const { return base_s + wobble_s * std::sin(wobble_rad_s * t); }
    double max() const { return base_s + std::abs(wobble_s); }
    static DelayProfile between(double lo_s, double hi_s, double rate_rad_s = 0.1) {
        return DelayProfile{0.5 * (lo_s + hi_s), 0.5 * (hi_s - lo_s), rate_rad_s};
    }
};

}  // namespace hfc
