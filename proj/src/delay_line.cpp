#include <algorithm>

#include "hfc/delay_line.hpp"
#include "hfc/errors.hpp"

namespace hfc {

DelayLine::DelayLine(double max_delay_s, double dt, double initial_value) : dt_(dt) {
    if (!(dt > 0.0)) throw ValidationError({"delay line: dt must be positive"});
    if (max_delay_s < 0.0) throw ValidationError({"delay line: negative max delay"});
    const auto n = static_cast<std::size_t>(std::ceil(max_delay_s / dt)) + 2;
    buf_.assign(n, initial_value);
}

void DelayLine::push(double v) {
    head_ = (head_ + 1) % buf_.size();
    buf_[head_] = v;
}

double DelayLine::read(double delay_s) const {
    if (delay_s < 0.0) throw BufferUnderrunError("delay line: negative lag requested");
    const double k = delay_s / dt_;
    const auto i0 = static_cast<std::size_t>(k);
    const double frac = k - static_cast<double>(i0);
    if (i0 + 1 >= buf_.size())
        throw BufferUnderrunError("delay line: lag exceeds buffer span");
    const std::size_t n = buf_.size();
    const double a = buf_[(head_ + n - i0 % n) % n];
    const double b = buf_[(head_ + n - (i0 + 1) % n) % n];
    return a + frac * (b - a);
}

void DelayLine::fill(double v) { std::fill(buf_.begin(), buf_.end(), v); }

double DelayLine::max_delay_s() const {
    return static_cast<double>(buf_.size() - 2) * dt_;
}

}  // namespace hfc
