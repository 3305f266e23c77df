#include <cmath>

#include "hfc/noise.hpp"

namespace hfc {

std::uint64_t stream_seed(std::uint64_t base_seed, const std::string& stream_id) {
    std::uint64_t h = 14695981039346656037ULL;
    const auto mix = [&h](unsigned char byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(base_seed >> (8 * i)));
    for (char c : stream_id) mix(static_cast<unsigned char>(c));
    return h;
}

NoiseSource::NoiseSource(std::uint64_t base_seed, const std::string& stream_id,
                         double std_dev, double corner_rad_s, double sample_dt)
    : rng_(stream_seed(base_seed, stream_id)), std_(std_dev) {
    alpha_ = std::exp(-corner_rad_s * sample_dt);
    // Stationary variance of a one-pole filter driven by unit white noise with
    // input gain (1 - alpha) is (1 - alpha) / (1 + alpha); compensate it.
    input_scale_ = (alpha_ < 1.0) ? std::sqrt((1.0 + alpha_) / (1.0 - alpha_)) : 1.0;
}

double NoiseSource::next() {
    if (std_ <= 0.0) return 0.0;
    const double w = dist_(rng_) * std_ * input_scale_;
    state_ = alpha_ * state_ + (1.0 - alpha_) * w;
    return state_;
}

}  // namespace hfc
