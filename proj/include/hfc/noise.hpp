#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace hfc {

/// Deterministic per-stream seed: FNV-1a over the run seed and a stream name,
/// so each measurement channel gets an independent, reproducible sequence.
std::uint64_t stream_seed(std::uint64_t base_seed, const std::string& stream_id);

/// Band-limited measurement noise: white Gaussian samples shaped by a one-pole
/// low-pass, scaled so the stationary standard deviation equals `std_dev`.
class NoiseSource {
  public:
    NoiseSource(std::uint64_t base_seed, const std::string& stream_id, double std_dev,
                double corner_rad_s, double sample_dt);

    double next();
    bool enabled() const { return std_ > 0.0; }

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> dist_{0.0, 1.0};
    double std_;
    double alpha_;
    double input_scale_;
    double state_ = 0.0;
};

struct NoiseSettings {
    bool enabled = false;
    double std_pu = 0.002;       // power measurements, per-unit
    double freq_std_hz = 0.002;  // frequency measurements, Hz
    double corner_rad_s = 50.0;  // shaping corner
};

}  // namespace hfc
