#pragma once

#include <complex>
#include <vector>

#include "hfc/transfer_function.hpp"

namespace hfc {

struct BodePoint {
    double omega_rad_s;
    double mag_db;
    double phase_deg;  // unwrapped
};

struct BodeData {
    std::vector<BodePoint> points;
};

/// Logarithmic frequency grid, inclusive of both endpoints.
std::vector<double> log_grid(double w_min, double w_max, int points_per_decade);

/// Fixed-size logarithmic grid (n points inclusive), as used by the
/// robustness reports.
std::vector<double> log_grid_n(double w_min, double w_max, int n);

/// Complex frequency response on a caller-supplied grid.
std::vector<std::complex<double>> freq_response(const TransferFunction& g,
                                                const std::vector<double>& grid);

/// Magnitude/phase sweep with phase unwrapping; >= 50 points/decade default.
BodeData bode(const TransferFunction& g, double w_min, double w_max,
              int points_per_decade = 50);

}  // namespace hfc
