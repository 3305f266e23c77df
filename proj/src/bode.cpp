#include "hfc/bode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hfc {

std::vector<double> log_grid(double w_min, double w_max, int points_per_decade) {
    if (!(w_min > 0.0) || !(w_max > w_min)) throw std::invalid_argument("need 0 < w_min < w_max");
    if (points_per_decade < 1) throw std::invalid_argument("points_per_decade must be >= 1");
    const double decades = std::log10(w_max / w_min);
    const int n = static_cast<int>(std::ceil(decades * points_per_decade)) + 1;
    return log_grid_n(w_min, w_max, n);
}

std::vector<double> log_grid_n(double w_min, double w_max, int n) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> g(static_cast<size_t>(n));
    const double l0 = std::log10(w_min), l1 = std::log10(w_max);
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1));
    g.front() = w_min;
    g.back() = w_max;
    return g;
}

std::vector<std::complex<double>> freq_response(const TransferFunction& g,
                                                const std::vector<double>& grid) {
    std::vector<std::complex<double>> out;
    out.reserve(grid.size());
    for (double w : grid) out.push_back(g.eval(w));
    return out;
}

BodeData bode(const TransferFunction& g, double w_min, double w_max, int points_per_decade) {
    const auto grid = log_grid(w_min, w_max, points_per_decade);
    const auto resp = freq_response(g, grid);
    BodeData data;
    data.points.reserve(grid.size());
    double prev_phase = 0.0;
    bool first = true;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double mag = std::abs(resp[i]);
        double phase = std::arg(resp[i]) * 180.0 / std::numbers::pi;
        if (!first) {
            while (phase - prev_phase > 180.0) phase -= 360.0;
            while (phase - prev_phase < -180.0) phase += 360.0;
        }
        prev_phase = phase;
        first = false;
        data.points.push_back({grid[i], 20.0 * std::log10(std::max(mag, 1e-300)), phase});
    }
    return data;
}

}  // namespace hfc
