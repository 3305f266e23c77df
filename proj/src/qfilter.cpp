#include "hfc/qfilter.hpp"

#include <cmath>
#include <numbers>

#include "hfc/errors.hpp"

namespace hfc {

std::vector<double> butterworth_coeffs(int n) {
    if (n < 1 || n > 6) throw DegreeOutOfRangeError("Butterworth degree must be in 1..6");
    // product over k of (x^2 + 2 sin((2k-1)pi/2n) x + 1), odd n adds (x + 1)
    std::vector<double> p{1.0};
    auto mul = [](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> out(a.size() + b.size() - 1, 0.0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    if (n % 2 == 1) p = mul(p, {1.0, 1.0});
    for (int k = 1; 2 * k <= n; ++k) {
        const double c = 2.0 * std::sin((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n));
        p = mul(p, {1.0, c, 1.0});
    }
    return p;
}

namespace {

std::vector<double> scaled_coeffs(int n, double omega_c) {
    if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be positive");
    auto b = butterworth_coeffs(n);
    double wk = 1.0;
    for (int m = 0; m <= n; ++m) {
        b[static_cast<size_t>(m)] /= wk;
        wk *= omega_c;
    }
    return b;
}

}  // namespace

QFilter butterworth_q(int degree, double omega_c) {
    auto den = scaled_coeffs(degree, omega_c);
    return {degree, omega_c, TransferFunction({1.0}, den)};
}

QFilter selection_q(int degree, double omega_c) {
    auto den = scaled_coeffs(degree, omega_c);
    std::vector<double> num(den.begin(), den.end() - 1);
    return {degree, omega_c, TransferFunction(num, den)};
}

}  // namespace hfc
