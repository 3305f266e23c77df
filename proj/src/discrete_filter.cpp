#include "hfc/discrete_filter.hpp"

#include <cmath>
#include <numeric>

#include "hfc/errors.hpp"
#include "hfc/polynomial.hpp"

namespace hfc {

namespace {

// Expand sum_i c_i * gain^i * (z-1)^i * (z+1)^(n-i) as an ascending polynomial in z.
std::vector<double> bilinear_poly(const std::vector<double>& c, double gain, int n) {
    std::vector<double> acc(static_cast<size_t>(n) + 1, 0.0);
    double g = 1.0;
    for (int i = 0; i <= n; ++i) {
        const double ci = i < static_cast<int>(c.size()) ? c[static_cast<size_t>(i)] : 0.0;
        if (ci != 0.0) {
            std::vector<double> term{1.0};
            for (int k = 0; k < i; ++k) term = poly::mul(term, {-1.0, 1.0});
            for (int k = 0; k < n - i; ++k) term = poly::mul(term, {1.0, 1.0});
            for (size_t k = 0; k < term.size(); ++k) acc[k] += ci * g * term[k];
        }
        g *= gain;
    }
    return acc;
}

}  // namespace

DiscreteFilter DiscreteFilter::from_continuous(const TransferFunction& g, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (!g.is_proper()) throw ImproperSystemError("cannot discretize an improper system: " + g.str());
    const double c = 2.0 / dt;
    // pole at the bilinear singularity?
    double scale = 0.0, ck = 1.0;
    for (double a : g.den()) {
        scale = std::max(scale, std::abs(a) * ck);
        ck *= c;
    }
    const double den_at_c = poly::eval_real(g.den(), c);
    if (std::abs(den_at_c) < 1e-12 * scale)
        throw TustinSingularityError("continuous pole at s = 2/dt; bilinear map singular");

    const int n = g.den_degree();
    auto num_z = bilinear_poly(g.num(), c, n);  // ascending in z
    auto den_z = bilinear_poly(g.den(), c, n);
    // reverse: coefficient of z^(n-j) becomes the z^-j coefficient
    std::vector<double> b(num_z.rbegin(), num_z.rend());
    std::vector<double> a(den_z.rbegin(), den_z.rend());
    const double a0 = a[0];
    for (auto& v : b) v /= a0;
    for (auto& v : a) v /= a0;
    return DiscreteFilter(std::move(b), std::move(a), dt);
}

DiscreteFilter::DiscreteFilter(std::vector<double> b, std::vector<double> a, double dt)
    : b_(std::move(b)), a_(std::move(a)), dt_(dt) {
    if (a_.empty() || a_[0] == 0.0) throw std::invalid_argument("a[0] must be nonzero");
    if (a_[0] != 1.0) {
        const double a0 = a_[0];
        for (auto& v : b_) v /= a0;
        for (auto& v : a_) v /= a0;
    }
    const size_t m = std::max(a_.size(), b_.size());
    a_.resize(m, 0.0);
    b_.resize(m, 0.0);
    w_.assign(m > 0 ? m - 1 : 0, 0.0);
}

double DiscreteFilter::step(double u) {
    if (!std::isfinite(u)) throw NonFiniteInputError("non-finite filter input");
    const double y = b_[0] * u + (w_.empty() ? 0.0 : w_[0]);
    for (size_t i = 0; i + 1 < w_.size(); ++i) w_[i] = b_[i + 1] * u - a_[i + 1] * y + w_[i + 1];
    if (!w_.empty()) w_.back() = b_.back() * u - a_.back() * y;
    return y;
}

void DiscreteFilter::reset() { std::fill(w_.begin(), w_.end(), 0.0); }

void DiscreteFilter::prime(double u0) {
    const double y = dc_gain() * u0;
    if (w_.empty()) return;
    w_.back() = b_.back() * u0 - a_.back() * y;
    for (size_t i = w_.size() - 1; i-- > 0;) w_[i] = b_[i + 1] * u0 - a_[i + 1] * y + w_[i + 1];
}

double DiscreteFilter::dc_gain() const {
    const double sb = std::accumulate(b_.begin(), b_.end(), 0.0);
    const double sa = std::accumulate(a_.begin(), a_.end(), 0.0);
    if (sa == 0.0) throw PoleOnGridError("discrete pole at z = 1; DC gain undefined");
    return sb / sa;
}

double filter_settle(const TransferFunction& g, double dt, double u, int n) {
    auto f = DiscreteFilter::from_continuous(g, dt);
    double y = 0.0;
    for (int i = 0; i < n; ++i) y = f.step(u);
    return y;
}

}  // namespace hfc
