#include "hfc/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hfc/errors.hpp"
#include "hfc/polynomial.hpp"

namespace hfc {

namespace poly {

std::vector<double> trim(std::vector<double> p) {
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    if (p.empty()) p.push_back(0.0);
    return p;
}

bool is_zero(const std::vector<double>& p) {
    return std::all_of(p.begin(), p.end(), [](double c) { return c == 0.0; });
}

int degree(const std::vector<double>& p) {
    for (int k = static_cast<int>(p.size()) - 1; k > 0; --k)
        if (p[static_cast<size_t>(k)] != 0.0) return k;
    return 0;
}

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return trim(out);
}

std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return trim(out);
}

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
    if (is_zero(a) || is_zero(b)) return {0.0};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return trim(out);
}

std::vector<double> scale(std::vector<double> p, double k) {
    for (auto& c : p) c *= k;
    return trim(std::move(p));
}

std::complex<double> eval(const std::vector<double>& p, std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (size_t k = p.size(); k-- > 0;) acc = acc * s + p[k];
    return acc;
}

double eval_real(const std::vector<double>& p, double x) {
    double acc = 0.0;
    for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

}  // namespace poly

TransferFunction::TransferFunction() : num_{1.0}, den_{1.0} {}

TransferFunction::TransferFunction(std::vector<double> num, std::vector<double> den)
    : num_(poly::trim(std::move(num))), den_(poly::trim(std::move(den))) {
    if (num_.empty() || den_.empty())
        throw std::invalid_argument("transfer function needs nonempty coefficient lists");
    for (double c : num_)
        if (!std::isfinite(c)) throw NonFiniteInputError("non-finite numerator coefficient");
    for (double c : den_)
        if (!std::isfinite(c)) throw NonFiniteInputError("non-finite denominator coefficient");
    if (poly::is_zero(den_)) throw ZeroDenominatorError("denominator polynomial is zero");
}

int TransferFunction::num_degree() const { return poly::degree(num_); }
int TransferFunction::den_degree() const { return poly::degree(den_); }
int TransferFunction::relative_degree() const { return den_degree() - num_degree(); }
bool TransferFunction::is_proper() const { return is_zero() || relative_degree() >= 0; }
bool TransferFunction::is_zero() const { return poly::is_zero(num_); }

double TransferFunction::dc_gain() const {
    if (is_zero()) return 0.0;
    if (den_[0] == 0.0) {
        if (num_[0] == 0.0) {
            // shared s^k factor: strip the common integrators and retry
            size_t k = 0;
            while (k < num_.size() && k < den_.size() && num_[k] == 0.0 && den_[k] == 0.0) ++k;
            std::vector<double> n(num_.begin() + static_cast<long>(k), num_.end());
            std::vector<double> d(den_.begin() + static_cast<long>(k), den_.end());
            return TransferFunction(n, d).dc_gain();
        }
        throw PoleOnGridError("pole at s = 0; DC gain undefined");
    }
    return num_[0] / den_[0];
}

std::complex<double> TransferFunction::eval_at(std::complex<double> s, double tol) const {
    const std::complex<double> dv = poly::eval(den_, s);
    if (std::abs(dv) < tol) throw PoleOnGridError("denominator vanishes at evaluation point");
    return poly::eval(num_, s) / dv;
}

std::complex<double> TransferFunction::eval(double omega, double tol) const {
    if (!std::isfinite(omega)) throw NonFiniteInputError("non-finite frequency");
    return eval_at(std::complex<double>(0.0, omega), tol);
}

std::string TransferFunction::str() const {
    auto poly_str = [](const std::vector<double>& p) {
        std::ostringstream os;
        bool first = true;
        for (size_t k = 0; k < p.size(); ++k) {
            if (p[k] == 0.0 && !(p.size() == 1)) continue;
            if (!first) os << " + ";
            os << p[k];
            if (k == 1) os << "*s";
            if (k > 1) os << "*s^" << k;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    };
    return "(" + poly_str(num_) + ") / (" + poly_str(den_) + ")";
}

TransferFunction TransferFunction::constant(double k) { return {{k}, {1.0}}; }
TransferFunction TransferFunction::integrator() { return {{1.0}, {0.0, 1.0}}; }
TransferFunction TransferFunction::first_order_lag(double tau) { return {{1.0}, {1.0, tau}}; }
TransferFunction TransferFunction::pi(double kp, double ki) { return {{ki, kp}, {0.0, 1.0}}; }

TransferFunction series(const TransferFunction& a, const TransferFunction& b) {
    return {poly::mul(a.num(), b.num()), poly::mul(a.den(), b.den())};
}

TransferFunction parallel(const TransferFunction& a, const TransferFunction& b) {
    if (a.den() == b.den()) return {poly::add(a.num(), b.num()), a.den()};
    return {poly::add(poly::mul(a.num(), b.den()), poly::mul(b.num(), a.den())),
            poly::mul(a.den(), b.den())};
}

TransferFunction feedback(const TransferFunction& g, const TransferFunction& h) {
    // g/(1+gh) = g.num*h.den / (g.den*h.den + g.num*h.num)
    auto den = poly::add(poly::mul(g.den(), h.den()), poly::mul(g.num(), h.num()));
    if (poly::is_zero(den)) throw ZeroDenominatorError("feedback loop denominator collapsed to zero");
    return {poly::mul(g.num(), h.den()), den};
}

TransferFunction feedback_unity(const TransferFunction& g) {
    return feedback(g, TransferFunction::constant(1.0));
}

TransferFunction negate(const TransferFunction& g) {
    return {poly::scale(g.num(), -1.0), g.den()};
}

TransferFunction make_proper(const TransferFunction& g) {
    if (g.is_proper()) return g;
    // highest corner frequency ~ largest coefficient ratio magnitude; use the
    // larger of num/den leading-to-trailing scales as a crude corner estimate
    auto corner = [](const std::vector<double>& p) {
        double w = 0.0;
        for (size_t k = 1; k < p.size(); ++k) {
            if (p[k] == 0.0) continue;
            for (size_t j = 0; j < k; ++j) {
                if (p[j] == 0.0) continue;
                w = std::max(w, std::pow(std::abs(p[j] / p[k]), 1.0 / static_cast<double>(k - j)));
            }
        }
        return w;
    };
    const double wmax = std::max({corner(g.num()), corner(g.den()), 1.0});
    TransferFunction out = g;
    while (!out.is_proper())
        out = series(out, TransferFunction::first_order_lag(1.0 / (100.0 * wmax)));
    return out;
}

}  // namespace hfc
