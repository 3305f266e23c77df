#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hfc {

/// Continuous-time SISO rational transfer function.
///
/// Coefficients are ascending-degree lists: num[k] multiplies s^k.  Construction
/// canonicalizes by stripping exact-zero trailing coefficients; no pole/zero
/// cancellation is ever attempted.  The denominator must not be the zero
/// polynomial.
class TransferFunction {
  public:
    TransferFunction();  // identity 1/1
    TransferFunction(std::vector<double> num, std::vector<double> den);

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }

    int num_degree() const;
    int den_degree() const;
    /// den degree minus num degree (>= 0 for proper systems).
    int relative_degree() const;
    bool is_proper() const;
    bool is_zero() const;

    /// Gain at s = 0.  Throws PoleOnGridError if the denominator vanishes at 0
    /// while the numerator does not; returns num(0)/den(0) otherwise (0/0 with a
    /// zero numerator yields 0).
    double dc_gain() const;

    /// Frequency response at s = j*omega.  Throws PoleOnGridError when the
    /// denominator magnitude falls below tol there.
    std::complex<double> eval(double omega, double tol = 1e-12) const;

    /// Evaluation at an arbitrary complex point (same pole guard).
    std::complex<double> eval_at(std::complex<double> s, double tol = 1e-12) const;

    std::string str() const;

    static TransferFunction constant(double k);
    static TransferFunction integrator();               // 1/s
    static TransferFunction first_order_lag(double tau);  // 1/(tau s + 1)
    static TransferFunction pi(double kp, double ki);     // (kp s + ki)/s

  private:
    std::vector<double> num_, den_;
};

/// g1 * g2.
TransferFunction series(const TransferFunction& a, const TransferFunction& b);

/// g1 + g2.  When the two denominators are coefficient-identical the sum is
/// formed over that shared denominator (no squaring).
TransferFunction parallel(const TransferFunction& a, const TransferFunction& b);

/// Closed loop g/(1 + g*h) (negative feedback).  Throws ZeroDenominatorError
/// if 1 + g*h collapses to the zero polynomial.
TransferFunction feedback(const TransferFunction& g, const TransferFunction& h);

/// Unity negative feedback g/(1+g).
TransferFunction feedback_unity(const TransferFunction& g);

/// Negated transfer function.
TransferFunction negate(const TransferFunction& g);

/// Augment an improper block with first-order roll-off poles at 100x its
/// highest corner frequency until proper; returns proper blocks unchanged.
TransferFunction make_proper(const TransferFunction& g);

}  // namespace hfc
