#pragma once

#include <vector>

#include "hfc/transfer_function.hpp"

namespace hfc {

/// Discrete-time IIR filter in transposed direct-form II.
///
/// Built from a proper continuous transfer function by the bilinear (Tustin)
/// map s <- (2/dt)(z-1)/(z+1), which preserves the DC gain exactly and maps
/// the open left half plane into the unit disc.  Coefficients are stored in
/// z^-1 powers with a0 normalized to 1.
class DiscreteFilter {
  public:
    DiscreteFilter() = default;

    /// Tustin discretization.  Throws ImproperSystemError for improper g and
    /// TustinSingularityError when g has a pole at s = 2/dt.
    static DiscreteFilter from_continuous(const TransferFunction& g, double dt);

    /// Direct construction from z-domain coefficients (b over a, a[0] != 0).
    DiscreteFilter(std::vector<double> b, std::vector<double> a, double dt);

    /// Advance one sample.  Throws NonFiniteInputError on NaN/Inf input.
    double step(double u);

    /// Reset state to zero.
    void reset();

    /// Set the internal state to the exact steady state for constant input u0
    /// (output becomes dc_gain()*u0 immediately).
    void prime(double u0);

    double dc_gain() const;
    double dt() const { return dt_; }
    const std::vector<double>& b() const { return b_; }
    const std::vector<double>& a() const { return a_; }

  private:
    std::vector<double> b_{1.0}, a_{1.0};  // ascending powers of z^-1, a_[0] == 1
    std::vector<double> w_;                // DF2T state, size max(|a|,|b|)-1
    double dt_ = 0.0;
};

/// Convenience: Tustin-discretize then run n steps of constant input u,
/// returning the final output.  Used by tests.
double filter_settle(const TransferFunction& g, double dt, double u, int n);

}  // namespace hfc
