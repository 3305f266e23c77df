#pragma once

#include "hfc/transfer_function.hpp"

namespace hfc {

/// Low-pass estimate filter for the response observer.
struct QFilter {
    int degree = 0;
    double omega_c = 0.0;  // rad/s
    TransferFunction tf;
};

/// Normalized Butterworth denominator coefficients (ascending), constant term 1.
std::vector<double> butterworth_coeffs(int n);

/// Unit-numerator Butterworth low-pass of the given degree and cutoff:
/// Q(s) = 1 / B_n(s/omega_c).  |Q(j omega_c)| = 1/sqrt(2) for every degree,
/// |Q| is monotone non-increasing, DC gain is exactly 1.
/// Degree range 1..6.
QFilter butterworth_q(int degree, double omega_c);

/// Degree-selection template filter: numerator carries the same Butterworth
/// coefficients up to order n-1, denominator up to order n, so that
/// 1 - Q(s) = (s/omega_c)^n / B_n(s/omega_c).  The low-frequency estimate error
/// falls as (omega/omega_c)^n, which is what makes raising the degree widen
/// both performance bands.  Degree 1 coincides with butterworth_q(1, .).
QFilter selection_q(int degree, double omega_c);

}  // namespace hfc
