#pragma once

#include <complex>
#include <vector>

#include "hfc/transfer_function.hpp"

namespace hfc {

/// Roots of an ascending-coefficient polynomial via the companion-matrix
/// eigenproblem.  Constants (degree 0) have no roots.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& p);

/// Poles of a transfer function (denominator roots).
std::vector<std::complex<double>> poles(const TransferFunction& g);

/// True when every pole has real part < -tol (strict Hurwitz).
bool is_stable(const TransferFunction& g, double tol = 1e-9);

}  // namespace hfc
