#pragma once

#include <complex>
#include <vector>

namespace hfc::poly {

/// Polynomials are coefficient lists in ascending degree: p[k] multiplies s^k.

/// Drop exact-zero trailing (highest-degree) coefficients; keeps at least one entry.
std::vector<double> trim(std::vector<double> p);

bool is_zero(const std::vector<double>& p);

int degree(const std::vector<double>& p);  // degree after trimming; 0 for constants and the zero poly

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> scale(std::vector<double> p, double k);

/// Horner evaluation at a complex point.
std::complex<double> eval(const std::vector<double>& p, std::complex<double> s);

double eval_real(const std::vector<double>& p, double x);

}  // namespace hfc::poly
