#include "hfc/roots.hpp"

#include <Eigen/Eigenvalues>

#include "hfc/polynomial.hpp"

namespace hfc {

std::vector<std::complex<double>> poly_roots(const std::vector<double>& p_in) {
    const auto p = poly::trim(p_in);
    const int n = poly::degree(p);
    if (n == 0) return {};
    // strip exact-zero roots at the origin first (p[0..k-1] == 0)
    int k = 0;
    while (k < n && p[static_cast<size_t>(k)] == 0.0) ++k;
    std::vector<std::complex<double>> out(static_cast<size_t>(k), std::complex<double>(0.0, 0.0));
    const int m = n - k;
    if (m == 0) return out;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
    const double lead = p[static_cast<size_t>(n)];
    for (int i = 0; i < m; ++i) companion(i, m - 1) = -p[static_cast<size_t>(k + i)] / lead;
    for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    for (int i = 0; i < m; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

std::vector<std::complex<double>> poles(const TransferFunction& g) { return poly_roots(g.den()); }

bool is_stable(const TransferFunction& g, double tol) {
    for (const auto& p : poles(g))
        if (p.real() >= -tol) return false;
    return true;
}

}  // namespace hfc
