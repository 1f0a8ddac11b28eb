#pragma once

// Real roots of a polynomial through the eigenvalues of its companion matrix.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace lagtori {

/// Roots of sum_i coeffs[i] x^i (coefficients in increasing degree).
inline std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg < 2) return {};
  const auto n = static_cast<Eigen::Index>(deg - 1);
  const double lead = coeffs[deg - 1];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");
  std::vector<std::complex<double>> roots(solver.eigenvalues().data(),
                                          solver.eigenvalues().data() + n);
  return roots;
}

/// Real roots (imaginary part below imag_tol relative to magnitude), ascending.
inline std::vector<double> real_polynomial_roots(std::span<const double> coeffs,
                                                 double imag_tol = 1e-7) {
  std::vector<double> out;
  for (const auto& z : polynomial_roots(coeffs)) {
    if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lagtori
