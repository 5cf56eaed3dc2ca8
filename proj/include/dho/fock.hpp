#pragma once

#include <Eigen/Dense>
#include <string>

#include "dho/core.hpp"

namespace dho {

/// State vector in the number basis of the omega_tilde oscillator,
/// psi(q) = sum_n c_n psi_n^{wt}(q).
class FockVector {
 public:
  FockVector(Eigen::VectorXcd coeffs, OscillatorParams basis);

  /// |n> truncated to `dim` levels.
  static FockVector basis_state(int n, int dim, const OscillatorParams& basis);

  int dim() const noexcept { return static_cast<int>(coeffs_.size()); }
  const Eigen::VectorXcd& coeffs() const noexcept { return coeffs_; }
  const OscillatorParams& basis() const noexcept { return basis_; }
  cplx operator[](int n) const { return coeffs_(n); }

  double norm_squared() const { return coeffs_.squaredNorm(); }

  /// Weight carried by levels >= first.
  double tail_weight(int first) const;

 private:
  Eigen::VectorXcd coeffs_;
  OscillatorParams basis_;
};

/// Truncated operator matrix in the omega_tilde number basis.
struct FockMatrix {
  Eigen::MatrixXcd entries;
  OscillatorParams basis;
  std::string label;

  int dim() const noexcept { return static_cast<int>(entries.rows()); }

  /// max |X - X^dagger| entrywise.
  double hermiticity_defect() const;

  /// <v|X|v> (not divided by the norm).
  cplx expectation(const FockVector& v) const;

  FockVector apply(const FockVector& v) const;
};

/// Annihilation operator a with a|n> = sqrt(n)|n-1>, truncated to M levels.
Eigen::MatrixXcd annihilation(int dim);

/// exp(G) for an anti-Hermitian G, through the eigendecomposition of iG.
Eigen::MatrixXcd expm_antihermitian(const Eigen::MatrixXcd& generator);

}  // namespace dho
