#include "dho/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace dho {

FockVector::FockVector(Eigen::VectorXcd coeffs, OscillatorParams basis)
    : coeffs_(std::move(coeffs)), basis_(basis) {
  if (coeffs_.size() == 0) throw DomainError("Fock vector needs at least one level");
}

FockVector FockVector::basis_state(int n, int dim, const OscillatorParams& basis) {
  if (n < 0 || n >= dim) throw DomainError("basis level outside the truncation");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  c(n) = 1.0;
  return FockVector(std::move(c), basis);
}

double FockVector::tail_weight(int first) const {
  if (first >= dim()) return 0.0;
  return coeffs_.tail(dim() - std::max(first, 0)).squaredNorm();
}

double FockMatrix::hermiticity_defect() const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

cplx FockMatrix::expectation(const FockVector& v) const {
  if (v.dim() != dim()) throw DomainError("operator and vector truncations differ");
  return v.coeffs().dot(entries * v.coeffs());
}

FockVector FockMatrix::apply(const FockVector& v) const {
  if (v.dim() != dim()) throw DomainError("operator and vector truncations differ");
  return FockVector(entries * v.coeffs(), v.basis());
}

Eigen::MatrixXcd annihilation(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd expm_antihermitian(const Eigen::MatrixXcd& generator) {
  // G = -iK with K = iG Hermitian, so exp(G) = V exp(-i Lambda) V^dagger.
  const Eigen::MatrixXcd k = cplx(0.0, 1.0) * generator;
  const Eigen::MatrixXcd herm = 0.5 * (k + k.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([](double lam) { return std::polar(1.0, -lam); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace dho
