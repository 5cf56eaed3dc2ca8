#include "dho/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace dho {

QuadraticForm QuadraticForm::conjugated_by_s(double alpha) const {
  // S^{-1} p^2 S = p^2 - alpha A + alpha^2 q^2,  S^{-1} A S = A - 2 alpha q^2.
  QuadraticForm out;
  out.pp = pp;
  out.sym = sym - alpha * pp;
  out.qq = qq + alpha * alpha * pp - 2.0 * alpha * sym;
  out.label = "S^-1 " + label + " S";
  return out;
}

QuadraticForm first_order_hamiltonian_form(const OscillatorParams& params) {
  const double w = params.omega();
  return {0.5, 0.5 * w * w, 0.5 * params.alpha(), "H"};
}

QuadraticForm bck_hamiltonian_form(double t, const OscillatorParams& params) {
  const double w = params.omega();
  const double e2 = std::exp(2.0 * params.alpha() * t);
  return {0.5 / e2, 0.5 * w * w * e2, 0.0, "H_BCK"};
}

QuadraticForm symmetrized_product_form() { return {0.0, 0.0, 1.0, "A"}; }

EnergyForms energy_forms(double t, const OscillatorParams& params) {
  const double a = params.alpha();
  const double w = params.omega();
  const double decay = std::exp(-2.0 * a * t);

  EnergyForms f;
  f.lagrangian = first_order_hamiltonian_form(params);
  f.lagrangian.label = "E_L";

  f.conserved_bck = bck_hamiltonian_form(t, params);
  f.conserved_bck.sym = 0.5 * a;
  f.conserved_bck.label = "E_conserved";

  f.mechanical_first_order = {0.5 * decay, 0.5 * w * w * decay, 0.0, "E_M"};

  f.mechanical_bck = bck_hamiltonian_form(t, params);
  f.mechanical_bck.pp *= decay;
  f.mechanical_bck.qq *= decay;
  f.mechanical_bck.label = "E_mech";
  return f;
}

FockMatrix to_fock(const QuadraticForm& form, int dim, const OscillatorParams& params) {
  if (dim < 1) throw DomainError("truncation must be positive");
  const double wt = params.omega_tilde();
  // Diagonal: p^2 -> (wt/2)(2n+1), q^2 -> (2n+1)/(2 wt), A -> 0.
  // Band n+2 <- n: coefficient of a^dagger^2, times sqrt((n+1)(n+2)).
  const double diag_scale = form.pp * 0.5 * wt + form.qq * 0.5 / wt;
  const cplx raise2(-form.pp * 0.5 * wt + form.qq * 0.5 / wt, form.sym);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    m(n, n) = diag_scale * (2.0 * n + 1.0);
    if (n + 2 < dim) {
      const double s = std::sqrt((n + 1.0) * (n + 2.0));
      m(n + 2, n) = raise2 * s;
      m(n, n + 2) = std::conj(raise2) * s;
    }
  }
  return {std::move(m), params, form.label};
}

FockMatrix position_matrix(int dim, const OscillatorParams& params) {
  if (dim < 2) throw DomainError("position matrix needs M >= 2");
  const Eigen::MatrixXcd a = annihilation(dim);
  return {(a + a.adjoint()) / std::sqrt(2.0 * params.omega_tilde()), params, "q"};
}

FockMatrix momentum_matrix(int dim, const OscillatorParams& params) {
  if (dim < 2) throw DomainError("momentum matrix needs M >= 2");
  const Eigen::MatrixXcd a = annihilation(dim);
  const cplx scale(0.0, std::sqrt(0.5 * params.omega_tilde()));
  return {scale * (a.adjoint() - a), params, "p"};
}

FockMatrix hamiltonian_first_order(int dim, const OscillatorParams& params) {
  if (dim < 4) throw DomainError("Hamiltonian needs M >= 4");
  return to_fock(first_order_hamiltonian_form(params), dim, params);
}

FockMatrix hamiltonian_bck(double t, int dim, const OscillatorParams& params) {
  if (dim < 4) throw DomainError("Hamiltonian needs M >= 4");
  return to_fock(bck_hamiltonian_form(t, params), dim, params);
}

FockMatrix symmetrized_product(int dim, const OscillatorParams& params) {
  if (dim < 4) throw DomainError("qp + pq needs M >= 4");
  return to_fock(symmetrized_product_form(), dim, params);
}

EnergyObservables energy_observables(double t, int dim, const OscillatorParams& params) {
  if (dim < 4) throw DomainError("energy observables need M >= 4");
  const EnergyForms f = energy_forms(t, params);
  return {to_fock(f.lagrangian, dim, params), to_fock(f.conserved_bck, dim, params),
          to_fock(f.mechanical_first_order, dim, params), to_fock(f.mechanical_bck, dim, params)};
}

Eigen::VectorXd first_order_spectrum(int dim, const OscillatorParams& params, int count) {
  const FockMatrix h = hamiltonian_first_order(dim, params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries, Eigen::EigenvaluesOnly);
  return es.eigenvalues().head(std::min(count, dim));
}

CheckReport heisenberg_commutator_check(double t, int dim, const OscillatorParams& params) {
  if (dim < 8) throw DomainError("commutator check needs M >= 8");
  constexpr int guard = 4;
  const double a = params.alpha();
  const double wt = params.omega_tilde();
  const double w = params.omega();
  const double e = std::exp(-a * t);
  const double c = std::cos(wt * t);
  const double s = std::sin(wt * t);

  const Eigen::MatrixXcd q = position_matrix(dim, params).entries;
  const Eigen::MatrixXcd p = momentum_matrix(dim, params).entries;
  const Eigen::MatrixXcd x = e * (c + a / wt * s) * q + (e * s / wt) * p;
  const Eigen::MatrixXcd y = e * (c - a / wt * s) * p - (e * w * w / wt * s) * q;

  const int keep = dim - guard;
  const Eigen::MatrixXcd comm = (x * y - y * x).topLeftCorner(keep, keep);
  const cplx target(0.0, std::exp(-2.0 * a * t));
  const Eigen::MatrixXcd expected = target * Eigen::MatrixXcd::Identity(keep, keep);
  const double deviation = (comm - expected).cwiseAbs().maxCoeff();

  return CheckReport::make("heisenberg_commutator", deviation, 0.0, 1e-10,
                           {{"t", format_double(t)},
                            {"target_imag", format_double(target.imag())},
                            {"guard_band", std::to_string(guard)},
                            {"M", std::to_string(dim)}});
}

WaveFunction apply_s_transform(const WaveFunction& psi, const OscillatorParams& params, Direction dir) {
  const double sign = dir == Direction::forward ? -1.0 : 1.0;
  WaveFunction out = psi;
  const auto& g = psi.grid();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double q = g.point(i);
    out[i] *= std::polar(1.0, sign * 0.5 * params.alpha() * q * q);
  }
  return out;
}

WaveFunction apply_dilation(const WaveFunction& psi, double t, const OscillatorParams& params,
                            Direction dir) {
  const double lambda = (dir == Direction::forward ? 1.0 : -1.0) * params.alpha() * t;
  if (lambda == 0.0) return psi;

  const double stretch = std::exp(lambda);
  const double amplitude = std::exp(0.5 * lambda);
  const auto& g = psi.grid();
  const std::size_t n = psi.size();

  bool edge_checked = false;
  auto require_negligible_edge = [&] {
    if (edge_checked) return;
    double peak = 0.0;
    for (auto v : psi.samples()) peak = std::max(peak, std::abs(v));
    constexpr std::size_t band = 8;
    double edge = 0.0;
    for (std::size_t i = 0; i < std::min(band, n); ++i) {
      edge = std::max({edge, std::abs(psi[i]), std::abs(psi[n - 1 - i])});
    }
    if (edge > 1e-12 * peak) {
      throw GridError("dilated samples leave the grid while the function is not negligible at its edge; widen the grid");
    }
    edge_checked = true;
  };

  WaveFunction out = WaveFunction::zero(g, psi.time());
  const double limit = g.half_width() * (1.0 + 1e-14);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = g.point(i) * stretch;
    if (std::abs(target) > limit) {
      require_negligible_edge();
      continue;
    }
    out[i] = amplitude * sinc_interpolate(psi, target);
  }
  if (stretch < 1.0) {
    // Spreading pushes weight past the edge of the same grid.
    double peak = 0.0;
    double edge = 0.0;
    for (auto v : out.samples()) peak = std::max(peak, std::abs(v));
    for (std::size_t i = 0; i < std::min<std::size_t>(8, n); ++i) {
      edge = std::max({edge, std::abs(out[i]), std::abs(out[n - 1 - i])});
    }
    if (edge > 1e-12 * peak) throw GridError("dilated state is not negligible at the grid edge; widen the grid");
  }
  return out;
}

}  // namespace dho
