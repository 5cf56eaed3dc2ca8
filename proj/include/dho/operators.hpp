#pragma once

#include <string>

#include "dho/core.hpp"
#include "dho/fock.hpp"

namespace dho {

/// Quadratic observable  c_pp p^2 + c_qq q^2 + c_sym (qp + pq).
///
/// Every operator of both models is of this form, so one value type drives
/// both the Fock-matrix and the position-grid realizations.
struct QuadraticForm {
  double pp = 0.0;
  double qq = 0.0;
  double sym = 0.0;
  std::string label;

  /// S^{-1} X S for S = exp(-i alpha q^2 / 2), using S^{-1} p S = p - alpha q.
  QuadraticForm conjugated_by_s(double alpha) const;
};

QuadraticForm first_order_hamiltonian_form(const OscillatorParams& params);
QuadraticForm bck_hamiltonian_form(double t, const OscillatorParams& params);
QuadraticForm symmetrized_product_form();

/// The four energy observables at time t.
struct EnergyForms {
  QuadraticForm lagrangian;              ///< E_L = H
  QuadraticForm conserved_bck;           ///< E = H_BCK(t) + (alpha/2) A
  QuadraticForm mechanical_first_order;  ///< E_M = e^{-2 alpha t} (H - (alpha/2) A)
  QuadraticForm mechanical_bck;          ///< E_mech = e^{-2 alpha t} H_BCK(t)
};

EnergyForms energy_forms(double t, const OscillatorParams& params);

// ---- Fock representation -------------------------------------------------

/// Exact truncation of the quadratic form: q^2, p^2 and qp + pq are built from
/// the ladder identities, not from products of truncated q and p.
FockMatrix to_fock(const QuadraticForm& form, int dim, const OscillatorParams& params);

/// q = (a + a^dagger) / sqrt(2 wt).
FockMatrix position_matrix(int dim, const OscillatorParams& params);
/// p = i sqrt(wt/2) (a^dagger - a).
FockMatrix momentum_matrix(int dim, const OscillatorParams& params);

/// H = (p^2 + alpha (qp + pq) + omega^2 q^2) / 2.
FockMatrix hamiltonian_first_order(int dim, const OscillatorParams& params);
/// H_BCK(t) = (e^{-2 alpha t} p^2 + omega^2 e^{2 alpha t} q^2) / 2.
FockMatrix hamiltonian_bck(double t, int dim, const OscillatorParams& params);
/// A = qp + pq = i (a^dagger^2 - a^2).
FockMatrix symmetrized_product(int dim, const OscillatorParams& params);

struct EnergyObservables {
  FockMatrix lagrangian;
  FockMatrix conserved_bck;
  FockMatrix mechanical_first_order;
  FockMatrix mechanical_bck;
};

EnergyObservables energy_observables(double t, int dim, const OscillatorParams& params);

/// Lowest `count` eigenvalues of the truncated first-order Hamiltonian.
Eigen::VectorXd first_order_spectrum(int dim, const OscillatorParams& params, int count);

/// Builds the Heisenberg operators x(t), y(t) from their closed forms in q and p
/// and reports max |[x, y] - i e^{-2 alpha t}| on the leading (M - 4) block.
CheckReport heisenberg_commutator_check(double t, int dim, const OscillatorParams& params);

// ---- position-grid representation ---------------------------------------

/// Guard width (samples per side) of the finite-difference stencils.
inline constexpr std::size_t stencil_radius = 4;

/// d/dq and d^2/dq^2 by 8th-order central differences.  The outermost
/// `stencil_radius` samples on each side are set to zero.
WaveFunction derivative(const WaveFunction& psi);
WaveFunction second_derivative(const WaveFunction& psi);

/// Applies the quadratic form with p = -i d/dq and qp + pq = -i (2q d/dq + 1).
WaveFunction apply_on_grid(const QuadraticForm& form, const WaveFunction& psi);

/// <psi|X|psi> by quadrature of conj(psi) * (X psi).
cplx grid_expectation(const QuadraticForm& form, const WaveFunction& psi);

enum class Direction { forward, inverse };

/// Multiplies by e^{-i alpha q^2 / 2} (forward) or its inverse.
WaveFunction apply_s_transform(const WaveFunction& psi, const OscillatorParams& params, Direction dir);

/// Band-limited (Whittaker) interpolation of the samples at an arbitrary point.
/// Points outside [-Q, Q] evaluate to zero.
cplx sinc_interpolate(const WaveFunction& psi, double q);

/// Forward: (D psi)(q) = e^{alpha t/2} psi(q e^{alpha t}); inverse uses -t.
///
/// Targets that fall outside the source grid are zero provided the source is
/// negligible on its outer samples; otherwise GridError asks for a wider grid.
/// The result carries the same grid and time label as the input.
WaveFunction apply_dilation(const WaveFunction& psi, double t, const OscillatorParams& params,
                            Direction dir);

}  // namespace dho
