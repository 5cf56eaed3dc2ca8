#pragma once

#include "dho/core.hpp"
#include "dho/fock.hpp"

namespace dho {

/// psi_n^{wt}(q) = wt^{1/4} h_n(sqrt(wt) q): stationary states of the
/// omega_tilde oscillator.
WaveFunction stationary_state(int n, const OscillatorParams& params, const SpatialGrid& grid);

/// psi_n(q) = e^{-i alpha q^2/2} psi_n^{wt}(q), eigenstates of the first-order
/// Hamiltonian with eigenvalue E_n.
WaveFunction first_order_eigenstate(int n, const OscillatorParams& params, const SpatialGrid& grid);

/// Pseudostationary state of the BCK model at time t,
///   e^{alpha t/2} e^{-i E_n t} e^{-i alpha q^2 e^{2 alpha t}/2} psi_n^{wt}(q e^{alpha t}).
WaveFunction pseudostationary_state(int n, double t, const OscillatorParams& params,
                                    const SpatialGrid& grid);

/// Semiclassical state label: coherent amplitude z and squeeze parameter xi.
struct CoherentSpec {
  cplx z{0.0, 0.0};
  double xi = 0.0;
};

/// Coherent state |z> of the omega_tilde oscillator, c_n = e^{-|z|^2/2} z^n / sqrt(n!).
/// The physical coherent state of the first-order model is S|z>.
/// Throws TruncationError when the Poisson tail beyond `dim` exceeds `tail_tolerance`.
FockVector coherent_state(const CoherentSpec& spec, const OscillatorParams& params, int dim,
                          double tail_tolerance = 1e-12);

/// Smallest truncation whose Poisson tail for |z| is below `tail_tolerance`.
int coherent_truncation(cplx z, double tail_tolerance = 1e-12);

/// Squeezed coherent state |z, xi> at time t in the S-frame (omega_tilde basis):
/// the displacement exp(z b^dag - conj(z) b) acting on the vacuum of
///   b(t) = cosh(xi) e^{i wt t} a + sinh(xi) e^{-i wt t} a^dag.
/// Built by matrix exponentials in an enlarged working space and cut back to
/// `dim` levels; TruncationError if the weight lost exceeds `norm_tolerance`.
FockVector squeezed_state(const CoherentSpec& spec, double t, const OscillatorParams& params, int dim,
                          double norm_tolerance = 1e-10);

/// Position-space samples of sum_n c_n psi_n^{wt}(q).
WaveFunction synthesize(const FockVector& state, const SpatialGrid& grid, double time = 0.0);

/// Fock coefficients <psi_n^{wt}|psi> by quadrature, n < dim.
FockVector project(const WaveFunction& psi, const OscillatorParams& params, int dim);

/// Values psi_n^{wt}(q_i) for n < dim on every grid point, row-major [i][n].
Eigen::MatrixXd stationary_table(const OscillatorParams& params, const SpatialGrid& grid, int dim);

}  // namespace dho
