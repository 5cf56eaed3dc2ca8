#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dho/core.hpp"
#include "dho/fock.hpp"

namespace dho {

/// Point (x, y = dx/dt) of the first-order system x' = y, y' = -omega^2 x - 2 alpha y.
struct PhasePoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// Exact solution of the first-order system from p0 after elapsed time t.
PhasePoint classical_closed_form(PhasePoint p0, double t, const OscillatorParams& params);

/// Fixed-step classical RK4 from p0 over elapsed time t (last step shortened).
PhasePoint classical_rk4(PhasePoint p0, double t, double dt, const OscillatorParams& params);

/// RK4 trajectory sampled at every step, including the initial point.
std::vector<PhasePoint> classical_rk4_trajectory(PhasePoint p0, double t, double dt,
                                                 const OscillatorParams& params);

/// e^{2 alpha t} (x'' + 2 alpha x' + omega^2 x) along a uniformly stepped
/// trajectory, with x'' from 4th-order central differences of y.  Entry i
/// belongs to trajectory point i + 2.
std::vector<double> multiplier_residuals(const std::vector<PhasePoint>& trajectory,
                                         const OscillatorParams& params);

/// E = (y^2 + omega^2 x^2) / 2.
double mechanical_energy(const PhasePoint& p, const OscillatorParams& params);

/// Means and variances of x(t) = e^{-alpha t} q and y(t) = e^{-alpha t}(p - alpha q)
/// (the latter in the S-frame) at one instant.
struct TrajectorySample {
  double t = 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double uncertainty_product = 0.0;
};

/// Closed-form means and variances in the coherent state S|z> at time t.
TrajectorySample coherent_means(cplx z, double t, const OscillatorParams& params);

/// The same moments evaluated on an S-frame Fock vector through exact
/// ladder-algebra matrices.
TrajectorySample fock_moments(const FockVector& state, double t, const OscillatorParams& params);

/// Delta x Delta y = e^{-2 alpha t} omega / (2 omega_tilde).
double uncertainty_product(double t, const OscillatorParams& params);

/// t* = ln(omega / omega_tilde) / (2 alpha); empty when alpha = 0.
std::optional<double> critical_time(const OscillatorParams& params);

struct RadiusReport {
  double from_means = 0.0;    ///< sqrt(<x>^2 + <y>^2) from coherent_means
  double compact_form = 0.0;  ///< sqrt(2/wt) e^{-alpha t} r sqrt(1 + alpha^2 cos(phi) + alpha sin(2 phi))
  double deviation = 0.0;     ///< |compact_form - from_means|
};

/// Radius of the mean-value trajectory for z = r e^{i theta}.  The compact
/// closed form is reported alongside but only the means route is authoritative.
RadiusReport trajectory_radius(cplx z, double t, const OscillatorParams& params);

/// Closed-form squeezed-state means <x>, <y>.
struct SqueezedMeans {
  double mean_x = 0.0;
  double mean_y = 0.0;
};
SqueezedMeans squeezed_means(cplx z, double xi, double t, const OscillatorParams& params);

/// (Delta x)^2 = e^{-2 alpha t} [(cosh xi + sinh xi)^2 - 4 cosh xi sinh xi cos^2(wt t)] / (2 wt).
double squeezed_variance_x(double xi, double t, const OscillatorParams& params);

/// Exact propagator e^{-iHt} of the truncated first-order Hamiltonian.
class FirstOrderPropagator {
 public:
  FirstOrderPropagator(int dim, const OscillatorParams& params);

  int dim() const noexcept { return static_cast<int>(energies_.size()); }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return vectors_; }

  FockVector evolve(const FockVector& state, double t) const;

 private:
  OscillatorParams params_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

/// Shared, lazily built propagator for (M, omega, alpha).  Safe to call from
/// several threads; construction happens at most once per key.
std::shared_ptr<const FirstOrderPropagator> propagator_for(int dim, const OscillatorParams& params);

/// e^{-iHt} on a Fock vector in the omega_tilde basis.  The coefficients expand
/// the physical state, so eigenvectors are S|n>, not |n>.  Throws TruncationError
/// when the state has more than `tail_tolerance` weight in the top eighth of
/// the levels, where the truncated spectrum is unreliable.
FockVector evolve_first_order(const FockVector& state, double t, const OscillatorParams& params,
                              double tail_tolerance = 1e-8);

/// BCK evolution U(t) = D(t) e^{-iHt} of a wavefunction given at t = 0: project
/// onto `dim` levels, propagate exactly, resynthesize, dilate.  Throws
/// TruncationError if the projection misses more than `norm_tolerance` of the norm.
WaveFunction evolve_bck(const WaveFunction& psi0, double t, const OscillatorParams& params, int dim = 128,
                        double norm_tolerance = 1e-8);

}  // namespace dho
