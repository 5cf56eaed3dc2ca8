#pragma once

#include <functional>
#include <vector>

#include "dho/core.hpp"

namespace dho {

/// Configuration and results of a run of the BCK / first-order equivalence
/// checks over an (n, t) lattice.
struct EquivalenceSuite {
  OscillatorParams params = make_params(1.0, 0.6);
  std::vector<int> n_levels;
  std::vector<double> times;
  SpatialGrid grid{10.0, 1025};
  int trunc = 128;
  std::vector<CheckReport> reports;
};

/// Grid oversampling used by the suite so that the 8th-order stencils resolve
/// every panel state at the largest time.
inline constexpr double suite_oversample = 6.0;

/// Suite with grid sized by auto_grid for max(n_levels, panel) and max(times).
EquivalenceSuite make_suite(const OscillatorParams& params, std::vector<int> n_levels, std::vector<double> times,
                            int trunc = 128);

/// omega = 1, alpha = 0.6, n = 0..10, t in {0, 0.25, 0.5, 1}.
EquivalenceSuite default_suite();

/// max |D psi_n(t) - psi_n^BCK(t)| with D applied by sinc interpolation to the
/// closed-form evolved first-order eigenstate; tolerance 1e-7.
CheckReport check_state_map(int n, double t, const EquivalenceSuite& suite);

/// |norm^2(D psi) - norm^2(psi)|; tolerance 1e-9.
CheckReport check_norm_map(const WaveFunction& psi, double t, const OscillatorParams& params);

/// Expectation values of the mechanical pair (E_mech vs E_M) and the conserved
/// pair (E vs E_L): BCK side on the grid after dilation, first-order side in
/// the Fock basis.  Panel: psi_0..psi_9 and two coherent states.  Tolerance 1e-7.
CheckReport check_observable_map(double t, const EquivalenceSuite& suite);

/// sqrt( int_{-1}^{1} |(H_BCK(0) - eigenvalue) f|^2 / int_{-1}^{1} |f|^2 ),
/// H_BCK applied by 8th-order finite differences on a local grid.
double windowed_residual(const std::function<cplx(double)>& f, cplx eigenvalue, const OscillatorParams& params);

/// Windowed residual of the asymptotic state n against E_n + i alpha/2
/// (`with_shift`) or E_n alone.
double asymptotic_residual(int n, const OscillatorParams& params, bool with_shift);

/// residual(4n) / residual(n) for the shifted eigenvalue equation, accepted in
/// [0.4, 1.0].  Requires n >= 32.
CheckReport asymptotic_eigen_residual(int n, const EquivalenceSuite& suite);

/// Control: without the i alpha/2 shift the residual must not decay,
/// residual(4n) / residual(n) >= 0.9.
CheckReport asymptotic_control(int n, const EquivalenceSuite& suite);

/// -2i Q (conj(phi(Q)) psi(Q) + conj(phi(-Q)) psi(-Q)), the symmetry defect
/// <phi, A psi> - <A phi, psi> of A = qp + pq cut off at +-Q.
cplx boundary_term_diagnostic(const WaveFunction& phi, const WaveFunction& psi, double half_width);

/// Runs every lattice check.  Reports come back in a fixed order regardless of
/// `threads`; a check that throws is recorded as a failed report.
EquivalenceSuite run_suite(EquivalenceSuite suite, unsigned threads = 1);

/// True when every report passed (vacuously true for no reports).
bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace dho
