#include "dho/states.hpp"

#include <cmath>

#include "dho/hermite.hpp"

namespace dho {

namespace {

void require_level(int n) {
  if (n < 0) throw DomainError("quantum number must be non-negative");
}

}  // namespace

WaveFunction stationary_state(int n, const OscillatorParams& params, const SpatialGrid& grid) {
  require_level(n);
  const double wt = params.omega_tilde();
  const double scale = std::pow(wt, 0.25);
  const double root = std::sqrt(wt);
  std::vector<cplx> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = scale * hermite_function(n, root * grid.point(i));
  return WaveFunction(grid, std::move(s));
}

WaveFunction first_order_eigenstate(int n, const OscillatorParams& params, const SpatialGrid& grid) {
  return pseudostationary_state(n, 0.0, params, grid);
}

WaveFunction pseudostationary_state(int n, double t, const OscillatorParams& params,
                                    const SpatialGrid& grid) {
  require_level(n);
  const double wt = params.omega_tilde();
  const double a = params.alpha();
  const double stretch = std::exp(a * t);
  const double scale = std::pow(wt, 0.25) * std::exp(0.5 * a * t);
  const double root = std::sqrt(wt);
  const cplx global = std::polar(scale, -params.energy(n) * t);
  std::vector<cplx> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double qs = grid.point(i) * stretch;
    s[i] = global * std::polar(hermite_function(n, root * qs), -0.5 * a * qs * qs);
  }
  return WaveFunction(grid, std::move(s), t);
}

namespace {

// Poisson weights |c_n|^2 for n >= first, summed until they stop mattering.
double poisson_tail(double mean, int first) {
  if (mean == 0.0) return first > 0 ? 0.0 : 1.0;
  double log_term = -mean + first * std::log(mean) - std::lgamma(first + 1.0);
  double tail = 0.0;
  for (int n = first; n < first + 100000; ++n) {
    const double term = std::exp(log_term);
    tail += term;
    if (n > mean && term < 1e-18 * std::max(tail, 1e-300)) break;
    log_term += std::log(mean) - std::log(n + 1.0);
  }
  return tail;
}

}  // namespace

int coherent_truncation(cplx z, double tail_tolerance) {
  const double mean = std::norm(z);
  int dim = 1;
  while (poisson_tail(mean, dim) >= tail_tolerance) ++dim;
  return dim;
}

FockVector coherent_state(const CoherentSpec& spec, const OscillatorParams& params, int dim,
                          double tail_tolerance) {
  if (dim < 1) throw DomainError("truncation must be positive");
  const double tail = poisson_tail(std::norm(spec.z), dim);
  if (tail >= tail_tolerance) {
    throw TruncationError("coherent-state Poisson tail " + format_double(tail) + " exceeds tolerance at M=" +
                          std::to_string(dim));
  }
  Eigen::VectorXcd c(dim);
  c(0) = std::exp(-0.5 * std::norm(spec.z));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * spec.z / std::sqrt(static_cast<double>(n));
  return FockVector(std::move(c), params);
}

FockVector squeezed_state(const CoherentSpec& spec, double t, const OscillatorParams& params, int dim,
                          double norm_tolerance) {
  if (dim < 2) throw DomainError("truncation must be at least 2");
  const int work = dim + std::max(32, dim / 2);
  const double wt = params.omega_tilde();
  const Eigen::MatrixXcd a = annihilation(work);
  const Eigen::MatrixXcd ad = a.adjoint();

  const cplx u = std::cosh(spec.xi) * std::polar(1.0, wt * t);
  const cplx v = std::sinh(spec.xi) * std::polar(1.0, -wt * t);
  const Eigen::MatrixXcd b = u * a + v * ad;

  // Vacuum of b(t): S(zeta)|0> with S(zeta) = exp((conj(zeta) a^2 - zeta a^dag^2)/2),
  // zeta = xi e^{-2i wt t}.
  const cplx zeta = spec.xi * std::polar(1.0, -2.0 * wt * t);
  const Eigen::MatrixXcd squeeze = 0.5 * (std::conj(zeta) * a * a - zeta * ad * ad);
  const Eigen::MatrixXcd displace = spec.z * b.adjoint() - std::conj(spec.z) * b;

  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(work);
  state(0) = 1.0;
  if (spec.xi != 0.0) state = expm_antihermitian(squeeze) * state;
  if (spec.z != cplx(0.0)) state = expm_antihermitian(displace) * state;

  const double kept = state.head(dim).squaredNorm();
  const double defect = std::abs(state.squaredNorm() - kept);
  if (defect > norm_tolerance) {
    throw TruncationError("squeezed state loses weight " + format_double(defect) + " beyond M=" +
                          std::to_string(dim));
  }
  return FockVector(state.head(dim), params);
}

Eigen::MatrixXd stationary_table(const OscillatorParams& params, const SpatialGrid& grid, int dim) {
  if (dim < 1) throw DomainError("truncation must be positive");
  const double wt = params.omega_tilde();
  const double scale = std::pow(wt, 0.25);
  const double root = std::sqrt(wt);
  Eigen::MatrixXd table(grid.size(), dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto h = hermite_functions(dim - 1, root * grid.point(i));
    for (int n = 0; n < dim; ++n) table(static_cast<Eigen::Index>(i), n) = scale * h[static_cast<std::size_t>(n)];
  }
  return table;
}

WaveFunction synthesize(const FockVector& state, const SpatialGrid& grid, double time) {
  const Eigen::MatrixXd table = stationary_table(state.basis(), grid, state.dim());
  const Eigen::VectorXcd values = table.cast<cplx>() * state.coeffs();
  return WaveFunction(grid, std::vector<cplx>(values.data(), values.data() + values.size()), time);
}

FockVector project(const WaveFunction& psi, const OscillatorParams& params, int dim) {
  const auto& g = psi.grid();
  const Eigen::MatrixXd table = stationary_table(params, g, dim);
  Eigen::VectorXcd weighted(static_cast<Eigen::Index>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double w = (i == 0 || i + 1 == psi.size()) ? 0.5 : 1.0;
    weighted(static_cast<Eigen::Index>(i)) = w * g.spacing() * psi[i];
  }
  Eigen::VectorXcd c = table.transpose().cast<cplx>() * weighted;
  return FockVector(std::move(c), params);
}

}  // namespace dho
