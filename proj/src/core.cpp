#include "dho/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace dho {

OscillatorParams OscillatorParams::make(double omega, double alpha) {
  if (!std::isfinite(omega) || !(omega > 0.0)) {
    throw DomainError("omega must be positive and finite");
  }
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw DomainError("alpha must be non-negative and finite");
  }
  if (alpha >= omega) {
    throw DomainError("alpha >= omega: only the underdamped regime is supported");
  }
  // (omega - alpha)(omega + alpha) loses less precision than omega^2 - alpha^2.
  const double omega_tilde = std::sqrt((omega - alpha) * (omega + alpha));
  return OscillatorParams(omega, alpha, omega_tilde);
}

OscillatorParams make_params(double omega, double alpha) { return OscillatorParams::make(omega, alpha); }

SpatialGrid::SpatialGrid(double half_width, std::size_t n_points)
    : half_width_(half_width), n_points_(n_points), spacing_(0.0) {
  if (!std::isfinite(half_width) || !(half_width > 0.0)) {
    throw DomainError("grid half-width must be positive");
  }
  if (n_points < min_points || n_points % 2 == 0) {
    throw DomainError("grid needs an odd number of points, at least 17");
  }
  spacing_ = 2.0 * half_width / static_cast<double>(n_points - 1);
}

std::vector<double> SpatialGrid::points() const {
  std::vector<double> q(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) q[i] = point(i);
  return q;
}

WaveFunction::WaveFunction(SpatialGrid grid, std::vector<cplx> samples, double time)
    : grid_(grid), samples_(std::move(samples)), time_(time) {
  if (samples_.size() != grid_.size()) {
    throw GridError("sample count does not match the grid");
  }
}

WaveFunction WaveFunction::zero(const SpatialGrid& grid, double time) {
  return WaveFunction(grid, std::vector<cplx>(grid.size()), time);
}

WaveFunction WaveFunction::scaled(cplx factor) const {
  WaveFunction out = *this;
  for (auto& s : out.samples_) s *= factor;
  return out;
}

namespace {

void require_compatible(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid() == b.grid())) throw GridError("wavefunctions live on different grids");
  if (a.time() != b.time()) throw GridError("wavefunctions carry different time labels");
}

}  // namespace

cplx inner_product(const WaveFunction& a, const WaveFunction& b) {
  require_compatible(a, b);
  const std::size_t n = a.size();
  cplx sum = 0.5 * (std::conj(a[0]) * b[0] + std::conj(a[n - 1]) * b[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += std::conj(a[i]) * b[i];
  return sum * a.grid().spacing();
}

double norm_squared(const WaveFunction& psi) {
  const std::size_t n = psi.size();
  double sum = 0.5 * (std::norm(psi[0]) + std::norm(psi[n - 1]));
  for (std::size_t i = 1; i + 1 < n; ++i) sum += std::norm(psi[i]);
  return sum * psi.grid().spacing();
}

double max_abs_difference(const WaveFunction& a, const WaveFunction& b) {
  require_compatible(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

CheckReport CheckReport::make(std::string name, double measured, double target, double tolerance,
                              std::map<std::string, std::string> metadata) {
  CheckReport r;
  r.check_name = std::move(name);
  r.measured = measured;
  r.target = target;
  r.tolerance = tolerance;
  r.passed = std::isfinite(measured) && std::abs(measured - target) <= tolerance;
  r.metadata = std::move(metadata);
  return r;
}

CheckReport CheckReport::at_least(std::string name, double value, double bound,
                                  std::map<std::string, std::string> metadata) {
  metadata["value"] = format_double(value);
  metadata["lower_bound"] = format_double(bound);
  const double shortfall = std::isfinite(value) ? std::max(0.0, bound - value) : value;
  return make(std::move(name), shortfall, 0.0, 0.0, std::move(metadata));
}

CheckReport CheckReport::failure(std::string name, const std::string& what) {
  CheckReport r = make(std::move(name), std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0);
  r.metadata["error"] = what;
  return r;
}

SpatialGrid auto_grid(const OscillatorParams& params, int n_max, double t_max, double oversample) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  if (!(t_max >= 0.0)) throw DomainError("t_max must be non-negative");
  if (!(oversample >= 1.0)) throw DomainError("oversample must be >= 1");

  const double wt = params.omega_tilde();
  const double stretch = std::exp(params.alpha() * t_max);
  const double turning = std::sqrt(2.0 * n_max + 1.0);
  const double u_edge = std::max(1.5 * turning, turning + 8.5);
  const double half_width = stretch * u_edge / std::sqrt(wt);

  // Chirped states carry momenta up to (omega / sqrt(wt)) * u in the same units.
  const double k_band = stretch * (params.omega() / std::sqrt(wt)) * (turning + 8.5);
  const double k_osc = stretch * std::sqrt((2.0 * n_max + 1.0) * wt);
  const double h = std::min(pi / k_band, 2.0 * pi / (8.0 * k_osc)) / oversample;

  auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width / h)) + 1;
  if (n % 2 == 0) ++n;
  n = std::max(n, SpatialGrid::min_points);
  return SpatialGrid(half_width, n);
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

}  // namespace dho
