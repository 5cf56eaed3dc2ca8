#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dho {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Parameters outside the underdamped regime, negative quantum numbers, etc.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid mismatch between operands, or a rescaled sample that falls off the grid.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated Fock representation lost more weight than its tolerance allows.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Oscillator constants in units hbar = m = 1.  Only the underdamped regime
/// 0 <= alpha < omega is representable, so omega_tilde is always real.
class OscillatorParams {
 public:
  static OscillatorParams make(double omega, double alpha);

  double omega() const noexcept { return omega_; }
  double alpha() const noexcept { return alpha_; }
  double omega_tilde() const noexcept { return omega_tilde_; }

  /// E_n = omega_tilde (n + 1/2).
  double energy(int n) const noexcept { return omega_tilde_ * (n + 0.5); }

  friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;

 private:
  OscillatorParams(double omega, double alpha, double omega_tilde)
      : omega_(omega), alpha_(alpha), omega_tilde_(omega_tilde) {}

  double omega_;
  double alpha_;
  double omega_tilde_;
};

OscillatorParams make_params(double omega, double alpha);

/// Uniform grid on [-Q, Q] with an odd number of points, so q = 0 is a sample.
class SpatialGrid {
 public:
  static constexpr std::size_t min_points = 17;

  SpatialGrid(double half_width, std::size_t n_points);

  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return spacing_; }
  double point(std::size_t i) const noexcept {
    return -half_width_ + static_cast<double>(i) * spacing_;
  }
  std::vector<double> points() const;

  /// Index of the central sample q = 0.
  std::size_t center() const noexcept { return n_points_ / 2; }

  /// Same half-width, 2N-1 points (every old sample is kept).
  SpatialGrid refined() const { return SpatialGrid(half_width_, 2 * n_points_ - 1); }

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  double half_width_;
  std::size_t n_points_;
  double spacing_;
};

/// Complex samples of a wavefunction on a SpatialGrid, tagged with the time
/// at which they were evaluated.
class WaveFunction {
 public:
  WaveFunction(SpatialGrid grid, std::vector<cplx> samples, double time = 0.0);

  /// Identically zero function.
  static WaveFunction zero(const SpatialGrid& grid, double time = 0.0);

  const SpatialGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> samples() const noexcept { return samples_; }
  std::span<cplx> samples() noexcept { return samples_; }
  double time() const noexcept { return time_; }
  std::size_t size() const noexcept { return samples_.size(); }

  cplx operator[](std::size_t i) const noexcept { return samples_[i]; }
  cplx& operator[](std::size_t i) noexcept { return samples_[i]; }

  /// Copy with every sample multiplied by `factor`.
  WaveFunction scaled(cplx factor) const;

 private:
  SpatialGrid grid_;
  std::vector<cplx> samples_;
  double time_;
};

/// Composite trapezoid approximation of the integral of conj(a) * b.
/// Throws GridError when the operands live on different grids or times.
cplx inner_product(const WaveFunction& a, const WaveFunction& b);

double norm_squared(const WaveFunction& psi);

/// Largest |a_i - b_i| over the shared grid.
double max_abs_difference(const WaveFunction& a, const WaveFunction& b);

/// Outcome of one invariant or equivalence check.  `passed` is derived from
/// |measured - target| <= tolerance and is false for non-finite measurements.
struct CheckReport {
  std::string check_name;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::map<std::string, std::string> metadata;

  static CheckReport make(std::string name, double measured, double target, double tolerance,
                          std::map<std::string, std::string> metadata = {});

  /// One-sided check `value >= bound`, recorded as the shortfall below the
  /// bound with target 0 and tolerance 0.  The raw value goes to metadata.
  static CheckReport at_least(std::string name, double value, double bound,
                              std::map<std::string, std::string> metadata = {});

  /// A check whose evaluation threw; never passes.
  static CheckReport failure(std::string name, const std::string& what);
};

/// Grid large enough to hold levels 0..n_max of either model for |t| <= t_max.
///
/// The half-width is e^{alpha t_max} * max(1.5 u_n, u_n + 8.5) / sqrt(omega_tilde)
/// with u_n = sqrt(2 n_max + 1) the dimensionless turning point, which puts the
/// Gaussian tail below 1e-14 at the edge.  The spacing honours both the band
/// limit of the chirped first-order states and eight samples per oscillation
/// of H_{n_max}, divided by `oversample` (>= 1) for finite-difference work.
SpatialGrid auto_grid(const OscillatorParams& params, int n_max, double t_max,
                      double oversample = 1.0);

/// Formats a double with 17 significant digits, '.' decimal separator.
std::string format_double(double value);

}  // namespace dho
