#include "dho/hermite.hpp"

#include <cmath>

namespace dho {

namespace {

// Rescale whenever the running value leaves [1/big, big].
constexpr double big = 1e150;
const double log_big = std::log(big);
const double pi_quarter = std::pow(pi, -0.25);

// Recurrence state: value = (cur) * exp(log_scale).
struct Recurrence {
  double u;
  double prev = 0.0;
  double cur;
  double log_scale;
  int k = 0;

  explicit Recurrence(double u_) : u(u_), cur(pi_quarter), log_scale(-0.5 * u_ * u_) {}

  void step() {
    const double kd = static_cast<double>(k);
    const double next = u * std::sqrt(2.0 / (kd + 1.0)) * cur - std::sqrt(kd / (kd + 1.0)) * prev;
    prev = cur;
    cur = next;
    ++k;
    if (std::abs(cur) > big) {
      cur /= big;
      prev /= big;
      log_scale += log_big;
    }
  }

  double value() const {
    if (cur == 0.0) return 0.0;
    return std::copysign(std::exp(std::log(std::abs(cur)) + log_scale), cur);
  }
};

}  // namespace

double hermite_function(int n, double u) {
  if (n < 0) throw DomainError("hermite order must be non-negative");
  Recurrence r(u);
  while (r.k < n) r.step();
  return r.value();
}

std::vector<double> hermite_functions(int n_max, double u) {
  if (n_max < 0) throw DomainError("hermite order must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  Recurrence r(u);
  out[0] = r.value();
  for (int k = 1; k <= n_max; ++k) {
    r.step();
    out[static_cast<std::size_t>(k)] = r.value();
  }
  return out;
}

double log_double_factorial_ratio_sqrt(int m) {
  if (m < 0) throw DomainError("double factorial index must be non-negative");
  // (2m-1)!!/(2m)!! = (2m)! / (4^m (m!)^2)
  const double md = static_cast<double>(m);
  return 0.5 * (std::lgamma(2.0 * md + 1.0) - 2.0 * std::lgamma(md + 1.0) - 2.0 * md * std::log(2.0));
}

cplx asymptotic_pseudostationary(int n, double q, double t, const OscillatorParams& params) {
  if (n < 1) throw DomainError("asymptotic form needs n >= 1");
  const int m = n / 2;
  const double wt = params.omega_tilde();
  const double s = std::exp(params.alpha() * t);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double amplitude = std::pow(wt / pi, 0.25) * sign * std::exp(log_double_factorial_ratio_sqrt(m));
  const double qs = q * s;
  const double wave = (n % 2 == 0) ? std::cos(std::sqrt((4.0 * m + 1.0) * wt) * qs)
                                   : std::sin(std::sqrt((4.0 * m + 3.0) * wt) * qs);
  const cplx chirp = std::polar(1.0, -0.5 * params.alpha() * qs * qs);
  return amplitude * wave * chirp;
}

}  // namespace dho
