#include <array>
#include <cmath>

#include "dho/operators.hpp"

namespace dho {

namespace {

// 8th-order central stencils, offsets 1..4.
constexpr std::array<double, 4> d1 = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
constexpr double d2_center = -205.0 / 72.0;
constexpr std::array<double, 4> d2 = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};

}  // namespace

WaveFunction derivative(const WaveFunction& psi) {
  WaveFunction out = WaveFunction::zero(psi.grid(), psi.time());
  const std::size_t n = psi.size();
  const double inv_h = 1.0 / psi.grid().spacing();
  for (std::size_t i = stencil_radius; i + stencil_radius < n; ++i) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < stencil_radius; ++k) acc += d1[k] * (psi[i + k + 1] - psi[i - k - 1]);
    out[i] = acc * inv_h;
  }
  return out;
}

WaveFunction second_derivative(const WaveFunction& psi) {
  WaveFunction out = WaveFunction::zero(psi.grid(), psi.time());
  const std::size_t n = psi.size();
  const double h = psi.grid().spacing();
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t i = stencil_radius; i + stencil_radius < n; ++i) {
    cplx acc = d2_center * psi[i];
    for (std::size_t k = 0; k < stencil_radius; ++k) acc += d2[k] * (psi[i + k + 1] + psi[i - k - 1]);
    out[i] = acc * inv_h2;
  }
  return out;
}

WaveFunction apply_on_grid(const QuadraticForm& form, const WaveFunction& psi) {
  const auto& g = psi.grid();
  WaveFunction out = WaveFunction::zero(g, psi.time());
  const bool needs_d1 = form.sym != 0.0;
  const bool needs_d2 = form.pp != 0.0;
  const WaveFunction dpsi = needs_d1 ? derivative(psi) : WaveFunction::zero(g, psi.time());
  const WaveFunction d2psi = needs_d2 ? second_derivative(psi) : WaveFunction::zero(g, psi.time());
  const cplx minus_i(0.0, -1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double q = g.point(i);
    cplx v = form.qq * q * q * psi[i];
    if (needs_d2) v -= form.pp * d2psi[i];
    if (needs_d1) v += form.sym * minus_i * (2.0 * q * dpsi[i] + psi[i]);
    out[i] = v;
  }
  return out;
}

cplx grid_expectation(const QuadraticForm& form, const WaveFunction& psi) {
  return inner_product(psi, apply_on_grid(form, psi));
}

cplx sinc_interpolate(const WaveFunction& psi, double q) {
  const auto& g = psi.grid();
  const double x = (q + g.half_width()) / g.spacing();
  const auto last = static_cast<double>(psi.size() - 1);
  if (x < -1e-9 || x > last + 1e-9) return 0.0;

  const double k = std::floor(x);
  const double f = x - k;
  const auto rounded = static_cast<std::size_t>(std::llround(x));
  if (std::abs(x - static_cast<double>(rounded)) < 1e-12) return psi[std::min(rounded, psi.size() - 1)];

  // sinc(x - j) = (-1)^(k+j) sin(pi f) / (pi (x - j)).
  const auto kk = static_cast<long long>(k);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double dist = static_cast<double>(kk - static_cast<long long>(j)) + f;
    const double term = ((kk + static_cast<long long>(j)) % 2 == 0) ? 1.0 / dist : -1.0 / dist;
    sum += term * psi[j];
  }
  return sum * (std::sin(pi * f) / pi);
}

}  // namespace dho
