#include "dho/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "dho/operators.hpp"
#include "dho/states.hpp"

namespace dho {

PhasePoint classical_closed_form(PhasePoint p0, double t, const OscillatorParams& params) {
  const double a = params.alpha();
  const double wt = params.omega_tilde();
  const double e = std::exp(-a * t);
  const double c = std::cos(wt * t);
  const double s = std::sin(wt * t);
  const double b = (p0.y + a * p0.x) / wt;
  const double x = e * (p0.x * c + b * s);
  const double y = -a * x + e * (-p0.x * wt * s + b * wt * c);
  return {x, y, p0.t + t};
}

namespace {

struct Rates {
  double dx;
  double dy;
};

Rates rhs(double x, double y, const OscillatorParams& params) {
  const double w = params.omega();
  return {y, -w * w * x - 2.0 * params.alpha() * y};
}

PhasePoint rk4_step(const PhasePoint& p, double h, const OscillatorParams& params) {
  const Rates k1 = rhs(p.x, p.y, params);
  const Rates k2 = rhs(p.x + 0.5 * h * k1.dx, p.y + 0.5 * h * k1.dy, params);
  const Rates k3 = rhs(p.x + 0.5 * h * k2.dx, p.y + 0.5 * h * k2.dy, params);
  const Rates k4 = rhs(p.x + h * k3.dx, p.y + h * k3.dy, params);
  return {p.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
          p.y + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy), p.t + h};
}

std::size_t step_count(double t, double dt) {
  if (!(dt > 0.0)) throw DomainError("RK4 step must be positive");
  if (!(t >= 0.0)) throw DomainError("RK4 integrates forward in time only");
  return static_cast<std::size_t>(std::ceil(t / dt - 1e-12));
}

}  // namespace

PhasePoint classical_rk4(PhasePoint p0, double t, double dt, const OscillatorParams& params) {
  const std::size_t steps = step_count(t, dt);
  if (steps == 0) return p0;
  const double h = t / static_cast<double>(steps);
  PhasePoint p = p0;
  for (std::size_t i = 0; i < steps; ++i) p = rk4_step(p, h, params);
  p.t = p0.t + t;
  return p;
}

std::vector<PhasePoint> classical_rk4_trajectory(PhasePoint p0, double t, double dt,
                                                 const OscillatorParams& params) {
  const std::size_t steps = step_count(t, dt);
  std::vector<PhasePoint> out;
  out.reserve(steps + 1);
  out.push_back(p0);
  if (steps == 0) return out;
  const double h = t / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    PhasePoint next = rk4_step(out.back(), h, params);
    next.t = p0.t + static_cast<double>(i + 1) * h;
    out.push_back(next);
  }
  return out;
}

std::vector<double> multiplier_residuals(const std::vector<PhasePoint>& trajectory,
                                         const OscillatorParams& params) {
  std::vector<double> out;
  if (trajectory.size() < 5) return out;
  const double h = trajectory[1].t - trajectory[0].t;
  const double a = params.alpha();
  const double w2 = params.omega() * params.omega();
  out.reserve(trajectory.size() - 4);
  for (std::size_t i = 2; i + 2 < trajectory.size(); ++i) {
    const double ydot = (-trajectory[i + 2].y + 8.0 * trajectory[i + 1].y - 8.0 * trajectory[i - 1].y +
                         trajectory[i - 2].y) /
                        (12.0 * h);
    const auto& p = trajectory[i];
    out.push_back(std::exp(2.0 * a * p.t) * (ydot + 2.0 * a * p.y + w2 * p.x));
  }
  return out;
}

double mechanical_energy(const PhasePoint& p, const OscillatorParams& params) {
  const double w = params.omega();
  return 0.5 * (p.y * p.y + w * w * p.x * p.x);
}

std::optional<double> critical_time(const OscillatorParams& params) {
  if (params.alpha() == 0.0) return std::nullopt;
  return std::log(params.omega() / params.omega_tilde()) / (2.0 * params.alpha());
}

double uncertainty_product(double t, const OscillatorParams& params) {
  // Written around t* so that the value at t = t* is exactly 1/2.
  if (const auto ts = critical_time(params)) return 0.5 * std::exp(-2.0 * params.alpha() * (t - *ts));
  return 0.5 * params.omega() / params.omega_tilde();
}

TrajectorySample coherent_means(cplx z, double t, const OscillatorParams& params) {
  const double a = params.alpha();
  const double wt = params.omega_tilde();
  const double w = params.omega();
  const double e = std::exp(-a * t);
  const cplx rot = std::polar(1.0, -wt * t);
  const cplx zr = z * rot;  // z e^{-i wt t}

  TrajectorySample s;
  s.t = t;
  s.mean_x = e * 2.0 * zr.real() / std::sqrt(2.0 * wt);
  // i (conj(zr) - zr) = 2 Im(zr)
  s.mean_y = std::sqrt(0.5 * wt) * e * 2.0 * zr.imag() - a * s.mean_x;
  s.var_x = e * e / (2.0 * wt);
  s.var_y = e * e * w * w / (2.0 * wt);
  s.uncertainty_product = uncertainty_product(t, params);
  return s;
}

TrajectorySample fock_moments(const FockVector& state, double t, const OscillatorParams& params) {
  const int m = state.dim();
  if (m < 4) throw DomainError("moments need M >= 4");
  const double norm = state.norm_squared();
  auto mean = [&](const QuadraticForm& f) { return to_fock(f, m, params).expectation(state).real() / norm; };

  const double q = position_matrix(m, params).expectation(state).real() / norm;
  const double p = momentum_matrix(m, params).expectation(state).real() / norm;
  const double q2 = mean({0.0, 1.0, 0.0, "q^2"});
  const double p2 = mean({1.0, 0.0, 0.0, "p^2"});
  const double sym = mean(symmetrized_product_form());

  const double a = params.alpha();
  const double e = std::exp(-a * t);
  const double py = p - a * q;  // S^{-1} p S = p - alpha q
  const double py2 = p2 - a * sym + a * a * q2;

  TrajectorySample s;
  s.t = t;
  s.mean_x = e * q;
  s.mean_y = e * py;
  s.var_x = e * e * (q2 - q * q);
  s.var_y = e * e * (py2 - py * py);
  s.uncertainty_product = std::sqrt(std::max(0.0, s.var_x) * std::max(0.0, s.var_y));
  return s;
}

RadiusReport trajectory_radius(cplx z, double t, const OscillatorParams& params) {
  const TrajectorySample m = coherent_means(z, t, params);
  const double a = params.alpha();
  const double wt = params.omega_tilde();
  const double r = std::abs(z);
  const double phi = wt * t - std::arg(z);

  RadiusReport out;
  out.from_means = std::hypot(m.mean_x, m.mean_y);
  const double radicand = 1.0 + a * a * std::cos(phi) + a * std::sin(2.0 * phi);
  out.compact_form = std::sqrt(2.0 / wt) * std::exp(-a * t) * r * std::sqrt(std::max(0.0, radicand));
  out.deviation = std::abs(out.compact_form - out.from_means);
  return out;
}

SqueezedMeans squeezed_means(cplx z, double xi, double t, const OscillatorParams& params) {
  const double a = params.alpha();
  const double wt = params.omega_tilde();
  const double e = std::exp(-a * t);
  const double ch = std::cosh(xi);
  const double sh = std::sinh(xi);
  const cplx em = std::polar(1.0, -wt * t);
  const cplx ep = std::conj(em);
  const cplx zb = std::conj(z);
  const cplx i(0.0, 1.0);

  const cplx x = e / std::sqrt(2.0 * wt) * ((em * z + ep * zb) * ch - (ep * z + em * zb) * sh);
  const cplx p = i * std::sqrt(0.5 * wt) * e * ((ep * zb - em * z) * ch - (ep * z - em * zb) * sh);
  return {x.real(), p.real() - a * x.real()};
}

double squeezed_variance_x(double xi, double t, const OscillatorParams& params) {
  const double wt = params.omega_tilde();
  const double ch = std::cosh(xi);
  const double sh = std::sinh(xi);
  const double c = std::cos(wt * t);
  const double bracket = (ch + sh) * (ch + sh) - 4.0 * ch * sh * c * c;
  return std::exp(-2.0 * params.alpha() * t) * bracket / (2.0 * wt);
}

FirstOrderPropagator::FirstOrderPropagator(int dim, const OscillatorParams& params) : params_(params) {
  const FockMatrix h = hamiltonian_first_order(dim, params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries);
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

FockVector FirstOrderPropagator::evolve(const FockVector& state, double t) const {
  if (state.dim() != dim()) throw DomainError("state and propagator truncations differ");
  const Eigen::VectorXcd phases = energies_.unaryExpr([t](double e) { return std::polar(1.0, -e * t); });
  Eigen::VectorXcd c = vectors_ * phases.asDiagonal() * (vectors_.adjoint() * state.coeffs());
  return FockVector(std::move(c), state.basis());
}

std::shared_ptr<const FirstOrderPropagator> propagator_for(int dim, const OscillatorParams& params) {
  using Key = std::tuple<int, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const FirstOrderPropagator>> cache;

  const Key key{dim, params.omega(), params.alpha()};
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<const FirstOrderPropagator>(dim, params);
  return slot;
}

FockVector evolve_first_order(const FockVector& state, double t, const OscillatorParams& params,
                              double tail_tolerance) {
  if (!(state.basis() == params)) throw DomainError("state basis does not match the parameters");
  const int m = state.dim();
  if (m < 4) throw DomainError("evolution needs M >= 4");
  const double tail = state.tail_weight(m - std::max(4, m / 8));
  if (tail > tail_tolerance) {
    throw TruncationError("state has weight " + format_double(tail) + " in the top levels of M=" +
                          std::to_string(m) + "; increase the truncation");
  }
  if (t == 0.0) return state;
  return propagator_for(m, params)->evolve(state, t);
}

WaveFunction evolve_bck(const WaveFunction& psi0, double t, const OscillatorParams& params, int dim,
                        double norm_tolerance) {
  const FockVector c = project(psi0, params, dim);
  const double drift = std::abs(norm_squared(psi0) - c.norm_squared());
  if (drift > norm_tolerance) {
    throw TruncationError("projection onto M=" + std::to_string(dim) + " levels misses " +
                          format_double(drift) + " of the norm");
  }
  if (t == 0.0) return WaveFunction(psi0.grid(), {psi0.samples().begin(), psi0.samples().end()}, 0.0);
  const FockVector evolved = evolve_first_order(c, t, params);
  const WaveFunction first_order = synthesize(evolved, psi0.grid(), t);
  return apply_dilation(first_order, t, params, Direction::forward);
}

}  // namespace dho
