#include "dho/equivalence.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "dho/hermite.hpp"
#include "dho/operators.hpp"
#include "dho/states.hpp"

namespace dho {

namespace {

// Shortest round-trip form, for check names.
std::string short_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

constexpr int panel_levels = 10;
const cplx panel_coherent[] = {cplx(1.0, 0.0), cplx(-0.5, 0.8)};

WaveFunction evolved_eigenstate(int n, double t, const OscillatorParams& params, const SpatialGrid& grid) {
  const WaveFunction psi = first_order_eigenstate(n, params, grid);
  const cplx phase = std::polar(1.0, -params.energy(n) * t);
  std::vector<cplx> s(psi.samples().begin(), psi.samples().end());
  for (auto& v : s) v *= phase;
  return WaveFunction(grid, std::move(s), t);
}

WaveFunction relabel(const WaveFunction& psi, double t) {
  return WaveFunction(psi.grid(), {psi.samples().begin(), psi.samples().end()}, t);
}

}  // namespace

EquivalenceSuite make_suite(const OscillatorParams& params, std::vector<int> n_levels, std::vector<double> times,
                            int trunc) {
  int n_max = panel_levels - 1;
  for (int n : n_levels) n_max = std::max(n_max, n);
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, std::abs(t));

  EquivalenceSuite s;
  s.params = params;
  s.n_levels = std::move(n_levels);
  s.times = std::move(times);
  s.grid = auto_grid(params, n_max, t_max, suite_oversample);
  s.trunc = trunc;
  return s;
}

EquivalenceSuite default_suite() {
  return make_suite(make_params(1.0, 0.6), {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {0.0, 0.25, 0.5, 1.0});
}

CheckReport check_state_map(int n, double t, const EquivalenceSuite& suite) {
  const std::string name = "state_map[n=" + std::to_string(n) + ",t=" + short_number(t) + "]";
  const WaveFunction evolved = evolved_eigenstate(n, t, suite.params, suite.grid);
  const WaveFunction mapped = apply_dilation(evolved, t, suite.params, Direction::forward);
  const WaveFunction exact = pseudostationary_state(n, t, suite.params, suite.grid);
  return CheckReport::make(name, max_abs_difference(mapped, exact), 0.0, 1e-7,
                           {{"n", std::to_string(n)},
                            {"t", format_double(t)},
                            {"grid_points", std::to_string(suite.grid.size())},
                            {"interpolation", "sinc"}});
}

CheckReport check_norm_map(const WaveFunction& psi, double t, const OscillatorParams& params) {
  const WaveFunction mapped = apply_dilation(psi, t, params, Direction::forward);
  const double before = norm_squared(psi);
  const double after = norm_squared(mapped);
  return CheckReport::make("norm_map[t=" + short_number(t) + "]", std::abs(after - before), 0.0, 1e-9,
                           {{"norm2_before", format_double(before)}, {"norm2_after", format_double(after)}});
}

CheckReport check_observable_map(double t, const EquivalenceSuite& suite) {
  const auto& params = suite.params;
  const auto& grid = suite.grid;
  const EnergyForms forms = energy_forms(t, params);
  const double a = params.alpha();

  struct Pair {
    QuadraticForm bck;
    FockMatrix first_order;  // already conjugated into the S-frame
    double worst = 0.0;
  };
  Pair pairs[] = {
      {forms.mechanical_bck, to_fock(forms.mechanical_first_order.conjugated_by_s(a), suite.trunc, params)},
      {forms.conserved_bck, to_fock(forms.lagrangian.conjugated_by_s(a), suite.trunc, params)},
  };

  auto compare = [&](const WaveFunction& phi, const FockVector& s_frame) {
    const WaveFunction mapped = apply_dilation(phi, t, params, Direction::forward);
    for (auto& pair : pairs) {
      const double bck = grid_expectation(pair.bck, mapped).real();
      const double first = pair.first_order.expectation(s_frame).real();
      pair.worst = std::max(pair.worst, std::abs(bck - first));
    }
  };

  for (int n = 0; n < panel_levels; ++n) {
    compare(evolved_eigenstate(n, t, params, grid), FockVector::basis_state(n, suite.trunc, params));
  }
  for (cplx z : panel_coherent) {
    const FockVector chi = coherent_state({z, 0.0}, params, suite.trunc);
    compare(relabel(apply_s_transform(synthesize(chi, grid), params, Direction::forward), t), chi);
  }

  const double worst = std::max(pairs[0].worst, pairs[1].worst);
  return CheckReport::make("observable_map[t=" + short_number(t) + "]", worst, 0.0, 1e-7,
                           {{"mechanical_pair", format_double(pairs[0].worst)},
                            {"conserved_pair", format_double(pairs[1].worst)},
                            {"panel", "psi_0..psi_9, S|1>, S|-0.5+0.8i>"}});
}

double windowed_residual(const std::function<cplx(double)>& f, cplx eigenvalue, const OscillatorParams& params) {
  // Window [-1, 1] at spacing 1e-3 plus the stencil guard on each side.
  constexpr std::size_t interior = 2001;
  const SpatialGrid local(1.0 + stencil_radius * 1e-3, interior + 2 * stencil_radius);
  std::vector<cplx> s(local.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(local.point(i));
  const WaveFunction psi(local, std::move(s));
  const WaveFunction h_psi = apply_on_grid(bck_hamiltonian_form(0.0, params), psi);

  double residual = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < interior; ++k) {
    const std::size_t i = k + stencil_radius;
    const double w = (k == 0 || k + 1 == interior) ? 0.5 : 1.0;
    residual += w * std::norm(h_psi[i] - eigenvalue * psi[i]);
    norm += w * std::norm(psi[i]);
  }
  return norm > 0.0 ? std::sqrt(residual / norm) : 0.0;
}

double asymptotic_residual(int n, const OscillatorParams& params, bool with_shift) {
  const cplx shift = with_shift ? cplx(0.0, 0.5 * params.alpha()) : cplx(0.0);
  return windowed_residual([&](double q) { return asymptotic_pseudostationary(n, q, 0.0, params); },
                           params.energy(n) + shift, params);
}

namespace {

void require_asymptotic(int n) {
  if (n < 32) throw DomainError("asymptotic checks need n >= 32");
}

}  // namespace

CheckReport asymptotic_eigen_residual(int n, const EquivalenceSuite& suite) {
  require_asymptotic(n);
  const double r1 = asymptotic_residual(n, suite.params, true);
  const double r4 = asymptotic_residual(4 * n, suite.params, true);
  return CheckReport::make("asymptotic_eigen_residual[n=" + std::to_string(n) + "]", r4 / r1, 0.7, 0.3,
                           {{"residual_n", format_double(r1)},
                            {"residual_4n", format_double(r4)},
                            {"window", "[-1,1]"},
                            {"accepted_band", "[0.4,1.0]"},
                            {"expected_scaling", "n^-1/4 (constant unknown)"}});
}

CheckReport asymptotic_control(int n, const EquivalenceSuite& suite) {
  require_asymptotic(n);
  const double r1 = asymptotic_residual(n, suite.params, false);
  const double r4 = asymptotic_residual(4 * n, suite.params, false);
  return CheckReport::at_least("asymptotic_control_unshifted[n=" + std::to_string(n) + "]", r4 / r1, 0.9,
                               {{"residual_n", format_double(r1)}, {"residual_4n", format_double(r4)}});
}

cplx boundary_term_diagnostic(const WaveFunction& phi, const WaveFunction& psi, double half_width) {
  const double q = std::abs(half_width);
  const double reach = std::min(phi.grid().half_width(), psi.grid().half_width());
  if (q > reach * (1.0 + 1e-12)) throw GridError("boundary point lies outside a grid");
  const cplx right = std::conj(sinc_interpolate(phi, q)) * sinc_interpolate(psi, q);
  const cplx left = std::conj(sinc_interpolate(phi, -q)) * sinc_interpolate(psi, -q);
  return cplx(0.0, -2.0) * q * (right + left);
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

EquivalenceSuite run_suite(EquivalenceSuite suite, unsigned threads) {
  struct Task {
    std::string name;
    std::function<CheckReport()> run;
  };
  std::vector<Task> tasks;
  const auto& s = suite;

  if (!s.n_levels.empty()) {
    for (int n : s.n_levels) {
      for (double t : s.times) {
        tasks.push_back({"state_map", [&s, n, t] { return check_state_map(n, t, s); }});
      }
    }
    for (int n : s.n_levels) {
      for (double t : s.times) {
        tasks.push_back({"norm_map", [&s, n, t] {
                           CheckReport r = check_norm_map(evolved_eigenstate(n, t, s.params, s.grid), t, s.params);
                           r.check_name = "norm_map[n=" + std::to_string(n) + ",t=" + short_number(t) + "]";
                           return r;
                         }});
      }
    }
    for (double t : s.times) {
      tasks.push_back({"observable_map", [&s, t] { return check_observable_map(t, s); }});
    }
    for (double t : s.times) {
      tasks.push_back({"heisenberg_commutator", [&s, t] {
                         CheckReport r = heisenberg_commutator_check(t, s.trunc, s.params);
                         r.check_name = "heisenberg_commutator[t=" + short_number(t) + "]";
                         return r;
                       }});
    }
    const double edge = 10.0 / std::sqrt(s.params.omega_tilde());
    for (int n : s.n_levels) {
      tasks.push_back({"boundary_term", [&s, n, edge] {
                         const WaveFunction psi = first_order_eigenstate(n, s.params, s.grid);
                         const double value = std::abs(boundary_term_diagnostic(psi, psi, edge));
                         return CheckReport::make("boundary_term[n=" + std::to_string(n) + "]", value, 0.0, 1e-12,
                                                  {{"Q", format_double(edge)}});
                       }});
    }
  }

  std::vector<CheckReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        reports[i] = tasks[i].run();
      } catch (const std::exception& e) {
        reports[i] = CheckReport::failure(tasks[i].name, e.what());
      }
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
  }

  suite.reports = std::move(reports);
  return suite;
}

}  // namespace dho
