#include "dho/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "dho/dynamics.hpp"
#include "dho/equivalence.hpp"
#include "dho/hermite.hpp"
#include "dho/operators.hpp"
#include "dho/states.hpp"

namespace dho::cli {

namespace {

const std::map<std::string, Command> command_table = {
    {"states", Command::states},           {"evolve", Command::evolve},
    {"coherent", Command::coherent},       {"squeezed", Command::squeezed},
    {"uncertainty", Command::uncertainty}, {"classical", Command::classical},
    {"equivalence", Command::equivalence}, {"asymptotics", Command::asymptotics},
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw UsageError("not a number: '" + raw + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, value] : command_table) {
    if (value == c) return name;
  }
  return "unknown";
}

std::vector<double> parse_times(const std::string& text, const OscillatorParams& params) {
  auto value = [&](const std::string& token) {
    if (trim(token) == "tstar") {
      const auto ts = critical_time(params);
      if (!ts) throw DomainError("tstar is undefined for alpha = 0");
      return *ts;
    }
    return parse_number(token);
  };

  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("time range must read tmin:tmax:steps");
    const double lo = value(parts[0]);
    const double hi = value(parts[1]);
    const double steps = parse_number(parts[2]);
    if (steps < 1 || steps != std::floor(steps)) throw UsageError("time range needs a positive integer step count");
    const auto count = static_cast<std::size_t>(steps);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    if (count > 1) out.back() = hi;
    return out;
  }

  std::vector<double> out;
  for (const auto& token : split(text, ',')) out.push_back(value(token));
  if (out.empty()) throw UsageError("empty time list");
  return out;
}

cplx parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw UsageError("empty complex number");
  if (s.find(',') != std::string::npos) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw UsageError("complex number must read re,im");
    return {parse_number(parts[0]), parse_number(parts[1])};
  }
  if (s.back() != 'i') return {parse_number(s), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag = [](const std::string& part) {
    const std::string p = trim(part);
    if (p.empty() || p == "+") return 1.0;
    if (p == "-") return -1.0;
    return parse_number(p);
  };
  if (cut == std::string::npos) return {0.0, imag(body)};
  return {parse_number(body.substr(0, cut)), imag(body.substr(cut))};
}

ParseResult parse_config(int argc, const char* const* argv) {
  CLI::App app{"Damped harmonic oscillator: BCK and first-order quantization", "dho"};
  app.set_config("--config", "", "key=value configuration file; flags given on the command line win");
  app.allow_config_extras(false);

  std::string command = "equivalence";
  double omega = 1.0;
  double alpha = 0.6;
  std::optional<int> n;
  int n_max = 10;
  std::string t_text;
  std::string z_text = "1";
  RunConfig cfg;
  std::string format = "csv";
  std::optional<double> half_width;
  std::optional<std::size_t> points;

  app.add_option("command", command, "states | evolve | coherent | squeezed | uncertainty | classical | "
                                     "equivalence | asymptotics")
      ->check(CLI::IsMember(command_table));
  app.add_option("--omega", omega, "natural frequency")->capture_default_str();
  app.add_option("--alpha", alpha, "damping rate, 0 <= alpha < omega")->capture_default_str();
  app.add_option("--n", n, "quantum number (asymptotics: base level)");
  app.add_option("--n-max", n_max, "highest level (equivalence, asymptotics)")->capture_default_str();
  app.add_option("--t", t_text, "times: a,b,c or tmin:tmax:steps; 'tstar' is accepted")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--z", z_text, "coherent amplitude, e.g. 1, -0.5+0.8i or re,im")
      ->capture_default_str()
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--xi", cfg.xi, "squeeze parameter")->capture_default_str();
  app.add_option("--x0", cfg.x0, "classical initial position")->capture_default_str();
  app.add_option("--y0", cfg.y0, "classical initial velocity")->capture_default_str();
  app.add_option("--dt", cfg.dt, "RK4 step")->capture_default_str();
  app.add_option("--half-width", half_width, "grid half-width override");
  app.add_option("--points", points, "grid point count override (odd)");
  app.add_option("--trunc", cfg.trunc, "Fock truncation M")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for the equivalence suite, 0 = all cores")
      ->capture_default_str();
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output", cfg.output, "output file (default stdout)");

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    result.help = true;
    result.help_text = app.help();
    return result;
  } catch (const CLI::FileError& e) {
    throw IoError(e.what());
  } catch (const CLI::ConfigError& e) {
    throw IoError(std::string("malformed config file: ") + e.what());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.params = make_params(omega, alpha);
  cfg.command = command_table.at(command);
  cfg.n = n;
  cfg.n_max = n_max;
  if (!t_text.empty()) cfg.times = parse_times(t_text, cfg.params);
  cfg.z = parse_complex(z_text);
  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.half_width = half_width;
  cfg.points = points;

  if (n && *n < 0) throw DomainError("n must be non-negative");
  if (n_max < 0) throw DomainError("n-max must be non-negative");
  if (cfg.trunc < 8) throw DomainError("truncation M must be at least 8");
  if (!(cfg.dt > 0.0)) throw DomainError("dt must be positive");
  if (!std::isfinite(cfg.xi)) throw DomainError("xi must be finite");
  result.config = std::move(cfg);
  return result;
}

// ---- execution -----------------------------------------------------------

namespace {

std::vector<double> times_or(const RunConfig& c, std::vector<double> fallback) {
  return c.times.empty() ? fallback : c.times;
}

std::vector<double> range(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1.0);
  out.back() = hi;
  return out;
}

double max_abs_time(const std::vector<double>& times) {
  double m = 0.0;
  for (double t : times) m = std::max(m, std::abs(t));
  return m;
}

SpatialGrid grid_for(const RunConfig& c, int n_max, double t_max, double oversample) {
  const SpatialGrid automatic = auto_grid(c.params, n_max, t_max, oversample);
  if (!c.half_width && !c.points) return automatic;
  const double q = c.half_width.value_or(automatic.half_width());
  std::size_t pts = c.points.value_or(0);
  if (!c.points) {
    pts = static_cast<std::size_t>(std::ceil(2.0 * q / automatic.spacing())) + 1;
    if (pts % 2 == 0) ++pts;
  }
  return SpatialGrid(q, pts);
}

std::string tag(double t) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), t);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

void append_samples(Table& table, const WaveFunction& psi) {
  const auto& g = psi.grid();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const cplx v = psi[i];
    table.rows.push_back({psi.time(), g.point(i), v.real(), v.imag(), std::abs(v)});
  }
}

Table run_states(const RunConfig& c) {
  const int n = c.n.value_or(0);
  const auto times = times_or(c, {0.0});
  const SpatialGrid grid = grid_for(c, n, max_abs_time(times), 1.0);
  Table table{"states", {"t", "q", "re", "im", "abs"}, {}, {}};
  for (double t : times) {
    const WaveFunction psi = pseudostationary_state(n, t, c.params, grid);
    append_samples(table, psi);
    table.checks.push_back(CheckReport::make("norm[t=" + tag(t) + "]", norm_squared(psi), 1.0, 1e-9,
                                             {{"n", std::to_string(n)}}));
  }
  return table;
}

Table run_evolve(const RunConfig& c) {
  const auto times = times_or(c, {0.0, 0.5, 1.0});
  const int extent = c.n ? *c.n : coherent_truncation(c.z);
  const SpatialGrid grid = grid_for(c, extent, max_abs_time(times), 2.0);

  WaveFunction psi0 = c.n ? first_order_eigenstate(*c.n, c.params, grid)
                          : apply_s_transform(synthesize(coherent_state({c.z, 0.0}, c.params, c.trunc), grid),
                                              c.params, Direction::forward);
  const double norm0 = norm_squared(psi0);

  Table table{"evolve", {"t", "q", "re", "im", "abs"}, {}, {}};
  for (double t : times) {
    if (t < 0.0) throw DomainError("evolve runs forward in time only");
    const WaveFunction psi = evolve_bck(psi0, t, c.params, c.trunc);
    append_samples(table, psi);
    table.checks.push_back(CheckReport::make("norm_drift[t=" + tag(t) + "]", norm_squared(psi) - norm0, 0.0, 1e-9));
    if (c.n) {
      const WaveFunction exact = pseudostationary_state(*c.n, t, c.params, grid);
      table.checks.push_back(CheckReport::make("pseudostationary[t=" + tag(t) + "]",
                                               max_abs_difference(psi, exact), 0.0, 1e-7));
    }
  }
  return table;
}

Table run_coherent(const RunConfig& c) {
  const auto times = times_or(c, range(0.0, 5.0, 51));
  const double wt = c.params.omega_tilde();
  const int dim = std::max(c.trunc, coherent_truncation(c.z));
  const TrajectorySample start = coherent_means(c.z, 0.0, c.params);

  Table table{"coherent",
              {"t", "mean_x", "mean_y", "var_x", "var_y", "uncertainty", "rk4_x", "rk4_y", "fock_uncertainty"},
              {},
              {}};
  double worst_rk4 = 0.0;
  double worst_fock = 0.0;
  for (double t : times) {
    const TrajectorySample m = coherent_means(c.z, t, c.params);
    const PhasePoint p = classical_rk4({start.mean_x, start.mean_y, 0.0}, t, c.dt, c.params);
    // In the S-frame the first-order evolution is the plain omega_tilde rotation.
    const FockVector chi = coherent_state({c.z * std::polar(1.0, -wt * t), 0.0}, c.params, dim);
    const TrajectorySample f = fock_moments(chi, t, c.params);
    worst_rk4 = std::max({worst_rk4, std::abs(p.x - m.mean_x), std::abs(p.y - m.mean_y)});
    worst_fock = std::max(worst_fock, std::abs(f.uncertainty_product - m.uncertainty_product));
    table.rows.push_back({t, m.mean_x, m.mean_y, m.var_x, m.var_y, m.uncertainty_product, p.x, p.y,
                          f.uncertainty_product});
  }
  table.checks.push_back(CheckReport::make("ehrenfest_rk4", worst_rk4, 0.0, 1e-8, {{"dt", format_double(c.dt)}}));
  table.checks.push_back(CheckReport::make("fock_uncertainty", worst_fock, 0.0, 1e-8, {{"M", std::to_string(dim)}}));
  return table;
}

Table run_squeezed(const RunConfig& c) {
  const auto times = times_or(c, range(0.0, 2.0, 21));
  Table table{"squeezed", {"t", "var_x", "fock_var_x", "mean_x", "mean_y", "fock_mean_x", "fock_mean_y"}, {}, {}};
  double worst = 0.0;
  for (double t : times) {
    const double var = squeezed_variance_x(c.xi, t, c.params);
    const SqueezedMeans m = squeezed_means(c.z, c.xi, t, c.params);
    const TrajectorySample f = fock_moments(squeezed_state({c.z, c.xi}, t, c.params, c.trunc), t, c.params);
    worst = std::max({worst, std::abs(f.var_x - var), std::abs(f.mean_x - m.mean_x), std::abs(f.mean_y - m.mean_y)});
    table.rows.push_back({t, var, f.var_x, m.mean_x, m.mean_y, f.mean_x, f.mean_y});
  }
  table.checks.push_back(CheckReport::make("squeezed_fock_agreement", worst, 0.0, 1e-8,
                                           {{"xi", format_double(c.xi)}, {"M", std::to_string(c.trunc)}}));
  return table;
}

Table run_uncertainty(const RunConfig& c) {
  const auto times = times_or(c, range(0.0, 2.0, 101));
  Table table{"uncertainty", {"t", "uncertainty"}, {}, {}};
  for (double t : times) table.rows.push_back({t, uncertainty_product(t, c.params)});
  if (const auto ts = critical_time(c.params)) {
    table.checks.push_back(CheckReport::make("heisenberg_bound_at_tstar", uncertainty_product(*ts, c.params), 0.5,
                                             1e-12, {{"tstar", format_double(*ts)}}));
  }
  return table;
}

Table run_classical(const RunConfig& c) {
  const auto times = times_or(c, range(0.0, 5.0, 51));
  const PhasePoint start{c.x0, c.y0, 0.0};
  Table table{"classical", {"t", "x", "y", "rk4_x", "rk4_y", "energy", "rk4_energy"}, {}, {}};
  double worst = 0.0;
  for (double t : times) {
    const PhasePoint exact = classical_closed_form(start, t, c.params);
    const PhasePoint p = classical_rk4(start, t, c.dt, c.params);
    worst = std::max({worst, std::abs(p.x - exact.x), std::abs(p.y - exact.y)});
    table.rows.push_back({t, exact.x, exact.y, p.x, p.y, mechanical_energy(exact, c.params),
                          mechanical_energy(p, c.params)});
  }
  table.checks.push_back(CheckReport::make("rk4_vs_closed_form", worst, 0.0, 1e-8, {{"dt", format_double(c.dt)}}));

  const double t_end = max_abs_time(times);
  if (t_end > 0.0) {
    const auto traj = classical_rk4_trajectory(start, t_end, c.dt, c.params);
    double residual = 0.0;
    for (double r : multiplier_residuals(traj, c.params)) residual = std::max(residual, std::abs(r));
    table.checks.push_back(CheckReport::make("euler_lagrange_residual", residual, 0.0, 1e-6,
                                             {{"t_end", format_double(t_end)}}));
  }
  return table;
}

unsigned worker_count(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

Table run_equivalence(const RunConfig& c) {
  std::vector<int> levels(static_cast<std::size_t>(c.n_max) + 1);
  for (int n = 0; n <= c.n_max; ++n) levels[static_cast<std::size_t>(n)] = n;
  EquivalenceSuite suite = make_suite(c.params, levels, times_or(c, {0.0, 0.25, 0.5, 1.0}), c.trunc);
  if (c.half_width || c.points) suite.grid = grid_for(c, c.n_max, max_abs_time(suite.times), suite_oversample);
  suite = run_suite(std::move(suite), worker_count(c));

  Table table{"equivalence", {"check_name", "measured", "target", "tolerance", "passed"}, {}, {}};
  for (const auto& r : suite.reports) {
    table.rows.push_back({r.check_name, r.measured, r.target, r.tolerance, r.passed});
  }
  table.checks = suite.reports;
  return table;
}

Table run_asymptotics(const RunConfig& c) {
  const int n = c.n.value_or(64);
  if (n < 32) throw DomainError("asymptotics needs n >= 32");
  const int top = std::max(n, c.n_max > 10 ? c.n_max : 4 * n);
  Table table{"asymptotics", {"n", "residual_shifted", "residual_unshifted"}, {}, {}};
  for (int k = n; k <= top; k *= 2) {
    table.rows.push_back({static_cast<long long>(k), asymptotic_residual(k, c.params, true),
                          asymptotic_residual(k, c.params, false)});
  }

  EquivalenceSuite suite = make_suite(c.params, {}, {});
  table.checks.push_back(asymptotic_eigen_residual(n, suite));
  table.checks.push_back(asymptotic_control(n, suite));

  double smallest = std::numeric_limits<double>::infinity();
  std::map<std::string, std::string> md;
  for (double q : {5.0, 10.0, 20.0}) {
    const SpatialGrid edge(q, SpatialGrid::min_points);
    std::vector<cplx> s(edge.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = asymptotic_pseudostationary(100, edge.point(i), 0.0, c.params);
    const WaveFunction psi(edge, std::move(s));
    const double value = std::abs(boundary_term_diagnostic(psi, psi, q));
    md["Q=" + tag(q)] = format_double(value);
    smallest = std::min(smallest, value);
  }
  table.checks.push_back(CheckReport::at_least("asymptotic_boundary_term[n=100]", smallest, 0.01, md));
  return table;
}

}  // namespace

Table execute(const RunConfig& c) {
  switch (c.command) {
    case Command::states: return run_states(c);
    case Command::evolve: return run_evolve(c);
    case Command::coherent: return run_coherent(c);
    case Command::squeezed: return run_squeezed(c);
    case Command::uncertainty: return run_uncertainty(c);
    case Command::classical: return run_classical(c);
    case Command::equivalence: return run_equivalence(c);
    case Command::asymptotics: return run_asymptotics(c);
  }
  throw UsageError("unknown command");
}

// ---- serialization -------------------------------------------------------

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return csv_field(v);
      },
      cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) out += ',';
    out += csv_field(table.columns[k]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += csv_cell(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table, const RunConfig& config) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["command"] = table.command;
  doc["params"] = {{"omega", config.params.omega()},
                   {"alpha", config.params.alpha()},
                   {"omega_tilde", config.params.omega_tilde()}};
  doc["columns"] = table.columns;

  json records = json::array();
  for (const auto& row : table.rows) {
    json rec = json::object();
    for (std::size_t k = 0; k < row.size(); ++k) rec[table.columns[k]] = json_cell(row[k]);
    records.push_back(std::move(rec));
  }
  if (table.command == "equivalence") {
    for (std::size_t i = 0; i < records.size(); ++i) records[i]["metadata"] = table.checks[i].metadata;
  }
  doc["records"] = std::move(records);

  json checks = json::array();
  for (const auto& r : table.checks) {
    checks.push_back({{"check_name", r.check_name},
                      {"measured", r.measured},
                      {"target", r.target},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"metadata", r.metadata}});
  }
  doc["checks"] = std::move(checks);
  doc["passed"] = all_passed(table.checks);
  return doc.dump(2) + "\n";
}

void emit(const Table& table, const RunConfig& config, std::ostream& out) {
  const std::string text = config.format == Format::json ? to_json(table, config) : to_csv(table);
  if (config.output.empty()) {
    out << text;
    out.flush();
    if (!out) throw IoError("could not write to standard output");
    return;
  }
  std::filesystem::path path(config.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("DHO_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing " + path.string());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    ParseResult parsed = parse_config(argc, argv);
    if (parsed.help) {
      out << parsed.help_text;
      return exit_ok;
    }
    const Table table = execute(parsed.config);
    emit(table, parsed.config, out);
    for (const auto& r : table.checks) {
      if (!r.passed) err << "FAILED " << r.check_name << " measured=" << format_double(r.measured) << '\n';
    }
    return all_passed(table.checks) ? exit_ok : exit_check_failed;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_io;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const GridError& e) {
    err << "grid error: " << e.what() << '\n';
    return exit_domain;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << '\n';
    return exit_domain;
  }
}

}  // namespace dho::cli
