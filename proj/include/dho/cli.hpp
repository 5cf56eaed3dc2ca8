#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dho/core.hpp"

namespace dho::cli {

enum class Command { states, evolve, coherent, squeezed, uncertainty, classical, equivalence, asymptotics };
enum class Format { csv, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_domain = 3;
inline constexpr int exit_io = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  OscillatorParams params = make_params(1.0, 0.6);
  Command command = Command::equivalence;
  std::optional<int> n;
  int n_max = 10;
  std::vector<double> times;  ///< empty: command default
  cplx z{1.0, 0.0};
  double xi = 0.5;
  double x0 = 1.0;
  double y0 = 0.0;
  double dt = 1e-3;
  std::optional<double> half_width;
  std::optional<std::size_t> points;
  int trunc = 128;
  unsigned threads = 0;  ///< 0: hardware concurrency
  Format format = Format::csv;
  std::string output;  ///< empty: stdout
};

/// Parses argv (argv[0] is the program name).  A key=value file given with
/// --config supplies defaults that explicit flags override.
/// Throws UsageError, DomainError or IoError.  `help` is set when --help was
/// requested, with the help text in `help_text`.
struct ParseResult {
  RunConfig config;
  bool help = false;
  std::string help_text;
};
ParseResult parse_config(int argc, const char* const* argv);

/// "a,b,c" (each entry a number or "tstar") or "tmin:tmax:steps".
std::vector<double> parse_times(const std::string& text, const OscillatorParams& params);

/// "1", "-0.5+0.8i", "0.3i", "re,im".
cplx parse_complex(const std::string& text);

std::string command_name(Command c);

using Cell = std::variant<double, long long, bool, std::string>;

/// Columnar output of one command, plus any checks it evaluated.
struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<CheckReport> checks;
};

Table execute(const RunConfig& config);

std::string to_csv(const Table& table);
std::string to_json(const Table& table, const RunConfig& config);

/// Writes to config.output (relative paths resolved against $DHO_OUTPUT_DIR
/// when set) or to `out`.  Throws IoError.
void emit(const Table& table, const RunConfig& config, std::ostream& out);

/// Full front end; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dho::cli
