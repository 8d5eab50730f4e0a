#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace faithful::cli {

enum class Command {
  analyze,
  table,
  witness_decompose,
  witness_order,
  schmidt_obs4,
  schmidt_obs5,
  uqm,
};

/// Command words as typed on the command line, e.g. {"witness", "order"}.
std::vector<std::string> command_words(Command c);

struct RunConfig {
  Command command = Command::analyze;
  /// Positional file arguments in order.
  std::vector<std::string> inputs;

  // analyze
  int seesaw_restarts = 50;
  double tol = 1e-7;
  int max_iterations = 50000;
  std::string json_out;

  // table
  std::string measure = "bures";
  int d = 3;
  std::int64_t n = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string csv_out;

  // schmidt
  std::vector<double> s;
  int level = 2;

  // uqm
  int restarts = 20;

  bool operator==(const RunConfig&) const = default;
};

/// Bad flags, files or values. `what()` names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown for --help and --version; `what()` is the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (argv[0] is the program name). Values from a --config JSON file
/// fill any flag not given on the command line. Throws UsageError or
/// HelpRequested.
RunConfig parse_args(int argc, const char* const* argv);
RunConfig parse_args(const std::vector<std::string>& args);

/// Range checks shared by the parser and the config file path.
void validate(const RunConfig& config);

/// Argument vector (without program name) that parses back to `config`.
std::vector<std::string> to_args(const RunConfig& config);

/// Config-file JSON with the flag names as keys, plus "command" and "inputs".
std::string to_json(const RunConfig& config);
RunConfig from_json(std::string_view document);

/// "0.6, 0.5 0.4" -> {0.6, 0.5, 0.4}.
std::vector<double> parse_number_list(std::string_view text, std::string_view flag);

std::string usage();

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitSolver = 3 };

/// Executes the command; results go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace faithful::cli
