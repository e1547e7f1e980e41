#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinstar/density_matrix.hpp"
#include "spinstar/spin_algebra.hpp"

namespace spinstar::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { finite, oracle, thermo, asymptote, master, moments };
enum class OutputFormat { csv, json };

struct InitialState {
  enum class Kind { singlet, psi_plus, phi_plus, phi_minus, product, explicit_matrix };
  Kind kind = Kind::singlet;
  /// Product state |e1 e2>; true selects |+>.
  bool plus1 = false;
  bool plus2 = false;
  Matrix4c matrix = Matrix4c::Zero();

  DensityMatrix4 build() const;
  std::string label() const;
};

/// Everything a single invocation needs. Times are in units of 1/alpha.
struct RunConfig {
  Command command = Command::finite;
  CouplingParams params{1.0, 1.0, 10};
  InitialState initial_state;
  double t_start = 0.0;
  double t_end = 10.0;
  int t_steps = 200;
  /// Empty writes to standard output.
  std::string output_path;
  OutputFormat format = OutputFormat::csv;

  // asymptote sweep
  double delta_start = 0.0;
  double delta_end = 3.0;
  int delta_steps = 60;
  // moments
  int moment_max = 5;
  // master: add exact finite-N columns
  bool overlay = false;

  /// Throws ConfigError on the first violated constraint.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses command-line arguments (without the program name). `--config FILE` reads
/// `key = value` lines using the long option names as keys. Throws ConfigError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Usage text for --help.
std::string usage();

/// Runs the configured command and writes the table. Returns the process exit status;
/// diagnostics go to `err` as one line.
int run(const RunConfig& config, std::ostream& err);

/// Writes the table for `config` to `out` in the configured format.
void write_table(const RunConfig& config, std::ostream& out);

}  // namespace spinstar::cli
