#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinstar/cli.hpp"
#include "spinstar/oracle.hpp"

namespace spinstar::cli {
namespace {

const std::map<std::string, Command> kCommands{
    {"finite", Command::finite}, {"oracle", Command::oracle},   {"thermo", Command::thermo},
    {"asymptote", Command::asymptote}, {"master", Command::master}, {"moments", Command::moments}};

struct RawOptions {
  std::string command = "finite";
  std::string state = "singlet";
  std::string rho;
  std::string format = "csv";
};

InitialState parse_state(const std::string& text) {
  using Kind = InitialState::Kind;
  InitialState s;
  if (text == "singlet" || text == "psi_minus") return s;
  if (text == "psi_plus") {
    s.kind = Kind::psi_plus;
    return s;
  }
  if (text == "phi_plus") {
    s.kind = Kind::phi_plus;
    return s;
  }
  if (text == "phi_minus") {
    s.kind = Kind::phi_minus;
    return s;
  }
  if (text == "explicit") {
    s.kind = Kind::explicit_matrix;
    return s;
  }
  // product:+- or product(+-)
  if (text.rfind("product", 0) == 0) {
    std::string signs = text.substr(7);
    std::erase_if(signs, [](char c) { return c == ':' || c == '(' || c == ')'; });
    if (signs.size() == 2 && (signs[0] == '+' || signs[0] == '-') && (signs[1] == '+' || signs[1] == '-')) {
      s.kind = Kind::product;
      s.plus1 = signs[0] == '+';
      s.plus2 = signs[1] == '+';
      return s;
    }
  }
  throw ConfigError("--state: unrecognised state '" + text + "'");
}

// 16 real entries, or 32 numbers as (re, im) pairs, row-major; commas or whitespace separate.
Matrix4c parse_matrix(std::string text) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) throw ConfigError("--rho: malformed number '" + token + "'");
    values.push_back(v);
  }
  Matrix4c m;
  if (values.size() == 16) {
    for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = values[k];
  } else if (values.size() == 32) {
    for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = cplx(values[2 * k], values[2 * k + 1]);
  } else {
    throw ConfigError("--rho: expected 16 or 32 numbers, got " + std::to_string(values.size()));
  }
  return m;
}

std::unique_ptr<CLI::App> make_app(RunConfig& cfg, RawOptions& raw) {
  auto app = std::make_unique<CLI::App>("Two central qubits coupled to separate spin-star baths", "spinstar");
  app->set_help_flag();
  app->allow_config_extras(CLI::config_extras_mode::error);
  app->set_config("--config", "", "File of key = value lines using the long option names");
  app->add_option("command", raw.command, "finite | oracle | thermo | asymptote | master | moments");
  app->add_option("--alpha", cfg.params.alpha, "Qubit-bath coupling");
  app->add_option("--delta", cfg.params.delta, "Qubit-qubit coupling");
  app->add_option("-N,--N", cfg.params.n_bath, "Spins per bath");
  app->add_option("--state", raw.state, "singlet | psi_plus | phi_plus | phi_minus | product:<s1><s2> | explicit");
  app->add_option("--rho", raw.rho, "Explicit initial matrix, row-major (16 reals or 32 re/im numbers)");
  app->add_option("--t-start", cfg.t_start, "First time");
  app->add_option("--t-end", cfg.t_end, "Last time");
  app->add_option("--t-steps", cfg.t_steps, "Number of time intervals");
  app->add_option("-o,--output", cfg.output_path, "Output file (standard output if omitted)");
  app->add_option("--format", raw.format, "csv | json");
  app->add_option("--delta-start", cfg.delta_start, "asymptote: first delta");
  app->add_option("--delta-end", cfg.delta_end, "asymptote: last delta");
  app->add_option("--delta-steps", cfg.delta_steps, "asymptote: number of delta intervals");
  app->add_option("--moment-max", cfg.moment_max, "moments: highest order");
  app->add_flag("--overlay", cfg.overlay, "master: add exact finite-N columns");
  return app;
}

}  // namespace

DensityMatrix4 InitialState::build() const {
  switch (kind) {
    case Kind::singlet:
      return bell_state(BellState::psi_minus);
    case Kind::psi_plus:
      return bell_state(BellState::psi_plus);
    case Kind::phi_plus:
      return bell_state(BellState::phi_plus);
    case Kind::phi_minus:
      return bell_state(BellState::phi_minus);
    case Kind::product:
      return DensityMatrix4::product(plus1, plus2);
    case Kind::explicit_matrix:
      return DensityMatrix4::from_matrix(matrix);
  }
  throw ConfigError("unknown initial state");
}

std::string InitialState::label() const {
  switch (kind) {
    case Kind::singlet:
      return "singlet";
    case Kind::psi_plus:
      return "psi_plus";
    case Kind::phi_plus:
      return "phi_plus";
    case Kind::phi_minus:
      return "phi_minus";
    case Kind::product:
      return std::string("product:") + (plus1 ? '+' : '-') + (plus2 ? '+' : '-');
    case Kind::explicit_matrix:
      return "explicit";
  }
  return "unknown";
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!std::isfinite(t_start) || t_start < 0.0) throw ConfigError("--t-start: must be finite and non-negative");
  if (!std::isfinite(t_end) || !(t_end > t_start)) throw ConfigError("--t-end: must be greater than --t-start");
  if (t_steps < 1) throw ConfigError("--t-steps: must be at least 1, got " + std::to_string(t_steps));
  if (initial_state.kind == InitialState::Kind::explicit_matrix) {
    try {
      (void)initial_state.build();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--rho: ") + e.what());
    }
  }

  const bool needs_alpha = command == Command::thermo || command == Command::master;
  if (needs_alpha && !(params.alpha > 0.0)) throw ConfigError("--alpha: must be positive for this command");
  if (command == Command::oracle && params.n_bath > kOracleMaxBath)
    throw ConfigError("--N: oracle supports at most " + std::to_string(kOracleMaxBath) + " spins per bath");
  if (command == Command::thermo && initial_state.kind != InitialState::Kind::singlet)
    throw ConfigError("--state: thermo only supports the singlet");
  if (command == Command::thermo && params.delta < 0.0) throw ConfigError("--delta: must be non-negative for thermo");
  if (command == Command::master && t_start != 0.0) throw ConfigError("--t-start: master runs must start at 0");
  if (overlay && command != Command::master) throw ConfigError("--overlay: only valid with the master command");
  if (command == Command::asymptote) {
    if (!std::isfinite(delta_start) || delta_start < 0.0)
      throw ConfigError("--delta-start: must be finite and non-negative");
    if (!std::isfinite(delta_end) || !(delta_end > delta_start))
      throw ConfigError("--delta-end: must be greater than --delta-start");
    if (delta_steps < 1) throw ConfigError("--delta-steps: must be at least 1");
  }
  if (command == Command::moments && (moment_max < 0 || moment_max > 30))
    throw ConfigError("--moment-max: must be in [0, 30]");
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  RawOptions raw;
  auto app = make_app(cfg, raw);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app->parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  const auto command = kCommands.find(raw.command);
  if (command == kCommands.end()) throw ConfigError("unknown command '" + raw.command + "'");
  cfg.command = command->second;

  if (raw.format == "csv") {
    cfg.format = OutputFormat::csv;
  } else if (raw.format == "json") {
    cfg.format = OutputFormat::json;
  } else {
    throw ConfigError("--format: unknown format '" + raw.format + "'");
  }

  cfg.initial_state = parse_state(raw.state);
  const bool is_explicit = cfg.initial_state.kind == InitialState::Kind::explicit_matrix;
  if (is_explicit && raw.rho.empty()) throw ConfigError("--state explicit: requires --rho");
  if (!is_explicit && !raw.rho.empty()) throw ConfigError("--rho: conflicts with --state " + raw.state);
  if (is_explicit) cfg.initial_state.matrix = parse_matrix(raw.rho);

  cfg.validate();
  return cfg;
}

std::string usage() {
  RunConfig cfg;
  RawOptions raw;
  auto app = make_app(cfg, raw);
  return app->help();
}

}  // namespace spinstar::cli
