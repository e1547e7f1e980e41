#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "spinstar/cli.hpp"
#include "spinstar/master_eq.hpp"
#include "spinstar/measures.hpp"
#include "spinstar/oracle.hpp"
#include "spinstar/parallel.hpp"
#include "spinstar/reduced_dynamics.hpp"
#include "spinstar/thermo_limit.hpp"

namespace spinstar::cli {
namespace {

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string number(double v) { return fmt::format("{:.17g}", v); }

const char* command_name(Command c) {
  switch (c) {
    case Command::finite:
      return "finite";
    case Command::oracle:
      return "oracle";
    case Command::thermo:
      return "thermo";
    case Command::asymptote:
      return "asymptote";
    case Command::master:
      return "master";
    case Command::moments:
      return "moments";
  }
  return "unknown";
}

std::vector<double> time_points(const RunConfig& c) {
  std::vector<double> t(c.t_steps + 1);
  const double h = (c.t_end - c.t_start) / c.t_steps;
  for (int k = 0; k <= c.t_steps; ++k) t[k] = c.t_start + h * k;
  return t;
}

// Upper-triangle entries, real and imaginary parts.
void matrix_columns(const std::string& prefix, std::vector<std::string>& cols) {
  for (int i = 0; i < 4; ++i)
    for (int k = i; k < 4; ++k) {
      cols.push_back(fmt::format("{}rho{}{}_re", prefix, i + 1, k + 1));
      cols.push_back(fmt::format("{}rho{}{}_im", prefix, i + 1, k + 1));
    }
}

void matrix_values(const DensityMatrix4& rho, std::vector<double>& row) {
  for (int i = 0; i < 4; ++i)
    for (int k = i; k < 4; ++k) {
      row.push_back(rho(i, k).real());
      row.push_back(rho(i, k).imag());
    }
}

// Rows are filled in parallel into fixed slots, so output order never depends on scheduling.
std::vector<std::vector<double>> sweep(const std::vector<double>& xs,
                                       const std::function<std::vector<double>(double)>& fn) {
  std::vector<std::vector<double>> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { rows[i] = fn(xs[i]); });
  return rows;
}

void base_metadata(const RunConfig& c, Table& t) {
  t.metadata = {{"version", kVersion},
                {"command", command_name(c.command)},
                {"alpha", number(c.params.alpha)},
                {"delta", number(c.params.delta)},
                {"N", std::to_string(c.params.n_bath)},
                {"state", c.initial_state.label()},
                {"time_unit", "1/alpha"}};
}

void time_metadata(const RunConfig& c, Table& t) {
  t.metadata.emplace_back("t_start", number(c.t_start));
  t.metadata.emplace_back("t_end", number(c.t_end));
  t.metadata.emplace_back("t_steps", std::to_string(c.t_steps));
}

Table finite_table(const RunConfig& c, bool use_oracle) {
  Table table;
  base_metadata(c, table);
  time_metadata(c, table);
  table.columns = {"t"};
  matrix_columns("", table.columns);
  table.columns.insert(table.columns.end(), {"concurrence", "purity"});

  const DensityMatrix4 rho0 = c.initial_state.build();
  std::function<DensityMatrix4(double)> step;
  if (use_oracle) {
    auto oracle = std::make_shared<Oracle>(c.params);
    step = [oracle, rho0](double t) { return oracle->evolve(rho0, t); };
  } else {
    step = [&](double t) { return evolve(rho0, c.params, t); };
  }
  table.rows = sweep(time_points(c), [&](double t) {
    const DensityMatrix4 rho = step(t);
    std::vector<double> row{t};
    matrix_values(rho, row);
    row.push_back(concurrence(rho));
    row.push_back(purity(rho));
    return row;
  });
  return table;
}

// The limit and master equations are written for alpha = 1; rescale delta and t.
Table thermo_table(const RunConfig& c) {
  Table table;
  base_metadata(c, table);
  time_metadata(c, table);
  table.columns = {"t", "lambda_plus", "lambda_minus", "upsilon_plus", "upsilon_minus", "xi_plus", "xi_minus", "psi"};
  matrix_columns("", table.columns);
  table.columns.insert(table.columns.end(), {"concurrence", "purity"});

  const double alpha = c.params.alpha;
  const double delta = c.params.delta / alpha;
  // Each psi evaluation already runs in parallel, so the time loop stays sequential.
  for (double t : time_points(c)) {
    const LimitFunctions f = limit_functions(delta, alpha * t);
    const DensityMatrix4 rho = rho_limit_singlet(f);
    std::vector<double> row{t, f.lambda_plus, f.lambda_minus, f.upsilon_plus, f.upsilon_minus,
                            f.xi_plus, f.xi_minus, f.psi};
    matrix_values(rho, row);
    row.push_back(concurrence_x_state(rho));
    row.push_back(purity(rho));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table asymptote_table(const RunConfig& c) {
  Table table;
  base_metadata(c, table);
  table.metadata.emplace_back("delta_start", number(c.delta_start));
  table.metadata.emplace_back("delta_end", number(c.delta_end));
  table.metadata.emplace_back("delta_steps", std::to_string(c.delta_steps));
  table.columns = {"delta", "pi", "c_infinity"};
  std::vector<double> deltas(c.delta_steps + 1);
  for (int k = 0; k <= c.delta_steps; ++k)
    deltas[k] = c.delta_start + (c.delta_end - c.delta_start) * k / c.delta_steps;
  table.rows = sweep(deltas, [](double d) {
    const AsymptoticState s = asymptotics(d);
    return std::vector<double>{d, s.pi_value, s.c_infinity};
  });
  return table;
}

Table master_table(const RunConfig& c) {
  Table table;
  base_metadata(c, table);
  time_metadata(c, table);

  const double alpha = c.params.alpha;
  const double delta = c.params.delta / alpha;
  const DensityMatrix4 rho0 = c.initial_state.build();

  // Internal Volterra steps of at most 0.005 land exactly on every output time.
  const double h_out = alpha * c.t_end / c.t_steps;
  const int substeps = static_cast<int>(std::ceil(h_out / 0.005 - 1e-9));
  const std::vector<MasterState> path = volterra_solve(rho0, delta, uniform_grid(alpha * c.t_end, c.t_steps * substeps));
  table.metadata.emplace_back("volterra_step", number(h_out / substeps));

  const std::vector<std::pair<int, int>> entries{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 3}, {1, 2}};
  auto add_columns = [&](const std::string& prefix, bool with_12) {
    for (auto [i, k] : entries) {
      if (i == 0 && k == 1 && !with_12) continue;
      table.columns.push_back(fmt::format("{}rho{}{}_re", prefix, i + 1, k + 1));
      if (i != k) table.columns.push_back(fmt::format("{}rho{}{}_im", prefix, i + 1, k + 1));
    }
  };
  auto add_values = [&](const DensityMatrix4& rho, bool with_12, std::vector<double>& row) {
    for (auto [i, k] : entries) {
      if (i == 0 && k == 1 && !with_12) continue;
      row.push_back(rho(i, k).real());
      if (i != k) row.push_back(rho(i, k).imag());
    }
  };

  const bool local_12 = delta == 0.0;
  table.columns = {"t"};
  add_columns("volterra_", true);
  add_columns("timelocal_", local_12);
  if (c.overlay) add_columns("exact_", true);

  std::vector<double> times(c.t_steps + 1);
  for (int k = 0; k <= c.t_steps; ++k) times[k] = c.t_end * k / c.t_steps;
  table.rows = sweep(times, [&](double t) {
    const std::size_t k = static_cast<std::size_t>(std::llround(t / c.t_end * c.t_steps)) * substeps;
    std::vector<double> row{t};
    add_values(to_schrodinger(path[k], delta), true, row);
    const DensityMatrix4 local = local_12 ? timelocal_delta0(rho0, alpha * t) : timelocal_solution(rho0, delta, alpha * t);
    add_values(local, local_12, row);
    if (c.overlay) add_values(evolve(rho0, c.params, t), true, row);
    return row;
  });
  return table;
}

Table moments_table(const RunConfig& c) {
  Table table;
  table.metadata = {{"version", kVersion}, {"command", "moments"}, {"moment_max", std::to_string(c.moment_max)}};
  table.columns = {"n", "kind", "theorem", "quadrature", "difference"};
  std::vector<double> orders;
  for (int n = 0; n <= c.moment_max; ++n) orders.push_back(n);
  for (MomentKind kind : {MomentKind::mu, MomentKind::eta}) {
    const double kind_code = kind == MomentKind::mu ? 0.0 : 1.0;
    auto rows = sweep(orders, [&](double n) {
      const double a = moment(kind, static_cast<int>(n));
      const double b = moment_quadrature(kind, static_cast<int>(n));
      return std::vector<double>{n, kind_code, a, b, std::abs(a - b)};
    });
    table.rows.insert(table.rows.end(), rows.begin(), rows.end());
  }
  table.metadata.emplace_back("kind_codes", "0=mu 1=eta");
  return table;
}

Table build_table(const RunConfig& c) {
  switch (c.command) {
    case Command::finite:
      return finite_table(c, false);
    case Command::oracle:
      return finite_table(c, true);
    case Command::thermo:
      return thermo_table(c);
    case Command::asymptote:
      return asymptote_table(c);
    case Command::master:
      return master_table(c);
    case Command::moments:
      return moments_table(c);
  }
  throw ConfigError("unknown command");
}

void write_csv(const Table& t, std::ostream& out) {
  for (const auto& [key, value] : t.metadata) out << "# " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << number(row[i]);
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json doc;
  for (const auto& [key, value] : t.metadata) doc["metadata"][key] = value;
  doc["columns"] = t.columns;
  doc["rows"] = t.rows;
  out << doc.dump(1) << '\n';
}

}  // namespace

void write_table(const RunConfig& config, std::ostream& out) {
  config.validate();
  const Table table = build_table(config);
  if (config.format == OutputFormat::csv)
    write_csv(table, out);
  else
    write_json(table, out);
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    if (config.output_path.empty()) {
      write_table(config, std::cout);
      std::cout.flush();
      return std::cout ? 0 : 1;
    }
    std::ofstream file(config.output_path);
    if (!file) {
      err << "error: cannot open '" << config.output_path << "' for writing\n";
      return 1;
    }
    write_table(config, file);
    file.close();
    if (!file) {
      err << "error: failed writing '" << config.output_path << "'\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace spinstar::cli
