#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "spinstar/cli.hpp"

using namespace spinstar;
using namespace spinstar::cli;

namespace {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (csv.header.empty())
      csv.header = split(line);
    else
      csv.cells.push_back(split(line));
  }
  return csv;
}

std::size_t column(const Csv& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

std::string table_for(const std::vector<std::string>& args) {
  std::ostringstream out;
  write_table(parse_config(args), out);
  return out.str();
}

std::string error_for(const std::vector<std::string>& args) {
  try {
    parse_config(args);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_config({});
  CHECK(c.command == Command::finite);
  CHECK(c.params.alpha == 1.0);
  CHECK(c.params.delta == 1.0);
  CHECK(c.params.n_bath == 10);
  CHECK(c.initial_state.kind == InitialState::Kind::singlet);
  CHECK(c.t_start == 0.0);
  CHECK(c.t_end == 10.0);
  CHECK(c.t_steps == 200);
  CHECK(c.format == OutputFormat::csv);
  CHECK(c.output_path.empty());
}

TEST_CASE("flags") {
  const RunConfig c = parse_config({"--delta", "4", "--N", "10", "--state", "singlet"});
  CHECK(c.params.delta == 4.0);
  CHECK(c.params.n_bath == 10);
  const RunConfig p = parse_config({"oracle", "-N", "3", "--state", "product:+-", "--format", "json"});
  CHECK(p.command == Command::oracle);
  CHECK(p.initial_state.kind == InitialState::Kind::product);
  CHECK(p.initial_state.plus1);
  CHECK_FALSE(p.initial_state.plus2);
  CHECK(p.format == OutputFormat::json);
  const RunConfig e = parse_config({"--state", "explicit", "--rho", "0.25 0 0 0 0 0.25 0 0 0 0 0.25 0 0 0 0 0.25"});
  CHECK(e.initial_state.build().matrix().isApprox(Matrix4c::Identity() / 4.0));
}

TEST_CASE("errors name the offending token") {
  CHECK(error_for({"--t-steps", "0"}).find("--t-steps") != std::string::npos);
  CHECK(error_for({"--delta", "abc"}).find("abc") != std::string::npos);
  CHECK(error_for({"--bogus", "1"}).find("--bogus") != std::string::npos);
  CHECK(error_for({"simulate"}).find("simulate") != std::string::npos);
  CHECK(error_for({"--state", "tripLet"}).find("tripLet") != std::string::npos);
  CHECK(error_for({"--format", "xml"}).find("xml") != std::string::npos);
  CHECK(error_for({"--rho", "1 0 0 0"}).find("--rho") != std::string::npos);
  CHECK(error_for({"--state", "explicit", "--rho", "1 0 0 x"}).find("x") != std::string::npos);
  CHECK(error_for({"--overlay"}).find("--overlay") != std::string::npos);
  CHECK(error_for({"--t-start", "3", "--t-end", "2"}).find("--t-end") != std::string::npos);
  CHECK(error_for({"oracle", "--N", "9"}).find("--N") != std::string::npos);
  CHECK(error_for({"thermo", "--state", "phi_plus"}).find("--state") != std::string::npos);
}

TEST_CASE("config file") {
  const auto path = std::filesystem::temp_directory_path() / "spinstar_test_config.ini";
  {
    std::ofstream f(path);
    f << "delta = 4\nN = 6\nstate = psi_plus\nt-end = 2\nt-steps = 8\n";
  }
  const RunConfig c = parse_config({"--config", path.string()});
  CHECK(c.params.delta == 4.0);
  CHECK(c.params.n_bath == 6);
  CHECK(c.initial_state.kind == InitialState::Kind::psi_plus);
  CHECK(c.t_end == 2.0);
  CHECK(c.t_steps == 8);
  {
    std::ofstream f(path);
    f << "delta = 4\ncolour = blue\n";
  }
  CHECK(error_for({"--config", path.string()}).find("colour") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("finite singlet run shows sudden death") {
  const Csv csv = parse_csv(table_for({"finite", "--N", "10", "--t-end", "25", "--t-steps", "500"}));
  REQUIRE(csv.cells.size() == 501);
  const std::size_t c = column(csv, "concurrence");
  CHECK(std::stod(csv.cells.front()[c]) == doctest::Approx(1.0));
  bool hit_zero = false;
  for (const auto& row : csv.cells) hit_zero = hit_zero || std::stod(row[c]) == 0.0;
  CHECK(hit_zero);
}

TEST_CASE("numbers round-trip and output is reproducible") {
  const std::vector<std::string> args{"finite", "--N", "7", "--delta", "0.3", "--t-end", "3", "--t-steps", "30"};
  const std::string a = table_for(args);
  CHECK(a == table_for(args));
  const Csv csv = parse_csv(a);
  for (const auto& row : csv.cells)
    for (const std::string& cell : row) {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.17g", std::stod(cell));
      CHECK(cell == buffer);
    }
  CHECK(a.find("# alpha=1") != std::string::npos);
  CHECK(a.find("# version=") != std::string::npos);
}

TEST_CASE("asymptote sweep crosses zero concurrence near the critical coupling") {
  const Csv csv = parse_csv(table_for({"asymptote", "--delta-start", "0", "--delta-end", "3", "--delta-steps", "300"}));
  const std::size_t d = column(csv, "delta"), c = column(csv, "c_infinity");
  double crossing = -1.0;
  for (const auto& row : csv.cells)
    if (crossing < 0.0 && std::stod(row[c]) > 0.0) crossing = std::stod(row[d]);
  CHECK(crossing == doctest::Approx(0.343).epsilon(0.03));
}

TEST_CASE("moments table") {
  const Csv csv = parse_csv(table_for({"moments"}));
  CHECK(csv.cells.size() == 12);
  const std::size_t diff = column(csv, "difference");
  for (const auto& row : csv.cells) CHECK(std::stod(row[diff]) < 1e-8);
}

TEST_CASE("thermo and master tables") {
  const Csv thermo = parse_csv(table_for({"thermo", "--t-end", "1", "--t-steps", "4"}));
  CHECK(thermo.cells.size() == 5);
  CHECK(std::stod(thermo.cells[0][column(thermo, "psi")]) == doctest::Approx(1.0));

  const Csv master = parse_csv(table_for({"master", "--delta", "0", "--t-end", "1", "--t-steps", "10", "--overlay"}));
  CHECK(master.cells.size() == 11);
  column(master, "volterra_rho12_re");
  column(master, "timelocal_rho12_re");
  column(master, "exact_rho23_re");
  const Csv shifted = parse_csv(table_for({"master", "--delta", "1", "--t-end", "1", "--t-steps", "10"}));
  CHECK(std::find(shifted.header.begin(), shifted.header.end(), "timelocal_rho12_re") == shifted.header.end());
}

TEST_CASE("json output") {
  const auto doc = nlohmann::json::parse(table_for({"finite", "--N", "2", "--t-steps", "3", "--format", "json"}));
  CHECK(doc["rows"].size() == 4);
  CHECK(doc["columns"][0] == "t");
  CHECK(doc["metadata"]["N"] == "2");
}

TEST_CASE("run reports failures with a nonzero status") {
  std::ostringstream err;
  RunConfig c = parse_config({"--t-steps", "2"});
  c.output_path = "/nonexistent-dir/out.csv";
  CHECK(run(c, err) != 0);
  CHECK(err.str().find("/nonexistent-dir/out.csv") != std::string::npos);

  RunConfig bad = parse_config({"oracle", "--N", "2"});
  bad.params.n_bath = 12;
  std::ostringstream err2;
  CHECK(run(bad, err2) != 0);
  CHECK(err2.str().find("oracle") != std::string::npos);
}
