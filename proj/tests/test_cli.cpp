#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "killingbeck/cli.hpp"

using Catch::Approx;

namespace {

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<const char*> args) {
  args.insert(args.begin(), "killingbeck");
  std::ostringstream out, err;
  const int rc = kb::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return {rc, out.str(), err.str()};
}

struct Csv {
  std::vector<std::string> manifest;  // '#' lines, stripped of "# "
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.manifest.push_back(line.substr(2));
      continue;
    }
    if (csv.header.empty()) {
      csv.header = line;
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (line.back() == ',') fields.emplace_back();
    csv.rows.push_back(std::move(fields));
  }
  return csv;
}

double manifest_value(const Csv& csv, const std::string& key) {
  const std::string prefix = key + " = ";
  for (const std::string& m : csv.manifest)
    if (m.rfind(prefix, 0) == 0) return std::stod(m.substr(prefix.size()));
  FAIL("manifest key not found: " << key);
  return 0.0;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("version and usage errors") {
  CHECK(run_cli({"--version"}).rc == 0);
  CHECK(run_cli({"--version"}).out.find("0.1.0") != std::string::npos);

  CHECK(run_cli({}).rc == 2);                       // a subcommand is required
  CHECK(run_cli({"frobnicate"}).rc == 2);           // unknown subcommand
  CHECK(run_cli({"solve", "--nope", "1"}).rc == 2); // unknown flag
  CHECK(run_cli({"solve", "--mode", "both"}).rc == 2);
  CHECK(run_cli({"solve", "--window", "abc"}).rc == 2);
  CHECK(run_cli({"solve", "--window", "6:5"}).rc == 2);
  CHECK(run_cli({"sweep", "--param", "q", "--from", "0", "--to", "1", "--steps", "3"}).rc == 2);
  CHECK(run_cli({"sweep", "--param", "B", "--from", "2", "--to", "1", "--steps", "3"}).rc == 2);
  CHECK(run_cli({"help"}).rc == 2);
  CHECK(run_cli({"--help"}).rc == 0);
}

TEST_CASE("solve emits one level with its manifest") {
  const CliResult res = run_cli(
      {"solve", "--a", "0.001", "--b", "0.005", "--B", "1.0", "--variant", "literal"});
  REQUIRE(res.rc == 0);
  const Csv csv = parse_csv(res.out);
  CHECK(csv.header == "n,m,mode,variant,E,residual,bracket_lo,bracket_hi");
  REQUIRE(csv.rows.size() == 1);
  CHECK(std::stod(csv.rows[0][4]) == Approx(5.273485251).margin(1e-8));
  CHECK(csv.rows[0][2] == "spin");
  CHECK(csv.rows[0][3] == "literal");
  CHECK(manifest_value(csv, "a") == 0.001);
  CHECK(manifest_value(csv, "window_hi") == 6.5);
  // duration is the last manifest line, keeping the body above reproducible
  CHECK(csv.manifest.back().rfind("duration_ms = ", 0) == 0);
}

TEST_CASE("solve reports an empty window with exit code 3") {
  const CliResult res = run_cli({"solve", "--a", "0.001", "--b", "0.005", "--variant",
                                 "literal", "--window", "6.2:6.4"});
  CHECK(res.rc == 3);
  CHECK(parse_csv(res.out).rows.empty());
  CHECK(res.err.find("no roots") != std::string::npos);
}

TEST_CASE("numeric domain failures exit with code 4") {
  // m = 0 with phi = 1 voids the literal square-root argument everywhere
  const CliResult res =
      run_cli({"solve", "--m", "0", "--phi", "1", "--variant", "literal"});
  CHECK(res.rc == 4);
  CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("reference tables reproduce within 1e-4") {
  for (const char* cmd : {"table1", "table2"}) {
    const CliResult res = run_cli({cmd, "--variant", "literal"});
    REQUIRE(res.rc == 0);
    const Csv csv = parse_csv(res.out);
    CHECK(csv.header == "n,b,a,B,E_computed,E_paper,delta,note");
    REQUIRE(csv.rows.size() == 36);
    for (const auto& row : csv.rows) {
      CHECK(std::abs(std::stod(row[6])) <= 1e-4);
      CHECK(row[7].empty());
    }
  }
}

TEST_CASE("sweep walks the grid in order") {
  const CliResult res =
      run_cli({"sweep", "--param", "B", "--from", "1.0", "--to", "1.5", "--steps", "3",
               "--a", "0.001", "--b", "0.005", "--variant", "literal"});
  REQUIRE(res.rc == 0);
  const Csv csv = parse_csv(res.out);
  CHECK(csv.header == "sweep_param,value,n,E");
  REQUIRE(csv.rows.size() == 3);
  CHECK(std::stod(csv.rows[0][1]) == 1.0);
  CHECK(std::stod(csv.rows[1][1]) == 1.25);
  CHECK(std::stod(csv.rows[2][1]) == 1.5);
  CHECK(std::stod(csv.rows[0][3]) < std::stod(csv.rows[1][3]));
  CHECK(std::stod(csv.rows[1][3]) < std::stod(csv.rows[2][3]));
}

TEST_CASE("sweep marks out-of-domain points and keeps going") {
  const CliResult res =
      run_cli({"sweep", "--param", "a", "--from", "-0.5", "--to", "0.005", "--steps", "2",
               "--b", "0", "--variant", "literal"});
  REQUIRE(res.rc == 0);
  const Csv csv = parse_csv(res.out);
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.rows[0][3] == "nan");
  CHECK(std::stod(csv.rows[1][3]) == Approx(5.277).margin(0.05));
}

TEST_CASE("wavefunction grid is normalized") {
  const CliResult res = run_cli({"wavefunction", "--a", "0", "--b", "0", "--B", "1",
                                 "--phi", "0", "--n", "0", "--variant", "derivation",
                                 "--window", "5.1:5.2", "--points", "101", "--rmax", "6"});
  REQUIRE(res.rc == 0);
  const Csv csv = parse_csv(res.out);
  CHECK(csv.header == "r,chi,value,value_normalized");
  REQUIRE(csv.rows.size() == 101);
  CHECK(manifest_value(csv, "E") == Approx(std::sqrt(26.5)).margin(1e-9));
  CHECK(std::stod(csv.rows[0][2]) == 0.0);

  double trapz = 0.0;
  for (std::size_t i = 0; i + 1 < csv.rows.size(); ++i) {
    const double dr = std::stod(csv.rows[i + 1][0]) - std::stod(csv.rows[i][0]);
    const double v0 = std::stod(csv.rows[i][3]);
    const double v1 = std::stod(csv.rows[i + 1][3]);
    trapz += 0.5 * dr * (v0 * v0 + v1 * v1);
  }
  CHECK(trapz == Approx(1.0).margin(1e-12));
}

TEST_CASE("config file provides defaults, flags win") {
  const std::filesystem::path cfg = temp_file("kb_cli_test.ini");
  {
    std::ofstream f(cfg);
    f << "a = 0.001\nb = 0.005\nvariant = literal\n";
  }
  const std::string cfg_str = cfg.string();

  const CliResult base = run_cli({"solve", "--config", cfg_str.c_str()});
  REQUIRE(base.rc == 0);
  CHECK(std::stod(parse_csv(base.out).rows.at(0).at(4)) == Approx(5.273485251).margin(1e-8));

  const CliResult over = run_cli({"solve", "--config", cfg_str.c_str(), "--b", "0.007"});
  REQUIRE(over.rc == 0);
  CHECK(std::stod(parse_csv(over.out).rows.at(0).at(4)) == Approx(5.272596822).margin(1e-8));

  {
    std::ofstream f(cfg);
    f << "a = 0.001\nbogus = 1\n";
  }
  CHECK(run_cli({"solve", "--config", cfg_str.c_str()}).rc == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("output file sink") {
  const std::filesystem::path out = temp_file("kb_cli_out.csv");
  const std::string out_str = out.string();
  const CliResult res = run_cli({"solve", "--a", "0.001", "--b", "0.005", "--variant",
                                 "literal", "--out", out_str.c_str()});
  REQUIRE(res.rc == 0);
  CHECK(res.out.empty());
  std::ifstream f(out);
  REQUIRE(f.good());
  std::string first;
  std::getline(f, first);
  CHECK(first == "# command = solve");
  f.close();
  std::filesystem::remove(out);
}

TEST_CASE("oracle command") {
  const CliResult res = run_cli({"oracle", "--a", "0", "--b", "0", "--B", "1", "--phi",
                                 "0", "--variant", "derivation", "--window", "5.1:5.2",
                                 "--grid-steps", "2000"});
  REQUIRE(res.rc == 0);
  const Csv csv = parse_csv(res.out);
  CHECK(csv.header == "E,match_residual,richardson_error,nodes,under_resolved");
  REQUIRE(csv.rows.size() == 1);
  CHECK(std::stod(csv.rows[0][0]) == Approx(std::sqrt(26.5)).margin(1e-7));
  CHECK(csv.rows[0][3] == "0");
  CHECK(csv.rows[0][4] == "0");
}

TEST_CASE("verification report is deterministic and green") {
  const CliResult first = run_cli({"verify"});
  REQUIRE(first.rc == 0);
  CHECK(first.out.find("all checks passed") != std::string::npos);
  CHECK(first.out.find("[FAIL]") == std::string::npos);

  const CliResult second = run_cli({"verify"});
  CHECK(second.out == first.out);
}
