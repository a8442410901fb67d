#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return STAWAVE_CLI_PATH; }

struct RunResult {
  int exit_code;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return RunResult{WEXITSTATUS(status)};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "stawave_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_config(const fs::path& path, const std::string& body) {
  std::ofstream os(path);
  os << body;
}

}  // namespace

TEST_CASE("check: default run passes, writes a deterministic report") {
  const fs::path out1 = fresh_dir("check1");
  const fs::path out2 = fresh_dir("check2");
  CHECK(run_cli("check --seed 7 --out " + out1.string()).exit_code == 0);
  CHECK(run_cli("check --seed 7 --out " + out2.string()).exit_code == 0);
  const std::string r1 = slurp(out1 / "check_report.txt");
  const std::string r2 = slurp(out2 / "check_report.txt");
  CHECK(!r1.empty());
  CHECK(r1 == r2);  // byte-identical reports for identical seeds
  CHECK(slurp(out1 / "manifest.json") == slurp(out2 / "manifest.json"));
}

TEST_CASE("check: corrupted Cayley table trips the anticommutation check") {
  const fs::path out = fresh_dir("check_fault");
  const fs::path cfg = out / "fault.cfg";
  write_config(cfg, "inject_fault = cayley\n");
  const RunResult r = run_cli("check --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 1);
  const std::string report = slurp(out / "check_report.txt");
  CHECK(report.find("FAIL  anticommutation") != std::string::npos);
  CHECK(report.find("counterexample") != std::string::npos);
}

TEST_CASE("unknown config keys are rejected with the config exit code") {
  const fs::path out = fresh_dir("badkey");
  const fs::path cfg = out / "bad.cfg";
  write_config(cfg, "no_such_key = 1\n");
  CHECK(run_cli("check --config " + cfg.string() + " --out " + out.string()).exit_code == 2);
}

TEST_CASE("malformed config values are config errors, not numeric ones") {
  const fs::path out = fresh_dir("badvalue");
  const fs::path cfg = out / "bad.cfg";
  write_config(cfg, "rho1 = not_a_number\n");
  CHECK(run_cli("interfere --config " + cfg.string() + " --out " + out.string()).exit_code ==
        2);
  const fs::path cfg2 = out / "bad2.cfg";
  write_config(cfg2, "mode = sideways\n");
  CHECK(run_cli("interfere --config " + cfg2.string() + " --out " + out.string()).exit_code ==
        2);
}

TEST_CASE("show-defaults lists every command section") {
  const fs::path out = fresh_dir("defaults");
  const std::string cmd = std::string(cli_path()) + " --show-defaults > " +
                          (out / "defaults.txt").string() + " 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string text = slurp(out / "defaults.txt");
  for (const char* section : {"[check]", "[spectrum]", "[planewave]", "[interfere]",
                              "[regions]", "[gauge]"})
    CHECK(text.find(section) != std::string::npos);
}

TEST_CASE("interfere: CSV matches the closed-form cosine law rowwise") {
  const fs::path out = fresh_dir("interfere");
  const fs::path cfg = out / "i.cfg";
  write_config(cfg, "rho1 = 1.0\nrho2 = 0.25\nsamples = 64\n");
  CHECK(run_cli("interfere --config " + cfg.string() + " --out " + out.string()).exit_code ==
        0);
  std::ifstream is(out / "pattern.csv");
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "phase,intensity_exact,cross_scalar,even_even_scalar,odd_odd_scalar,intensity_as_"
        "printed");
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(std::stod(tok));
    REQUIRE(cols.size() == 6);
    const double expected = 1.25 + 2.0 * std::sqrt(0.25) * std::cos(cols[0]);
    CHECK(std::abs(cols[1] - expected) <= 1e-12);
    ++rows;
  }
  CHECK(rows == 64);
}

TEST_CASE("interfere: mixed mode separates even/even and odd/odd blocks") {
  const fs::path out = fresh_dir("interfere_mixed");
  const fs::path cfg = out / "m.cfg";
  write_config(cfg, "mode = mixed\nsamples = 16\n");
  CHECK(run_cli("interfere --config " + cfg.string() + " --out " + out.string()).exit_code ==
        0);
  std::ifstream is(out / "pattern.csv");
  std::string line;
  std::getline(is, line);  // header
  bool saw_odd = false;
  while (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(std::stod(tok));
    REQUIRE(cols.size() == 6);
    // cross = even/even + odd/odd rowwise.
    CHECK(std::abs(cols[2] - cols[3] - cols[4]) <= 1e-12);
    if (std::abs(cols[4]) > 1e-6) saw_odd = true;
  }
  CHECK(saw_odd);
}

TEST_CASE("regions: same-plane rotors give zero commutator and identical files") {
  const fs::path out = fresh_dir("regions_commuting");
  const fs::path cfg = out / "r.cfg";
  write_config(cfg, "plane_a = e21\nangle_a = 0.8\nplane_b = e21\nangle_b = 0.5\n");
  CHECK(run_cli("regions --config " + cfg.string() + " --out " + out.string()).exit_code ==
        0);
  nlohmann::json doc;
  std::ifstream(out / "regions.json") >> doc;
  CHECK(doc["commutator_norm"].get<double>() == 0.0);
  CHECK(doc["runs"].size() == 2);
  CHECK(doc["runs"][0]["order"][0] == "a");
  CHECK(doc["runs"][1]["order"][0] == "b");
  CHECK(doc["runs"][0]["pattern_file"] == "pattern_ab.csv");
  CHECK(slurp(out / "pattern_ab.csv") == slurp(out / "pattern_ba.csv"));
}

TEST_CASE("regions: different planes change the pattern") {
  const fs::path out = fresh_dir("regions_noncommuting");
  CHECK(run_cli("regions --out " + out.string()).exit_code == 0);  // e21 vs e31 defaults
  nlohmann::json doc;
  std::ifstream(out / "regions.json") >> doc;
  CHECK(doc["commutator_norm"].get<double>() > 0.1);
  CHECK(doc["max_pattern_difference"].get<double>() > 1e-6);
  CHECK(slurp(out / "pattern_ab.csv") != slurp(out / "pattern_ba.csv"));
}

TEST_CASE("spectrum: corrected column tracks the shooting eigenvalues") {
  const fs::path out = fresh_dir("spectrum");
  const fs::path cfg = out / "s.cfg";
  write_config(cfg, "Z = 1\nkappa_list = -1\nn_r_max = 1\npoints = 3000\n");
  CHECK(run_cli("spectrum --config " + cfg.string() + " --out " + out.string()).exit_code ==
        0);
  nlohmann::json doc;
  std::ifstream(out / "spectrum.json") >> doc;
  CHECK(doc["max_rel_deviation_corrected_vs_shooting"].get<double>() <= 1e-8);
  CHECK(doc["records"].size() == 2);
  for (const auto& rec : doc["records"]) {
    CHECK(rec["status"] == "ok");
    CHECK(rec.contains("E_over_mu_printed"));
    CHECK(rec.contains("E_over_mu_corrected"));
    CHECK(rec.contains("E_over_mu_shooting"));
    if (rec["n_r"].get<int>() >= 1) {
      const double printed = rec["E_over_mu_printed"].get<double>();
      const double shooting = rec["E_over_mu_shooting"].get<double>();
      CHECK(std::abs(printed - shooting) / shooting > 1e-8);
    }
  }
}

TEST_CASE("spectrum: supercritical coupling exits with the precondition code") {
  const fs::path out = fresh_dir("spectrum_bad");
  const fs::path cfg = out / "s.cfg";
  write_config(cfg, "Z = 200\n");
  CHECK(run_cli("spectrum --config " + cfg.string() + " --out " + out.string()).exit_code ==
        3);
}

TEST_CASE("gauge: constant rotor reports residuals at rounding level") {
  const fs::path out = fresh_dir("gauge_const");
  CHECK(run_cli("gauge --out " + out.string()).exit_code == 0);
  nlohmann::json doc;
  std::ifstream(out / "gauge.json") >> doc;
  CHECK(doc["omega_residual"].get<double>() <= 1e-10);
  CHECK(doc["curvature_residual"].get<double>() <= 1e-10);
  // Field files and sidecars are written and listed in the manifest.
  CHECK(fs::exists(out / "psi.field"));
  CHECK(fs::exists(out / "psi.field.json"));
  nlohmann::json manifest;
  std::ifstream(out / "manifest.json") >> manifest;
  bool has_field = false;
  for (const auto& entry : manifest["outputs"])
    if (entry["file"] == "psi.field") has_field = true;
  CHECK(has_field);
}

TEST_CASE("gauge: varying rotor shrinks residuals by >= 3.5 per halving") {
  const fs::path out = fresh_dir("gauge_vary");
  const fs::path cfg = out / "g.cfg";
  write_config(cfg, "scenario = varying\ngrid_n = 16\nwrite_fields = 0\n");
  CHECK(run_cli("gauge --config " + cfg.string() + " --out " + out.string()).exit_code == 0);
  nlohmann::json doc;
  std::ifstream(out / "gauge.json") >> doc;
  for (const auto& f : doc["omega_shrink_factors"]) CHECK(f.get<double>() >= 3.5);
  for (const auto& f : doc["curvature_shrink_factors"]) CHECK(f.get<double>() >= 3.5);
}

TEST_CASE("planewave: measured order near 2 and a wide off-shell margin") {
  const fs::path out = fresh_dir("planewave");
  CHECK(run_cli("planewave --out " + out.string()).exit_code == 0);
  nlohmann::json doc;
  std::ifstream(out / "planewave.json") >> doc;
  CHECK(doc["measured_order"].get<double>() >= 1.9);
  CHECK(doc["measured_order"].get<double>() <= 2.1);
  CHECK(doc["offshell_ratio"].get<double>() >= 100.0);
  CHECK(doc["constraint_residual"].get<double>() <= 1e-10);
}

TEST_CASE("determinism: repeated runs with one seed are byte-identical") {
  for (const char* sub_name : {"interfere", "planewave"}) {
    const std::string sub = sub_name;
    const fs::path o1 = fresh_dir(sub + "_det1");
    const fs::path o2 = fresh_dir(sub + "_det2");
    CHECK(run_cli(sub + " --seed 99 --out " + o1.string()).exit_code == 0);
    CHECK(run_cli(sub + " --seed 99 --out " + o2.string()).exit_code == 0);
    for (const auto& entry : fs::directory_iterator(o1)) {
      const std::string name = entry.path().filename().string();
      CHECK(slurp(entry.path()) == slurp(o2 / name));
    }
  }
}
