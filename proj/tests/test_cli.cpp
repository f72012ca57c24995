#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qdgate/config.hpp"
#include "qdgate/csv.hpp"

namespace fs = std::filesystem;
using namespace qdgate;

namespace {

const std::string kBin = QDGATE_BIN;
const std::string kConfigs = QDGATE_CONFIG_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const fs::path out_file =
      fs::temp_directory_path() / "qdgate_cli_test_output.txt";
  const std::string cmd = kBin + " " + args + " > " + out_file.string() +
                          " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("qdgate_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

int count_data_rows(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  int rows = 0;
  bool seen_header = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    rows += 1;
  }
  return rows;
}

}  // namespace

TEST_CASE("config: strict parsing") {
  CHECK_THROWS_AS((void)parse_config("{\"bogus\": 1}"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("{\"system\": {\"v_f\": 1}}"),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_config("not json"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("{\"integrator\": {\"tol\": 1e-3}}"),
                  ConfigError);
  CHECK_NOTHROW((void)parse_config("{}"));

  const RunConfig c =
      parse_config("{\"system\": {\"v_f_mev\": -0.85}}",
                   {"pulse.delta_mev=7.5", "system.temperature_k=5"});
  CHECK(c.system.v_f_mev == -0.85);
  CHECK(c.pulse.delta_mev == 7.5);
  CHECK(c.system.temperature_k == 5.0);
}

TEST_CASE("config: axis expansion") {
  const RunConfig c = parse_config(R"({
    "sweep": {"driver": "lz", "axes": [
      {"path": "pulse.tau_ps", "min": 1.0, "max": 3.0, "count": 5},
      {"path": "pulse.omega0_mev", "values": [0.1, 0.2]}
    ]}
  })");
  REQUIRE(c.sweep.axes.size() == 2);
  CHECK(c.sweep.axes[0].values ==
        std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
  CHECK(c.sweep.axes[1].values == std::vector<double>{0.1, 0.2});
  CHECK_THROWS_AS(
      (void)parse_config(
          R"({"sweep": {"axes": [{"path": "x", "values": []}]}})"),
      ConfigError);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.0, 1.0, -3.25, 0.1, 1e-17, 123456.789, 6.2729241}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e300) == "1e+300");
}

TEST_CASE("cli: spectra command output") {
  const fs::path dir = temp_dir("spectra");
  const RunResult r =
      run("spectra --config " + kConfigs + "/spectra.json --out " +
          dir.string() + " --format csv,svg --set spectra.count=301");
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "spectra.csv");
  CHECK(csv.find("omega_ps_inv,J_plus_def,J_minus_def,J_plus_piezo,"
                 "J_minus_piezo") != std::string::npos);
  CHECK(count_data_rows(csv) == 301);
  // grid endpoints included exactly as configured
  CHECK(csv.find("\n0,0,0,0,0\n") != std::string::npos);
  CHECK(csv.find("\n15,") != std::string::npos);
  CHECK(fs::exists(dir / "spectra.svg"));

  // determinism: identical config -> byte-identical CSV
  const fs::path dir2 = temp_dir("spectra2");
  run("spectra --config " + kConfigs + "/spectra.json --out " +
      dir2.string() + " --format csv,svg --set spectra.count=301");
  CHECK(slurp(dir2 / "spectra.csv") == csv);
}

TEST_CASE("cli: config errors exit with code 2") {
  const RunResult missing = run("gate --config /nonexistent.json");
  CHECK(missing.exit_code == 2);

  const fs::path dir = temp_dir("badcfg");
  write_file(dir / "bad.json", "{\"nope\": 1}");
  const RunResult bad = run("gate --config " + (dir / "bad.json").string());
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("unknown key") != std::string::npos);

  const RunResult usage = run("gate");
  CHECK(usage.exit_code == 2);
}

TEST_CASE("cli: calibrate emits one row per point, byte-identical on rerun") {
  const fs::path dir = temp_dir("cal_a");
  const std::string args =
      " --config " + kConfigs + "/gaas_adiabatic.json"
      " --set pulse.delta_mev=3.0 --set dissipators.phonon=false";
  const RunResult r = run("calibrate" + args + " --out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "calibration.csv");
  CHECK(csv.find("omega0_mev,delta_mev,v_f_mev,tau_ps,"
                 "conditional_phase_residual,error") != std::string::npos);
  CHECK(count_data_rows(csv) == 1);

  const fs::path dir2 = temp_dir("cal_b");
  run("calibrate" + args + " --out " + dir2.string());
  CHECK(slurp(dir2 / "calibration.csv") == csv);
}

TEST_CASE("cli: calibration failure for V_F = 0 exits with code 3") {
  const fs::path dir = temp_dir("calfail");
  const RunResult r = run("calibrate --config " + kConfigs +
                          "/gaas_adiabatic.json --out " + dir.string() +
                          " --set system.v_f_mev=0.0");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("alibration fail") != std::string::npos);
}

TEST_CASE("cli: empty sweep axes exit with code 2, no files written") {
  const fs::path dir = temp_dir("emptysweep");
  const RunResult r = run("sweep --config " + kConfigs +
                          "/gaas_adiabatic.json --out " + dir.string());
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(dir / "sweep.csv"));
}

TEST_CASE("cli: lz command reproduces the flat zero-drive trace") {
  const fs::path dir = temp_dir("lzflat");
  const RunResult r = run("lz --config " + kConfigs + "/lz_reference.json --out " +
                          dir.string() +
                          " --set pulse.omega0_mev=0.0 --set lz.tau_ps=[2.0]");
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "lz_0.csv");
  std::stringstream ss(csv);
  std::string line;
  bool seen_header = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      CHECK(line == "t_ps,pop_minus");
      continue;
    }
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(comma + 1)) == doctest::Approx(1.0));
  }
}

TEST_CASE("cli: gate command writes trajectory and summary") {
  const fs::path dir = temp_dir("gate");
  const RunResult r = run("gate --config " + kConfigs +
                          "/gaas_dynamic.json --out " + dir.string() +
                          " --set dissipators.phonon=false"
                          " --set system.gamma0_ps_inv=0.0"
                          " --set pulse.tail_ps=0.0");
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "trajectory.csv");
  CHECK(csv.find("t_ps,purity,pop_00,pop_01,pop_0X,pop_10,pop_X0,pop_11,"
                 "pop_1X,pop_X1,pop_XX,pop_zeta_minus") != std::string::npos);
  const std::string summary = slurp(dir / "gate_summary.json");
  const auto parsed = nlohmann::json::parse(summary);
  CHECK(parsed.at("purity").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(parsed.at("kind").get<std::string>() == "dynamic");
  CHECK(parsed.at("gate_end_ps").get<double>() > 0.0);

  // coherent-only run keeps purity within 1e-6 of one on every row
  std::stringstream ss(csv);
  std::string line;
  bool seen_header = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) { seen_header = true; continue; }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("cli: sweep over tau with the lz driver") {
  const fs::path dir = temp_dir("lzsweep");
  const RunResult r =
      run("sweep --config " + kConfigs + "/lz_reference.json --out " + dir.string() +
          " --jobs 2"
          " --set sweep.driver=lz"
          " --set \"sweep.axes=[{\\\"path\\\":\\\"pulse.tau_ps\\\","
          "\\\"values\\\":[1.8,20.0]}]\""
          " --set \"sweep.observables=[\\\"leakage\\\"]\"");
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.find("pulse.tau_ps,leakage,error") != std::string::npos);
  CHECK(count_data_rows(csv) == 2);

  // serial run must produce byte-identical output
  const fs::path dir2 = temp_dir("lzsweep_serial");
  run("sweep --config " + kConfigs + "/lz_reference.json --out " + dir2.string() +
      " --jobs 1"
      " --set sweep.driver=lz"
      " --set \"sweep.axes=[{\\\"path\\\":\\\"pulse.tau_ps\\\","
      "\\\"values\\\":[1.8,20.0]}]\""
      " --set \"sweep.observables=[\\\"leakage\\\"]\"");
  CHECK(slurp(dir2 / "sweep.csv") == csv);
}

TEST_CASE("csv comment block carries the resolved config and version") {
  const fs::path dir = temp_dir("version");
  run("spectra --config " + kConfigs + "/spectra.json --out " + dir.string() +
      " --set spectra.count=11");
  const std::string csv = slurp(dir / "spectra.csv");
  CHECK(csv.rfind("# qdgate", 0) == 0);
  CHECK(csv.find("# config {") != std::string::npos);
  CHECK(csv.find("\"count\":11") != std::string::npos);
}
