#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hybridsim/config.hpp"
#include "hybridsim/constants.hpp"
#include "hybridsim/scenarios.hpp"

using namespace hybridsim;
namespace cs = hybridsim::constants;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& body) {
  static int counter = 0;
  const std::string path =
      (fs::temp_directory_path() / ("hybridsim_cfg_" + std::to_string(counter++) + ".cfg"))
          .string();
  std::ofstream f(path);
  f << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("empty config gives the reference defaults") {
  ScenarioConfig c = load_config("");
  CHECK(c.circuit.C_r == 3e-15);
  CHECK(c.circuit.L_r == 3e-13);
  CHECK(c.circuit.C_m == 1e-16);
  CHECK(c.circuit.C_t() == doctest::Approx(2e-16));
  CHECK(c.circuit.d_i == 20e-6);
  CHECK(c.circuit.E_c == doctest::Approx(cs::two_pi * 100e9));
  CHECK(c.ion.photon_momentum == 1e8);
  CHECK(c.t1 == 5e-9);
  CHECK(c.n1 == 10);
  CHECK(c.noise.coupling_prefactor ==
        doctest::Approx(c.circuit.E_c * c.circuit.C_g / (2.0 * cs::e_charge)));
  CHECK_FALSE(c.seed_list.empty());
}

TEST_CASE("overrides, comments and units") {
  const std::string path = write_temp(
      "# comment line\n"
      "C_m = 2e-16 F\n"
      "d_i = 40 um   # trailing comment\n"
      "E_c = 50 GHz\n"
      "tau1 = 2 ns\n"
      "temperature = 100 mK\n"
      "ion_mass = 9.0121831 u\n"
      "n1 = 4\n");
  ScenarioConfig c = load_config(path);
  CHECK(c.circuit.C_m == 2e-16);
  CHECK(c.circuit.d_i == doctest::Approx(40e-6));
  CHECK(c.circuit.E_c == doctest::Approx(cs::two_pi * 50e9));
  CHECK(c.tau1 == doctest::Approx(2e-9));
  CHECK(c.temperature == doctest::Approx(0.1));
  CHECK(c.ion.mass == doctest::Approx(cs::mass_be9));
  CHECK(c.n1 == 4);
  std::remove(path.c_str());
}

TEST_CASE("strict parsing") {
  CHECK_THROWS_AS(load_config(write_temp("C_m = -1 F\n")), std::invalid_argument);
  CHECK_THROWS_AS(load_config(write_temp("C_mm = 1e-16 F\n")), std::invalid_argument);
  CHECK_THROWS_AS(load_config(write_temp("C_m = 1e-16 Hz\n")), std::invalid_argument);
  CHECK_THROWS_AS(load_config(write_temp("C_m 1e-16\n")), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), std::invalid_argument);

  // the reported message carries the line number
  const std::string path = write_temp("C_m = 1e-16 F\nbogus_key = 1\n");
  try {
    load_config(path);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("seed list parsing") {
  CHECK(parse_seed_list("1,2,3") == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(parse_seed_list("5..8") == std::vector<std::uint64_t>{5, 6, 7, 8});
  CHECK_THROWS_AS(parse_seed_list("9..3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_seed_list(""), std::invalid_argument);
}

TEST_CASE("scenario names round trip") {
  for (const char* name :
       {"gate_fidelity", "gate_time", "noise_echo", "dissipation", "switch", "balance",
        "report_all"}) {
    CHECK(scenario_name(parse_scenario(name)) == name);
  }
  CHECK_THROWS_AS(parse_scenario("bogus"), std::invalid_argument);
}

TEST_CASE("config hash tracks overrides") {
  ScenarioConfig a = load_config("");
  ScenarioConfig b = load_config("");
  CHECK(config_hash(a) == config_hash(b));
  apply_override(b, "C_m", "2e-16 F");
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("balance scenario writes deterministic outputs") {
  ScenarioConfig c = load_config("");
  c.scenario = Scenario::balance;
  const std::string dir = (fs::temp_directory_path() / "hybridsim_balance_out").string();
  fs::remove_all(dir);
  c.output_dir = dir;

  RunManifest m1 = run_scenario(c);
  CHECK(m1.all_pass());
  const std::string csv1 = slurp(dir + "/balance.csv");
  const std::string json1 = slurp(dir + "/balance.json");
  CHECK(csv1.find("residual_rad_s") != std::string::npos);

  RunManifest m2 = run_scenario(c);
  CHECK(slurp(dir + "/balance.csv") == csv1);
  CHECK(slurp(dir + "/balance.json") == json1);
  CHECK(m1.config_hash == m2.config_hash);
  fs::remove_all(dir);
}

TEST_CASE("switch scenario claims pass at the default parameters") {
  ScenarioConfig c = load_config("");
  c.scenario = Scenario::switch_reduction;
  const std::string dir = (fs::temp_directory_path() / "hybridsim_switch_out").string();
  fs::remove_all(dir);
  c.output_dir = dir;
  RunManifest m = run_scenario(c);
  CHECK(m.all_pass());
  CHECK_FALSE(m.claims.empty());
  fs::remove_all(dir);
}
