#include "hybridsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hybridsim/constants.hpp"

namespace hybridsim {

namespace {

enum class Dim {
  capacitance,
  inductance,
  length,
  temperature,
  resistance,
  frequency,  // accepts Hz family, converts to rad/s
  time_s,
  voltage,
  mass,
  wavenumber,
  count,
  dimensionless,
};

struct UnitEntry {
  Dim dim;
  double factor;
};

const std::map<std::string, UnitEntry>& unit_table() {
  static const std::map<std::string, UnitEntry> table = {
      {"aF", {Dim::capacitance, 1e-18}}, {"fF", {Dim::capacitance, 1e-15}},
      {"pF", {Dim::capacitance, 1e-12}}, {"nF", {Dim::capacitance, 1e-9}},
      {"F", {Dim::capacitance, 1.0}},
      {"pH", {Dim::inductance, 1e-12}},  {"nH", {Dim::inductance, 1e-9}},
      {"uH", {Dim::inductance, 1e-6}},   {"H", {Dim::inductance, 1.0}},
      {"nm", {Dim::length, 1e-9}},       {"um", {Dim::length, 1e-6}},
      {"mm", {Dim::length, 1e-3}},       {"m", {Dim::length, 1.0}},
      {"mK", {Dim::temperature, 1e-3}},  {"K", {Dim::temperature, 1.0}},
      {"uOhm", {Dim::resistance, 1e-6}}, {"mOhm", {Dim::resistance, 1e-3}},
      {"Ohm", {Dim::resistance, 1.0}},   {"kOhm", {Dim::resistance, 1e3}},
      {"MOhm", {Dim::resistance, 1e6}},
      // frequency family converts to angular rad/s
      {"Hz", {Dim::frequency, constants::two_pi}},
      {"kHz", {Dim::frequency, constants::two_pi * 1e3}},
      {"MHz", {Dim::frequency, constants::two_pi * 1e6}},
      {"GHz", {Dim::frequency, constants::two_pi * 1e9}},
      {"THz", {Dim::frequency, constants::two_pi * 1e12}},
      {"rad/s", {Dim::frequency, 1.0}},
      {"ps", {Dim::time_s, 1e-12}}, {"ns", {Dim::time_s, 1e-9}},
      {"us", {Dim::time_s, 1e-6}},  {"ms", {Dim::time_s, 1e-3}},
      {"s", {Dim::time_s, 1.0}},
      {"uV", {Dim::voltage, 1e-6}}, {"mV", {Dim::voltage, 1e-3}},
      {"V", {Dim::voltage, 1.0}},
      {"kg", {Dim::mass, 1.0}},
      {"u", {Dim::mass, constants::atomic_mass_unit}},
      {"1/m", {Dim::wavenumber, 1.0}},
  };
  return table;
}

struct KeyEntry {
  Dim dim;
  double* target(ScenarioConfig& c) const { return getter(c); }
  double* (*getter)(ScenarioConfig&);
};

// integer and enum keys are handled separately
const std::map<std::string, KeyEntry>& key_table() {
  static const std::map<std::string, KeyEntry> table = {
      {"C_r", {Dim::capacitance, [](ScenarioConfig& c) { return &c.circuit.C_r; }}},
      {"L_r", {Dim::inductance, [](ScenarioConfig& c) { return &c.circuit.L_r; }}},
      {"C_m", {Dim::capacitance, [](ScenarioConfig& c) { return &c.circuit.C_m; }}},
      {"C_J", {Dim::capacitance, [](ScenarioConfig& c) { return &c.circuit.C_J; }}},
      {"C_g", {Dim::capacitance, [](ScenarioConfig& c) { return &c.circuit.C_g; }}},
      {"E_J", {Dim::frequency, [](ScenarioConfig& c) { return &c.circuit.E_J; }}},
      {"E_c", {Dim::frequency, [](ScenarioConfig& c) { return &c.circuit.E_c; }}},
      {"d_i", {Dim::length, [](ScenarioConfig& c) { return &c.circuit.d_i; }}},
      {"cavity_length", {Dim::length, [](ScenarioConfig& c) { return &c.circuit.cavity_length; }}},
      {"C_i", {Dim::capacitance, [](ScenarioConfig& c) { return &c.circuit.C_i; }}},
      {"C_i2", {Dim::capacitance, [](ScenarioConfig& c) { return &c.circuit.C_i2; }}},
      {"C_ib", {Dim::capacitance, [](ScenarioConfig& c) { return &c.circuit.C_ib; }}},
      {"E_Ja", {Dim::frequency, [](ScenarioConfig& c) { return &c.sw.E_Ja; }}},
      {"flux_ratio", {Dim::dimensionless, [](ScenarioConfig& c) { return &c.sw.flux_ratio; }}},
      {"ion_mass", {Dim::mass, [](ScenarioConfig& c) { return &c.ion.mass; }}},
      {"trap_frequency", {Dim::frequency, [](ScenarioConfig& c) { return &c.ion.trap_frequency; }}},
      {"photon_momentum", {Dim::wavenumber, [](ScenarioConfig& c) { return &c.ion.photon_momentum; }}},
      {"rabi_frequency", {Dim::frequency, [](ScenarioConfig& c) { return &c.ion.rabi_frequency; }}},
      {"laser_detuning", {Dim::frequency, [](ScenarioConfig& c) { return &c.ion.laser_detuning; }}},
      {"tau1", {Dim::time_s, [](ScenarioConfig& c) { return &c.tau1; }}},
      {"t1", {Dim::time_s, [](ScenarioConfig& c) { return &c.t1; }}},
      {"t2", {Dim::time_s, [](ScenarioConfig& c) { return &c.t2; }}},
      {"noise_amplitude", {Dim::dimensionless, [](ScenarioConfig& c) { return &c.noise.amplitude; }}},
      {"noise_omega_min", {Dim::frequency, [](ScenarioConfig& c) { return &c.noise.omega_min; }}},
      {"noise_omega_max", {Dim::frequency, [](ScenarioConfig& c) { return &c.noise.omega_max; }}},
      {"flip_interval", {Dim::time_s, [](ScenarioConfig& c) { return &c.protocol.interval; }}},
      {"noise_total_time", {Dim::time_s, [](ScenarioConfig& c) { return &c.protocol.total_time; }}},
      {"R_n", {Dim::resistance, [](ScenarioConfig& c) { return &c.R_n; }}},
      {"n_ratio", {Dim::dimensionless, [](ScenarioConfig& c) { return &c.n_ratio; }}},
      {"temperature", {Dim::temperature, [](ScenarioConfig& c) { return &c.temperature; }}},
      {"V_i", {Dim::voltage, [](ScenarioConfig& c) { return &c.V_i; }}},
      {"V_ib", {Dim::voltage, [](ScenarioConfig& c) { return &c.V_ib; }}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& msg, int line) {
  std::ostringstream os;
  os << "config error";
  if (line > 0) os << " (line " << line << ")";
  os << ": " << msg;
  throw std::invalid_argument(os.str());
}

void apply_key_value(ScenarioConfig& config, const std::string& key,
                     const std::string& rhs, int line) {
  // integer / enum keys
  if (key == "n1" || key == "n2") {
    std::size_t used = 0;
    const long long v = std::stoll(rhs, &used);
    if (trim(rhs.substr(used)) != "") fail("kick counts take no unit", line);
    if (v <= 0) fail("kick counts must be positive", line);
    (key == "n1" ? config.n1 : config.n2) = v;
    return;
  }
  if (key == "noise_kind") {
    if (rhs == "one_over_f") config.noise.kind = SpectrumKind::one_over_f;
    else if (rhs == "white") config.noise.kind = SpectrumKind::white;
    else fail("noise_kind must be one_over_f or white", line);
    return;
  }
  if (key == "flips_enabled") {
    if (rhs == "true") config.protocol.enabled = true;
    else if (rhs == "false") config.protocol.enabled = false;
    else fail("flips_enabled must be true or false", line);
    return;
  }

  const auto it = key_table().find(key);
  if (it == key_table().end()) fail("unknown key '" + key + "'", line);

  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(rhs, &used);
  } catch (const std::exception&) {
    fail("cannot parse numeric value '" + rhs + "'", line);
  }
  const std::string unit = trim(rhs.substr(used));
  if (!unit.empty()) {
    const auto uit = unit_table().find(unit);
    if (uit == unit_table().end()) fail("unknown unit '" + unit + "'", line);
    if (uit->second.dim != it->second.dim) {
      fail("unit '" + unit + "' does not match key '" + key + "'", line);
    }
    value *= uit->second.factor;
  }
  *it->second.getter(config) = value;

  // the invariants are part of parsing: reject out-of-range values early
  try {
    config.circuit.validate();
  } catch (const std::exception& e) {
    fail(e.what(), line);
  }
}

}  // namespace

BathSpec ScenarioConfig::bath() const {
  BathSpec b;
  b.R_r = quasiparticle_resistance(R_n, n_ratio);
  b.temperature = temperature;
  b.C_r = circuit.C_r;
  b.C_m = circuit.C_m;
  b.C_t = circuit.C_t();
  b.L_r = circuit.L_r;
  return b;
}

void ScenarioConfig::finalize() {
  if (noise.coupling_prefactor == 0.0) {
    noise.coupling_prefactor = circuit.E_c * circuit.C_g / (2.0 * constants::e_charge);
  }
  if (noise.omega_min == 0.0) noise.omega_min = constants::two_pi * 1e3;
  if (noise.omega_max == 0.0) noise.omega_max = constants::two_pi * 1e10;
  if (noise.amplitude == 0.0) noise.amplitude = 1e-13;  // V^2, 1/f scale
  if (protocol.interval == 0.0) protocol.interval = 1e-9;
  if (protocol.total_time == 0.0) protocol.total_time = 20e-9;
  if (seed_list.empty()) {
    seed_list.resize(512);
    for (std::size_t i = 0; i < seed_list.size(); ++i) seed_list[i] = i + 1;
  }
}

ScenarioConfig load_config(const std::string& path) {
  ScenarioConfig config;
  if (path.empty()) {
    config.finalize();
    return config;
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config error: cannot open '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string rhs = trim(line.substr(eq + 1));
    if (key.empty() || rhs.empty()) fail("expected 'key = value'", line_no);
    apply_key_value(config, key, rhs, line_no);
  }
  config.finalize();
  return config;
}

void apply_override(ScenarioConfig& config, const std::string& key,
                    const std::string& value) {
  apply_key_value(config, key, value, 0);
  config.finalize();
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("seed range must be increasing");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (!token.empty()) seeds.push_back(std::stoull(token));
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

Scenario parse_scenario(const std::string& name) {
  if (name == "gate_fidelity") return Scenario::gate_fidelity;
  if (name == "gate_time") return Scenario::gate_time;
  if (name == "noise_echo") return Scenario::noise_echo;
  if (name == "dissipation") return Scenario::dissipation;
  if (name == "switch") return Scenario::switch_reduction;
  if (name == "balance") return Scenario::balance;
  if (name == "report_all") return Scenario::report_all;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::gate_fidelity: return "gate_fidelity";
    case Scenario::gate_time: return "gate_time";
    case Scenario::noise_echo: return "noise_echo";
    case Scenario::dissipation: return "dissipation";
    case Scenario::switch_reduction: return "switch";
    case Scenario::balance: return "balance";
    case Scenario::report_all: return "report_all";
  }
  return "?";
}

std::uint64_t config_hash(const ScenarioConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << config.circuit.C_r << '|' << config.circuit.L_r << '|' << config.circuit.C_m << '|'
     << config.circuit.C_J << '|' << config.circuit.C_g << '|' << config.circuit.E_J << '|'
     << config.circuit.E_c << '|' << config.circuit.d_i << '|' << config.circuit.C_i << '|'
     << config.circuit.C_i2 << '|' << config.circuit.C_ib << '|' << config.sw.E_Ja << '|'
     << config.sw.flux_ratio << '|' << config.ion.mass << '|' << config.ion.trap_frequency
     << '|' << config.ion.photon_momentum << '|' << config.n1 << '|' << config.n2 << '|'
     << config.tau1 << '|' << config.t1 << '|' << config.t2 << '|'
     << static_cast<int>(config.noise.kind) << '|' << config.noise.amplitude << '|'
     << config.noise.omega_min << '|' << config.noise.omega_max << '|'
     << config.protocol.interval << '|' << config.protocol.total_time << '|'
     << config.R_n << '|' << config.n_ratio << '|' << config.temperature << '|'
     << config.V_i << '|' << config.V_ib;
  for (std::uint64_t s : config.seed_list) os << ',' << s;
  const std::string text = os.str();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace hybridsim
