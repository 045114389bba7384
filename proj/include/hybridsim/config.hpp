#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hybridsim/cavity_dissipation.hpp"
#include "hybridsim/charge_noise.hpp"
#include "hybridsim/circuit_reduction.hpp"
#include "hybridsim/gate_engine.hpp"

namespace hybridsim {

/*
 * Flat `key = value [unit]` configuration with `#` comments. Unknown keys
 * are rejected. Frequency-family units (Hz, GHz, ...) convert to angular
 * rad/s; all other units convert to SI base.
 */

enum class Scenario {
  gate_fidelity,
  gate_time,
  noise_echo,
  dissipation,
  switch_reduction,
  balance,
  report_all,
};

enum class OutputFormat { csv, json, both };

struct ScenarioConfig {
  Scenario scenario = Scenario::report_all;

  CircuitParams circuit;
  SwitchParams sw{6.283185307179586e12, 0.0};  // E_Ja = 100 E_J default
  IonParams ion;

  // canonical gate schedule parameters
  long long n1 = 10, n2 = 10;
  double tau1 = 1e-9, t1 = 5e-9, t2 = 5e-9;

  // charge-noise model and flip protocol
  NoiseModel noise;
  FlipProtocol protocol;

  // cavity bath: R_r = R_n * n_ratio
  double R_n = 3138.7;
  double n_ratio = 1e-5;
  double temperature = 0.1;

  // balance drive
  double V_i = 1e-4;
  double V_ib = 0.0;

  std::vector<std::uint64_t> seed_list;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::both;
  int workers = 0;  // 0 = hardware concurrency

  BathSpec bath() const;
  void finalize();  // fill derived defaults (noise prefactor, seeds)
};

// Parse a config file; empty path yields the defaults.
ScenarioConfig load_config(const std::string& path);

// Apply a single `key=value[ unit]` override (the --set flag).
void apply_override(ScenarioConfig& config, const std::string& key,
                    const std::string& value);

// Seed list syntax: "a,b,c" or "lo..hi" (inclusive).
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);

// FNV-1a over the canonical serialization of the resolved config.
std::uint64_t config_hash(const ScenarioConfig& config);

}  // namespace hybridsim
