#pragma once

#include <string>
#include <vector>

#include "hybridsim/config.hpp"

namespace hybridsim {

// One reproduced quantity checked against its target.
struct ClaimResult {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  std::string tolerance;
  bool pass = false;
};

struct RunManifest {
  std::uint64_t config_hash = 0;
  std::string tool_version;
  std::vector<ClaimResult> claims;
  std::vector<std::string> files_written;
  // wall-clock times go to stderr only; emitted files stay byte-identical
  double wall_seconds = 0.0;
  bool all_pass() const;
};

// Executes the configured scenario (report_all fans out to every scenario),
// writes CSV/JSON outputs under config.output_dir, and returns the manifest.
RunManifest run_scenario(const ScenarioConfig& config);

}  // namespace hybridsim
