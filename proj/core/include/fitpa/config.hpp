#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fitpa/experiments.hpp"
#include "fitpa/sim.hpp"

namespace fitpa {

inline constexpr const char* kToolVersion = "0.1.0";

struct ScanSpec {
  ScanParam param = ScanParam::Phi;
  double from = 0.0;
  double to = 1.0;
  double step = 0.1;
};

// Resolved run configuration: config file merged with CLI flag overrides
// (flags win; precedence is covered by tests).
struct RunConfig {
  TypeAssignment ta;
  FitnessModel fm;
  InitialGraph g0;  // resolved (defaulted per model when absent)
  std::uint64_t seed = 1;
  std::uint64_t steps = 10000;
  std::uint64_t record_every = 0;
  std::uint64_t runs = 100;
  int threads = 0;
  Engine engine = Engine::Auto;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json
  std::optional<ScanSpec> scan;
  std::string raw_json;  // canonical echo of the resolved config
};

struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::string> format;
};

// Parse a config JSON document (numbers or "a/b" strings for rationals).
// Throws ConfigError with a descriptive message on any invalid input.
RunConfig load_config(const std::string& json_text, const FlagOverrides& flags);
RunConfig load_config_file(const std::string& path, const FlagOverrides& flags);

SimConfig to_sim_config(const RunConfig& rc);

// FNV-1a 64-bit digest, hex encoded; used for config digests and output
// file digests in the manifest.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace fitpa
