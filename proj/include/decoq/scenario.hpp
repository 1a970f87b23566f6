#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "decoq/errors.hpp"
#include "json.hpp"

namespace decoq {

/// Validated scenario configuration. Unknown keys are rejected so typos in
/// config files cannot silently change a run.
struct ScenarioConfig {
  std::string scenario;  // entropy-lab | brownian | tdhf | chaos-sweep | verify
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  int workers = 0;  // 0: hardware concurrency
  nlohmann::json parameters;

  /// Parse and validate a JSON document; fills defaults. Throws InvalidInput
  /// with the offending key on schema violations.
  static ScenarioConfig fromJson(const nlohmann::json& doc);
  static ScenarioConfig fromFile(const std::filesystem::path& path);

  /// Full resolved form (defaults included) as recorded in run.json.
  nlohmann::json resolved() const;
};

struct RunRecord {
  int schema_version = 1;
  nlohmann::json config;
  std::vector<std::string> output_files;
  nlohmann::json summary;
  nlohmann::json diagnostics;
  int exit_code = 0;  // 0 ok, 2 validation error, 3 numerical failure
};

/// Execute a scenario and write run.json plus one CSV per data product into
/// the output directory. Deterministic for a fixed (config, seed).
RunRecord runScenario(const ScenarioConfig& config);

/// Stderr logger gated by the DECOQ_LOG environment variable
/// (error | info | debug; default error).
void logInfo(const std::string& message);
void logDebug(const std::string& message);

/// 17-significant-digit float formatting used by every CSV writer.
std::string formatDouble(double value);

}  // namespace decoq
