#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "strebel_cli/config.hpp"

namespace strebel::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct AnalyzeFlags {
  std::vector<double> levels;  ///< overrides the config levels when non-empty
  bool graph = false;
  bool timings = true;
  bool allow_critical = false;
};
nlohmann::json analyze(const Config& cfg, const AnalyzeFlags& flags, std::ostream& err);

struct TraceFlags {
  double level = 0.0;
  std::optional<std::string> svg;
  std::optional<std::string> csv;
  bool graph = false;
  bool allow_critical = false;
};
nlohmann::json trace(const Config& cfg, const TraceFlags& flags, std::ostream& err);

struct FingerprintFlags {
  double level = 0.0;
  std::optional<std::string> component;
  std::optional<std::string> csv;
  bool timings = true;
};
nlohmann::json fingerprint(const Config& cfg, const FingerprintFlags& flags);

/// Runs every invariant check over the configured levels. The report holds
/// "checks" (count), "failures" (list) and "passed".
nlohmann::json verify(const Config& cfg, bool timings);

}  // namespace strebel::cli
