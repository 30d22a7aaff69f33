#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "strebel/pipeline.hpp"
#include "strebel/qd_core.hpp"
#include "strebel/tracer.hpp"

namespace strebel::cli {

/// A parsed configuration document:
///   {"poles": [[re, im], ...], "weights": [...], "levels": [...],
///    "options": {"samples": M, "nodes": N, "tolerance": t, ...}}
struct Config {
  QuadDifferential qd;
  std::vector<double> levels;
  AnalysisOptions analysis;
  StepControl step;
};

/// Throws strebel::Error with a configuration kind on malformed input.
Config parse_config(const nlohmann::json& doc);
Config load_config(const std::filesystem::path& path);

}  // namespace strebel::cli
