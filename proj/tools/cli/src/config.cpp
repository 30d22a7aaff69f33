#include "strebel_cli/config.hpp"

#include <cmath>
#include <fstream>

namespace strebel::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

double finite_number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) bad(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(where + " must be finite");
  return x;
}

std::size_t count(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(where + " must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

Config parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) bad("configuration must be a JSON object");
  if (!doc.contains("poles") || !doc["poles"].is_array()) bad("'poles' must be an array of [re, im] pairs");
  if (!doc.contains("weights") || !doc["weights"].is_array()) bad("'weights' must be an array");

  std::vector<cplx> poles;
  for (const auto& p : doc["poles"]) {
    if (!p.is_array() || p.size() != 2) bad("each pole must be an [re, im] pair");
    poles.emplace_back(finite_number(p[0], "pole real part"), finite_number(p[1], "pole imaginary part"));
  }
  std::vector<double> weights;
  for (const auto& w : doc["weights"]) weights.push_back(finite_number(w, "weight"));

  Config cfg{QuadDifferential::make(std::move(poles), std::move(weights)), {}, {}, {}};

  if (doc.contains("levels")) {
    if (!doc["levels"].is_array()) bad("'levels' must be an array");
    for (const auto& l : doc["levels"]) {
      const double level = finite_number(l, "level");
      if (!(level > 0)) bad("levels must be positive");
      cfg.levels.push_back(level);
    }
  }

  if (doc.contains("options")) {
    const auto& o = doc["options"];
    if (!o.is_object()) bad("'options' must be an object");
    for (const auto& [key, v] : o.items()) {
      if (key == "samples") cfg.analysis.samples = count(v, key);
      else if (key == "nodes") cfg.analysis.map.nodes = count(v, key);
      else if (key == "min_nodes") cfg.analysis.map.min_nodes = count(v, key);
      else if (key == "max_nodes") cfg.analysis.map.max_nodes = count(v, key);
      else if (key == "self_test_tol") cfg.analysis.map.self_test_tol = finite_number(v, key);
      else if (key == "tolerance") cfg.step.tolerance = finite_number(v, key);
      else if (key == "closure_gap") cfg.step.closure_gap = finite_number(v, key);
      else bad("unknown option '" + key + "'");
    }
  }
  if (cfg.analysis.samples < 16) bad("samples must be at least 16");
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace strebel::cli
