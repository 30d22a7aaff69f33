#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "strebel/pipeline.hpp"

namespace strebel::cli {

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const CriticalSet& cs);
nlohmann::json to_json(const Connectivity& c);
/// Signature, class and geometry of a traced component.
nlohmann::json component_summary(const QuadDifferential& qd, const ClosedCurve& curve);
/// Maps, fingerprint checks and residuals of an analyzed component.
nlohmann::json to_json(const ComponentReport& r);

/// Deterministic serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

/// "%.17g" formatting used by every CSV and report number.
std::string number(double x);

/// component_id,re,im,arc_param
void write_trace_csv(std::ostream& out, std::span<const ClosedCurve> curves);
/// theta,arg_k with unwrapped arguments
void write_fingerprint_csv(std::ostream& out, const Fingerprint& fp);

/// Parses "0,2" or "[0,2]" into sorted pole indices.
std::vector<std::size_t> parse_signature(const std::string& text);
std::string signature_string(std::span<const std::size_t> sig);

}  // namespace strebel::cli
