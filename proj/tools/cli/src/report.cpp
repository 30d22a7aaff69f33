#include "strebel_cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "strebel/geometry.hpp"

namespace strebel::cli {

using nlohmann::json;

json to_json(cplx z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

json to_json(const CriticalSet& cs) {
  json arr = json::array();
  for (const auto& p : cs.points)
    arr.push_back({{"z", to_json(p.z)}, {"multiplicity", p.multiplicity}, {"value", p.value}});
  return arr;
}

json to_json(const Connectivity& c) {
  json j{{"connected", c.connected}};
  j["witness"] = c.witness ? json::array({c.witness->first, c.witness->second}) : json(nullptr);
  return j;
}

json component_summary(const QuadDifferential& qd, const ClosedCurve& curve) {
  const auto dc = classify(curve, qd);
  json j{{"signature", curve.enclosed_poles},
         {"class", dc.name()},
         {"points", curve.points.size()},
         {"length", curve.length()},
         {"closure_gap", curve.closure_gap},
         {"enclosed_weight", qd.weight_of(curve.enclosed_poles)}};
  if (dc.kind == DomainClass::Kind::CircleAtPole) j["pole"] = dc.pole;
  if (dc.kind == DomainClass::Kind::Ring) j["inner"] = dc.inner;
  return j;
}

json to_json(const ComponentReport& r) {
  json j{{"signature", r.curve.enclosed_poles},
         {"class", r.domain.name()},
         {"reference_point", to_json(r.reference_point)},
         {"nodes", r.nodes},
         {"samples", r.fingerprint.size()},
         {"interior_self_test", r.interior_self_test},
         {"exterior_self_test", r.exterior_self_test},
         {"derivative_at_center", r.derivative_at_center},
         {"capacity", r.capacity},
         {"winding", r.fingerprint.winding},
         {"monotone", r.monotone},
         {"modulus_error", r.modulus_error}};
  if (r.formula) j["formula"] = {{"sup_dist", r.formula->sup_dist}, {"theta", r.formula->theta}};
  if (r.closed_form) j["closed_form"] = {{"sup_dist", r.closed_form->sup_dist}, {"theta", r.closed_form->theta}};
  if (!r.ring.empty()) {
    json arr = json::array();
    for (const auto& rr : r.ring)
      arr.push_back({{"variant", to_string(rr.variant)}, {"residual", rr.residual}, {"fitted_theta", rr.fitted_theta}});
    j["ring"] = arr;
  }
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& out, std::span<const ClosedCurve> curves) {
  out << "component_id,re,im,arc_param\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& cv = curves[c];
    for (std::size_t k = 0; k < cv.points.size(); ++k)
      out << c << ',' << number(cv.points[k].real()) << ',' << number(cv.points[k].imag()) << ','
          << number(cv.arc_param[k]) << '\n';
  }
}

void write_fingerprint_csv(std::ostream& out, const Fingerprint& fp) {
  out << "theta,arg_k\n";
  const auto args = fp.unwrapped();
  for (std::size_t m = 0; m < fp.size(); ++m) out << number(fp.thetas[m]) << ',' << number(args[m]) << '\n';
}

std::vector<std::size_t> parse_signature(const std::string& text) {
  std::string cleaned;
  for (const char ch : text) cleaned += (ch == '[' || ch == ']' || ch == '{' || ch == '}' || ch == ',') ? ' ' : ch;
  std::istringstream in(cleaned);
  std::vector<std::size_t> sig;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.front() == '-')
      throw Error(ErrorKind::InvalidArgument, "invalid component signature '" + text + "'");
    sig.push_back(v);
  }
  if (sig.empty()) throw Error(ErrorKind::InvalidArgument, "empty component signature");
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  return sig;
}

std::string signature_string(std::span<const std::size_t> sig) {
  std::string s = "{";
  for (std::size_t i = 0; i < sig.size(); ++i) s += (i ? "," : "") + std::to_string(sig[i]);
  return s + "}";
}

}  // namespace strebel::cli
