// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/frozen.hpp"
#include "oracles/multiprecision.hpp"
#include "strebel/pipeline.hpp"
#include "strebel_cli/commands.hpp"
#include "strebel_cli/config.hpp"

using strebel::cplx;
using Kind = strebel::DomainClass::Kind;

namespace {

constexpr std::size_t kNodes = 512;
constexpr std::size_t kSamples = 1024;
constexpr double kFormulaTol = 1e-6;
constexpr double kClosedFormTol = 1e-8;
constexpr double kModulusTol = 1e-10;
constexpr double kInvarianceTol = 1e-8;
constexpr double kConvergenceTol = 1e-8;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs a criterion body, turning exceptions into a failure line.
void criterion(int id, const std::string& what, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  detail.precision(3);
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  report(id, ok, what, detail.str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

strebel::QuadDifferential running() {
  return strebel::make_differential({1.0, -1.0, 0.0}, {1.0, -1.0, std::sqrt(2.0)});
}

strebel::AnalysisOptions options(std::size_t nodes, std::size_t samples) {
  strebel::AnalysisOptions o;
  o.map.nodes = nodes;
  o.samples = samples;
  return o;
}

strebel::MapOptions fixed(std::size_t nodes) {
  strebel::MapOptions o;
  o.nodes = nodes;
  return o;
}

strebel::ClosedCurve pick(const std::vector<strebel::ClosedCurve>& comps, const std::vector<std::size_t>& sig) {
  for (const auto& c : comps)
    if (c.enclosed_poles == sig) return c;
  throw std::runtime_error("component not found");
}

struct Case {
  std::string name;
  strebel::QuadDifferential qd;
  double level;
};

// Poles in the unit disk at least 0.3 apart, weights in [0.5, 2], level three
// times the largest critical value.
Case random_case(std::mt19937_64& rng, std::size_t n, int id) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0), weight(0.5, 2.0);
  std::vector<cplx> poles;
  while (poles.size() < n) {
    const cplx z(unit(rng), unit(rng));
    if (std::abs(z) >= 1.0) continue;
    if (std::all_of(poles.begin(), poles.end(), [&](cplx p) { return std::abs(p - z) >= 0.3; })) poles.push_back(z);
  }
  std::vector<double> weights;
  for (std::size_t i = 0; i < n; ++i) weights.push_back(weight(rng));
  auto qd = strebel::make_differential(poles, weights);
  const auto values = strebel::critical_set(qd).values();
  const double level = 3.0 * *std::max_element(values.begin(), values.end());
  return {"random" + std::to_string(id) + " (n=" + std::to_string(n) + ")", std::move(qd), level};
}

// The component enclosing every pole.
strebel::ClosedCurve outer_component(const Case& c) {
  std::vector<std::size_t> all(c.qd.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return pick(strebel::find_components(c.qd, c.level), all);
}

struct CorpusEntry {
  std::string name;
  strebel::QuadDifferential qd;
  double level;
  strebel::ClosedCurve curve;
  strebel::ComponentReport report;
};

std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto* file : {"running.json", "single_pole.json", "unit_circle.json", "symmetric3.json", "two_poles.json"}) {
    const auto cfg = strebel::cli::load_config(std::string(STREBEL_TEST_DATA) + "/" + file);
    for (const double level : cfg.levels)
      for (const auto& c : strebel::find_components(cfg.qd, level))
        out.push_back({file, cfg.qd, level, c, strebel::analyze_component(cfg.qd, c, options(kNodes, kSamples))});
  }
  return out;
}

std::string label(const CorpusEntry& e) {
  std::string s = e.name + " level " + std::to_string(e.level) + " {";
  for (std::size_t k = 0; k < e.curve.enclosed_poles.size(); ++k)
    s += (k ? "," : "") + std::to_string(e.curve.enclosed_poles[k]);
  return s + "}";
}

}  // namespace

int main() {
  criterion(1, "critical structure of the running configuration", [](auto& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto qd = running();
    const auto cs = strebel::critical_set(qd);
    const auto conn = strebel::is_critical_graph_connected(cs);
    const double elapsed = seconds_since(t0);

    const auto mp = oracle::running_configuration();
    const oracle::mp_real sqrt2 = sqrt(oracle::mp_real(2)), sqrt3 = sqrt(oracle::mp_real(3));
    const std::vector<oracle::mp_real> exact{(-1 + sqrt3) / sqrt2, (-1 - sqrt3) / sqrt2};
    const std::vector<oracle::mp_real> frozen_values{oracle::mp_real(oracle::frozen::kValue1),
                                                     oracle::mp_real(oracle::frozen::kValue2)};
    double zero_err = 0.0, value_err = 0.0, frozen_err = 0.0;
    const auto zeros = cs.zeros();
    const auto values = cs.values();
    if (zeros.size() != 2) return d << "expected two zeros, got " << zeros.size(), false;
    for (std::size_t k = 0; k < 2; ++k) {
      const oracle::mp_complex z(exact[k]);
      const oracle::mp_real w = exp(oracle::log_modulus(mp, z));
      frozen_err = std::max(frozen_err, static_cast<double>(abs(w - frozen_values[k]) / w));
      std::size_t best = 0;
      for (std::size_t j = 1; j < 2; ++j)
        if (std::abs(zeros[j] - oracle::to_double(z)) < std::abs(zeros[best] - oracle::to_double(z))) best = j;
      zero_err = std::max(zero_err, std::abs(zeros[best] - oracle::to_double(z)) / std::abs(oracle::to_double(z)));
      value_err = std::max(value_err, std::abs(values[best] - static_cast<double>(w)) / static_cast<double>(w));
    }
    d << "zero rel err " << zero_err << ", value rel err " << value_err << ", oracle vs frozen " << frozen_err
      << ", connected=" << (conn.connected ? "true" : "false") << ", " << elapsed << " s";
    return zero_err <= 1e-9 && value_err <= 1e-9 && frozen_err <= 1e-25 && !conn.connected && elapsed < 1.0;
  });

  criterion(2, "component census vs marching squares at 512 and 1024", [](auto& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto qd = running();
    bool ok = true;
    for (const double level : {0.05, 1.0, 9.0}) {
      std::vector<std::vector<std::size_t>> traced;
      for (const auto& c : strebel::find_components(qd, level)) traced.push_back(c.enclosed_poles);
      for (const int res : {512, 1024}) {
        const auto oracle = strebel::marching_squares_oracle(qd, level, strebel::Box::around(qd), res);
        ok = ok && oracle.signatures == traced && oracle.component_count == traced.size();
      }
      d << "level " << level << ": " << traced.size() << " components; ";
    }
    const double elapsed = seconds_since(t0);
    d << elapsed << " s";
    return ok && elapsed < 30.0;
  });

  std::vector<Case> infinity_cases;
  infinity_cases.push_back({"running level 9", running(), 9.0});
  infinity_cases.push_back({"two poles level 4", strebel::make_differential({-1.0, 1.0}, {1.0, 1.0}), 4.0});
  {
    std::mt19937_64 rng(20240611);
    for (int k = 0; k < 3; ++k) infinity_cases.push_back(random_case(rng, 3 + k, k + 1));
  }

  criterion(3, "domain of infinity: formula vs numeric fingerprint on 5 configurations", [&](auto& d) {
    bool ok = infinity_cases.size() >= 5;
    for (const auto& c : infinity_cases) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto curve = outer_component(c);
      if (strebel::classify(curve, c.qd).kind != Kind::CircleAtInfinity) {
        d << c.name << ": not a proper lemniscate; ";
        ok = false;
        continue;
      }
      const auto in = strebel::interior_map(c.qd, curve, strebel::interior_reference_point(c.qd, curve), fixed(kNodes));
      const auto out = strebel::exterior_map(c.qd, curve, fixed(kNodes));
      const auto k = strebel::numeric_fingerprint(in, out, kSamples);
      const auto formula = strebel::circle_formula_infinity(c.qd, curve, in, kSamples);
      const double dist = strebel::align_rotation(formula, k).sup_dist;
      const double elapsed = seconds_since(t0);
      d << c.name << ": " << dist << " in " << elapsed << " s; ";
      ok = ok && dist <= kFormulaTol && elapsed < 20.0;
    }
    return ok;
  });

  criterion(4, "pole domains: formula vs numeric inverse fingerprint", [](auto& d) {
    const auto qd = running();
    bool ok = true;
    const std::vector<std::tuple<double, std::vector<std::size_t>, std::size_t, const char*>> cases{
        {0.05, {2}, 2, "level 0.05 around pole 0"}, {9.0, {1}, 1, "level 9 around pole -1"}};
    for (const auto& [level, sig, pole, name] : cases) {
      const auto curve = pick(strebel::find_components(qd, level), sig);
      if (strebel::classify(curve, qd).kind != Kind::CircleAtPole) return d << name << " misclassified", false;
      const auto in = strebel::interior_map(qd, curve, strebel::interior_reference_point(qd, curve), fixed(kNodes));
      const auto out = strebel::exterior_map(qd, curve, fixed(kNodes));
      const auto inverse = strebel::numeric_inverse_fingerprint(in, out, kSamples);
      const auto formula = strebel::circle_formula_pole(qd, curve, out, pole, kSamples);
      const double dist = strebel::align_rotation(formula.inverse, inverse).sup_dist;
      d << name << ": " << dist << "; ";
      ok = ok && dist <= kFormulaTol;
    }
    return ok;
  });

  criterion(5, "ring domain: exactly one exponent variant passes and is named", [](auto& d) {
    const auto cfg = strebel::cli::load_config(std::string(STREBEL_TEST_DATA) + "/running.json");
    strebel::cli::Config c = cfg;
    c.analysis = options(kNodes, kSamples);
    strebel::cli::FingerprintFlags flags;
    flags.level = 1.0;
    flags.component = "0,2";
    flags.timings = false;
    const auto j = strebel::cli::fingerprint(c, flags);
    const auto& passing = j.at("passing_variants");
    for (const auto& r : j.at("analysis").at("ring"))
      d << r.at("variant").get<std::string>() << " residual " << r.at("residual").get<double>() << "; ";
    d << "passing: " << passing.dump();
    return j.at("analysis").at("class") == "ring" && passing.size() == 1 && passing[0].is_string();
  });

  std::vector<CorpusEntry> corpus;
  std::string corpus_error;
  try {
    corpus = load_corpus();
  } catch (const std::exception& e) {
    corpus_error = e.what();
  }

  criterion(6, "homeomorphism suite over the corpus", [&](auto& d) {
    if (!corpus_error.empty()) return d << corpus_error, false;
    bool ok = !corpus.empty();
    double worst_modulus = 0.0;
    for (const auto& e : corpus) {
      const auto& r = e.report;
      worst_modulus = std::max(worst_modulus, r.modulus_error);
      const bool good = r.fingerprint.winding == 1 && r.monotone && r.modulus_error <= kModulusTol;
      if (!good) d << label(e) << " failed; ";
      ok = ok && good;
    }
    d << corpus.size() << " fingerprints, worst modulus error " << worst_modulus;
    return ok;
  });

  criterion(7, "closed-form vs numeric exterior maps on proper lemniscates", [&](auto& d) {
    bool ok = true;
    std::size_t count = 0;
    double worst = 0.0;
    const auto check = [&](const strebel::QuadDifferential& qd, double level, const strebel::ClosedCurve& curve,
                           const std::string& name) {
      const auto out = strebel::exterior_map(qd, curve, fixed(kNodes));
      const double dist = strebel::closed_form_agreement(out, strebel::closed_form_exterior(qd, level, curve)).sup_dist;
      worst = std::max(worst, dist);
      ++count;
      if (dist > kClosedFormTol) d << name << ": " << dist << "; ";
      ok = ok && dist <= kClosedFormTol;
    };
    for (const auto& c : infinity_cases) check(c.qd, c.level, outer_component(c), c.name);
    for (const auto& e : corpus)
      if (e.report.domain.kind == Kind::CircleAtInfinity) check(e.qd, e.level, e.curve, label(e));
    d << count << " maps, worst " << worst;
    return ok && count > 0;
  });

  criterion(8, "invariance under z -> 2z + 1 with rescaled level", [&](auto& d) {
    if (!corpus_error.empty()) return d << corpus_error, false;
    bool ok = !corpus.empty();
    double worst = 0.0;
    for (const auto& e : corpus) {
      std::vector<cplx> moved;
      for (const auto a : e.qd.poles()) moved.push_back(2.0 * a + 1.0);
      const auto qd2 = strebel::make_differential(moved, {e.qd.weights().begin(), e.qd.weights().end()});
      const double level2 = e.level * std::pow(2.0, e.qd.alpha());
      const bool same_conn = strebel::is_critical_graph_connected(qd2).connected ==
                             strebel::is_critical_graph_connected(e.qd).connected;
      const auto curve2 = pick(strebel::find_components(qd2, level2), e.curve.enclosed_poles);
      const auto r2 = strebel::analyze_component(qd2, curve2, options(kNodes, kSamples));
      const double dist = strebel::align_rotation(e.report.fingerprint, r2.fingerprint).sup_dist;
      worst = std::max(worst, dist);
      if (dist > kInvarianceTol || !same_conn) d << label(e) << ": " << dist << "; ";
      ok = ok && same_conn && dist <= kInvarianceTol;
    }
    d << corpus.size() << " fingerprints, worst " << worst;
    return ok;
  });

  criterion(9, "self-convergence under doubling N and M", [&](auto& d) {
    if (!corpus_error.empty()) return d << corpus_error, false;
    bool ok = !corpus.empty();
    double worst = 0.0;
    std::size_t count = 0;
    const auto compare = [&](double a, double b, const std::string& what) {
      const double change = std::abs(a - b);
      worst = std::max(worst, change);
      ++count;
      if (change > kConvergenceTol) {
        d << what << ": " << a << " -> " << b << "; ";
        ok = false;
      }
    };
    for (const auto& e : corpus) {
      const auto fine = strebel::analyze_component(e.qd, e.curve, options(2 * kNodes, 2 * kSamples));
      const auto& r = e.report;
      compare(r.interior_self_test, fine.interior_self_test, label(e) + " interior self-test");
      compare(r.exterior_self_test, fine.exterior_self_test, label(e) + " exterior self-test");
      compare(r.modulus_error, fine.modulus_error, label(e) + " modulus");
      if (r.formula && fine.formula) compare(r.formula->sup_dist, fine.formula->sup_dist, label(e) + " formula");
      if (r.closed_form && fine.closed_form)
        compare(r.closed_form->sup_dist, fine.closed_form->sup_dist, label(e) + " closed form");
      for (std::size_t v = 0; v < std::min(r.ring.size(), fine.ring.size()); ++v)
        compare(r.ring[v].residual, fine.ring[v].residual, label(e) + " ring " + to_string(r.ring[v].variant));
    }
    d << count << " residuals, largest change " << worst;
    return ok;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
