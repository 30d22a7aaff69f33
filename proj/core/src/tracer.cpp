#include "strebel/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "integrate.hpp"
#include "strebel/geometry.hpp"

namespace strebel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

constexpr double kCriticalLevelMargin = 1e-6;

double level_tolerance(double log_level) { return 1e-6 * std::max(1.0, std::abs(log_level)); }

}  // namespace

double ClosedCurve::length() const {
  if (points.size() < 2) return 0.0;
  return arc_param.back() + std::abs(points.front() - points.back());
}

std::string DomainClass::name() const {
  switch (kind) {
    case Kind::CircleAtInfinity: return "circle_at_infinity";
    case Kind::CircleAtPole: return "circle_at_pole";
    case Kind::Ring: return "ring";
  }
  return "unknown";
}

cplx project_to_level(const QuadDifferential& qd, cplx z, double level) {
  const double target = std::log(level);
  const double scale = detail::length_scale(qd, z);
  for (int it = 0; it < 60; ++it) {
    const double r = qd.log_modulus(z) - target;
    const cplx step = r / qd.field(z);
    z -= step;
    if (std::abs(step) <= 1e-15 * scale) break;
  }
  return z;
}

ClosedCurve trace_level_curve(const QuadDifferential& qd, cplx seed, double level, const StepControl& ctl) {
  if (!(level > 0.0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  const double target = std::log(level);
  if (std::abs(qd.log_modulus(seed) - target) > level_tolerance(target))
    throw Error(ErrorKind::InvalidArgument, "seed is not on the requested level");

  const cplx start = project_to_level(qd, seed, level);
  const double scale = detail::length_scale(qd, start);
  const double field_floor = 1e-8 * detail::total_abs_weight(qd) / scale;
  const auto pole_distance = [&](cplx z) { return qd.nearest_pole(z).second; };

  std::vector<cplx> critical_zeros;
  for (const auto& p : critical_set(qd).points)
    if (std::abs(target - std::log(p.value)) < kCriticalLevelMargin) critical_zeros.push_back(p.z);
  const auto passes_zero = [&](cplx a, cplx b) {
    for (const cplx c : critical_zeros)
      if (geometry::segment_distance(c, a, b) <= 2.0 * std::abs(b - a)) return true;
    return false;
  };

  const double h0 = ctl.initial_step > 0 ? ctl.initial_step : 1e-2 * std::min(scale, pole_distance(start));
  const double hmax = ctl.max_step > 0 ? ctl.max_step : 0.05 * scale;
  const double max_arc = 1e3 * scale;

  detail::Integrator integ(qd, kI, ctl.tolerance * scale, ctl.tolerance, hmax);

  ClosedCurve curve;
  curve.level = level;
  curve.points.push_back(start);
  cplx z = start;
  double arc = 0.0;
  double h = h0;
  bool closed = false;

  while (!closed) {
    if (arc > max_arc)
      throw Error(ErrorKind::NoClosure, "trajectory did not close within the arc-length bound");
    h = std::min(h, 0.25 * pole_distance(z));
    cplx next = z;
    double taken = 0.0;
    if (!integ.try_step(next, h, taken)) continue;
    next = project_to_level(qd, next, level);
    if (std::abs(qd.field(next)) < field_floor || passes_zero(z, next))
      throw Error(ErrorKind::NearCriticalPoint, "level passes too close to a zero of the field");

    const cplx chord = next - z;
    const cplx to_start = start - z;
    if (arc > 10 * h0 && std::abs(to_start) <= 1.5 * std::abs(chord) &&
        (to_start * std::conj(chord)).real() > 0.0) {
      // Land on the start point: short exact-length steps from z.
      cplx land = z;
      for (int it = 0; it < 30; ++it) {
        const double remaining = std::abs(start - land);
        if (remaining <= 1e-13 * scale) break;
        land = project_to_level(qd, integ.fixed_step(land, remaining), level);
      }
      curve.closure_gap = std::abs(start - land);
      if (curve.closure_gap > ctl.closure_gap)
        throw Error(ErrorKind::NoClosure, "trajectory returned with gap " + std::to_string(curve.closure_gap));
      closed = true;
      break;
    }
    arc += std::abs(chord);
    z = next;
    curve.points.push_back(z);
  }

  if (geometry::signed_area(curve.points) < 0.0) std::reverse(curve.points.begin() + 1, curve.points.end());
  curve.arc_param = geometry::cumulative_length(curve.points);
  curve.enclosed_poles = geometry::enclosed_poles(curve.points, qd.poles());
  return curve;
}

namespace {

// Sign changes of u - log(level) along a ray from a pole, refined by
// bisection. Returns points on the level set.
std::vector<cplx> ray_crossings(const QuadDifferential& qd, std::size_t pole, cplx dir, double level) {
  const double target = std::log(level);
  const cplx a = qd.poles()[pole];
  const double scale = qd.diameter();
  const double pole_sign = qd.weights()[pole] > 0 ? -1.0 : 1.0;  // sign of u near the pole
  const auto g = [&](double r) { return qd.log_modulus(a + r * dir) - target; };
  const auto safe_g = [&](double r) {
    const cplx z = a + r * dir;
    if (qd.nearest_pole(z).second <= 1e-14 * scale) return std::numeric_limits<double>::quiet_NaN();
    return qd.log_modulus(z) - target;
  };

  double r_min = 1e-3 * scale;
  for (int i = 0; i < 400 && !(g(r_min) * pole_sign > 0); ++i) r_min *= 0.5;

  double r_max = 10 * scale;
  while (g(r_max) <= 0.0 || r_max < 10 * scale) r_max *= 2.0;

  std::vector<cplx> out;
  const double ratio = 1.005;
  double r0 = r_min;
  double g0 = safe_g(r0);
  while (r0 < r_max) {
    const double r1 = std::min(r0 * ratio, r_max);
    const double g1 = safe_g(r1);
    if (std::isfinite(g0) && std::isfinite(g1) && (g0 > 0) != (g1 > 0)) {
      double lo = r0, hi = r1, glo = g0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm > 0) == (glo > 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      const cplx z = a + 0.5 * (lo + hi) * dir;
      if (std::abs(qd.log_modulus(z) - target) <= level_tolerance(target)) out.push_back(z);
    }
    r0 = r1;
    g0 = g1;
  }
  return out;
}

}  // namespace

std::vector<ClosedCurve> find_components(const QuadDifferential& qd, double level, const StepControl& ctl) {
  if (!(level > 0.0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  const auto cs = critical_set(qd);
  if (critical_margin(cs, level) < kCriticalLevelMargin)
    throw Error(ErrorKind::NearCriticalPoint, "level coincides with a critical value");

  // A generic offset keeps rays off lines through other poles.
  constexpr double kRayOffset = 0.2360679774997897;
  std::map<std::vector<std::size_t>, ClosedCurve> found;
  for (std::size_t i = 0; i < qd.size(); ++i) {
    for (int k = 0; k < 8; ++k) {
      const cplx dir = std::polar(1.0, 2 * kPi * k / 8 + kRayOffset);
      for (const cplx seed : ray_crossings(qd, i, dir, level)) {
        bool known = false;
        for (const auto& [sig, c] : found)
          if (geometry::distance_to_polyline(c.points, seed) <= 1e-7 * qd.diameter()) known = true;
        if (known) continue;
        auto curve = trace_level_curve(qd, seed, level, ctl);
        if (curve.enclosed_poles.empty())
          throw Error(ErrorKind::NoClosure, "traced component encloses no pole");
        found.try_emplace(curve.enclosed_poles, std::move(curve));
      }
    }
  }
  std::vector<ClosedCurve> out;
  for (auto& [sig, c] : found) out.push_back(std::move(c));
  return out;
}

DomainClass classify(const ClosedCurve& curve, const QuadDifferential& qd) {
  const auto& enc = curve.enclosed_poles;
  if (enc.empty()) throw Error(ErrorKind::PreconditionFailed, "curve encloses no pole");
  DomainClass dc;
  if (enc.size() == 1) {
    dc.kind = DomainClass::Kind::CircleAtPole;
    dc.pole = enc.front();
  } else if (enc.size() == qd.size()) {
    dc.kind = DomainClass::Kind::CircleAtInfinity;
  } else {
    dc.kind = DomainClass::Kind::Ring;
    dc.inner = enc;
  }
  return dc;
}

OrthogonalTrace trace_orthogonal(const QuadDifferential& qd, cplx seed, double arc_limit, Flow flow,
                                 const StepControl& ctl) {
  if (!(arc_limit > 0.0)) throw Error(ErrorKind::InvalidArgument, "arc_limit must be positive");
  const double scale = detail::length_scale(qd, seed);
  const double stop = 1e-6 * scale;
  const auto zeros = critical_set(qd).points;

  OrthogonalTrace out;
  out.points.push_back(seed);

  const auto nearest_zero = [&](cplx z) {
    std::pair<std::size_t, double> best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < zeros.size(); ++k)
      if (double d = std::abs(z - zeros[k].z); d < best.second) best = {k, d};
    return best;
  };
  const auto terminal = [&](cplx z) {
    if (auto [i, d] = qd.nearest_pole(z); d <= stop) {
      out.end = OrthogonalTrace::End::Pole;
      out.index = i;
      return true;
    }
    if (auto [k, d] = nearest_zero(z); d <= stop) {
      out.end = OrthogonalTrace::End::Zero;
      out.index = k;
      return true;
    }
    return false;
  };
  if (terminal(seed)) return out;

  const double hmax = ctl.max_step > 0 ? ctl.max_step : 0.05 * scale;
  detail::Integrator integ(qd, flow == Flow::Ascending ? 1.0 : -1.0, ctl.tolerance * scale, ctl.tolerance, hmax);
  double h = ctl.initial_step > 0 ? ctl.initial_step : 1e-2 * std::min(scale, qd.nearest_pole(seed).second);

  // The conjugate potential v = Im log f is held fixed by Newton corrections
  // along i*conj(F); its increments are tracked factor by factor.
  const auto dv = [&](cplx from, cplx to) {
    double s = 0.0;
    for (std::size_t i = 0; i < qd.size(); ++i)
      s += qd.weights()[i] * std::arg((to - qd.poles()[i]) / (from - qd.poles()[i]));
    return s;
  };

  cplx z = seed;
  int guard = 0;
  while (out.arc_length < arc_limit && guard++ < 2000000) {
    const double limit = std::min(0.5 * qd.nearest_pole(z).second,
                                  zeros.empty() ? hmax : std::max(0.5 * nearest_zero(z).second, 0.1 * stop));
    h = std::min({h, limit, arc_limit - out.arc_length});
    cplx next = z;
    double taken = 0.0;
    if (!integ.try_step(next, h, taken)) continue;
    for (int it = 0; it < 3; ++it) {
      const double err = dv(z, next);
      next += kI * err / qd.field(next);
    }
    out.arc_length += taken;
    z = next;
    out.points.push_back(z);
    if (terminal(z)) break;
  }
  if (out.arc_length >= arc_limit) out.end = OrthogonalTrace::End::ArcLimit;
  return out;
}

Box Box::around(const QuadDifferential& qd, double margin_factor) {
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto p : qd.poles()) {
    b.xmin = std::min(b.xmin, p.real());
    b.xmax = std::max(b.xmax, p.real());
    b.ymin = std::min(b.ymin, p.imag());
    b.ymax = std::max(b.ymax, p.imag());
  }
  const double m = margin_factor * qd.diameter();
  b.xmin -= m;
  b.xmax += m;
  b.ymin -= m;
  b.ymax += m;
  return b;
}

Box Box::scaled(double factor) const {
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double hx = 0.5 * (xmax - xmin) * factor, hy = 0.5 * (ymax - ymin) * factor;
  return {cx - hx, cx + hx, cy - hy, cy + hy};
}

bool Box::contains(cplx z) const {
  return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
}

}  // namespace strebel
