#include "strebel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace strebel::geometry {

double signed_area(std::span<const cplx> closed) {
  double a = 0.0;
  const std::size_t n = closed.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = closed[i], q = closed[(i + 1) % n];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

double winding_number(std::span<const cplx> closed, cplx p) {
  double total = 0.0;
  const std::size_t n = closed.size();
  for (std::size_t i = 0; i < n; ++i)
    total += std::arg((closed[(i + 1) % n] - p) / (closed[i] - p));
  return total / (2 * std::numbers::pi);
}

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double distance_to_polyline(std::span<const cplx> closed, cplx p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = closed.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, segment_distance(p, closed[i], closed[(i + 1) % n]));
  return best;
}

double diameter(std::span<const cplx> points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) d = std::max(d, std::abs(points[i] - points[j]));
  return d;
}

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

bool is_simple(std::span<const cplx> closed) {
  const std::size_t n = closed.size();
  if (n < 3) return false;
  // bounding boxes pruned per segment pair
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = closed[i], b = closed[(i + 1) % n];
    const double xmin = std::min(a.real(), b.real()), xmax = std::max(a.real(), b.real());
    const double ymin = std::min(a.imag(), b.imag()), ymax = std::max(a.imag(), b.imag());
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const cplx c = closed[j], d = closed[(j + 1) % n];
      if (std::max(c.real(), d.real()) < xmin || std::min(c.real(), d.real()) > xmax ||
          std::max(c.imag(), d.imag()) < ymin || std::min(c.imag(), d.imag()) > ymax)
        continue;
      if (segments_cross(a, b, c, d)) return false;
    }
  }
  return true;
}

std::vector<double> cumulative_length(std::span<const cplx> points) {
  std::vector<double> s(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) s[i] = s[i - 1] + std::abs(points[i] - points[i - 1]);
  return s;
}

std::vector<std::size_t> enclosed_poles(std::span<const cplx> closed, std::span<const cplx> poles) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < poles.size(); ++i)
    if (std::abs(winding_number(closed, poles[i])) >= 0.5) out.push_back(i);
  return out;
}

}  // namespace strebel::geometry
