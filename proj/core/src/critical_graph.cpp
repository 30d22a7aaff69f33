#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "integrate.hpp"
#include "strebel/tracer.hpp"

namespace strebel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

struct Launch {
  std::size_t vertex;
  int direction;
};

// Directions in which Re of the local primitive c (z - z0)^{m+1} vanishes.
std::vector<double> critical_directions(const QuadDifferential& qd, const CriticalPoint& cp) {
  const int m = cp.multiplicity;
  double factorial = 1.0;
  for (int k = 2; k <= m; ++k) factorial *= k;
  const cplx c = qd.field_derivative(cp.z, m) / (factorial * (m + 1));
  std::vector<double> out;
  for (int j = 0; j < 2 * (m + 1); ++j) out.push_back((kPi / 2 - std::arg(c) + j * kPi) / (m + 1));
  return out;
}

int nearest_direction(const std::vector<double>& dirs, double angle) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const double d = std::abs(std::arg(std::polar(1.0, angle - dirs[j])));
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(j);
    }
  }
  return best;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

CriticalGraph critical_graph(const QuadDifferential& qd, const StepControl& ctl) {
  CriticalGraph graph;
  if (qd.size() < 2) return graph;

  const auto cs = critical_set(qd);
  const double scale = qd.diameter();
  for (const auto& cp : cs.points) graph.vertices.push_back(cp.z);

  std::vector<std::vector<double>> dirs;
  for (const auto& cp : cs.points) dirs.push_back(critical_directions(qd, cp));

  const double launch_radius = 1e-4 * scale;
  const double arrive = 1e-6 * scale;
  const double snap = 1e-3 * scale;
  const double hmax = ctl.max_step > 0 ? ctl.max_step : 0.02 * scale;
  const double max_arc = 1e3 * scale;

  std::set<std::pair<std::size_t, int>> used;
  for (std::size_t v = 0; v < cs.points.size(); ++v) {
    const double level = cs.points[v].value;
    for (int j = 0; j < static_cast<int>(dirs[v].size()); ++j) {
      if (used.count({v, j})) continue;
      used.insert({v, j});

      const cplx heading = std::polar(1.0, dirs[v][j]);
      const cplx start = project_to_level(qd, cs.points[v].z + launch_radius * heading, level);
      const cplx probe = kI * std::conj(qd.field(start));
      const double sign = (probe * std::conj(heading)).real() >= 0 ? 1.0 : -1.0;
      detail::Integrator integ(qd, sign * kI, ctl.tolerance * scale, ctl.tolerance, hmax);

      CriticalEdge edge;
      edge.from = v;
      edge.points = {cs.points[v].z, start};
      cplx z = start;
      double arc = launch_radius;
      double h = 0.5 * launch_radius;
      // Closest-approach snapping only arms once the trajectory is closing in.
      std::vector<double> closest(cs.points.size(), std::numeric_limits<double>::infinity());
      std::vector<double> previous;
      for (const auto& cp : cs.points) previous.push_back(std::abs(start - cp.z));
      std::vector<bool> armed(cs.points.size(), false);
      std::optional<std::size_t> target;

      while (!target) {
        if (arc > max_arc) throw Error(ErrorKind::TraceEscape, "critical trajectory did not terminate");
        double zero_dist = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < cs.points.size(); ++k)
          zero_dist = std::min(zero_dist, std::abs(z - cs.points[k].z));
        h = std::min({h, 0.25 * qd.nearest_pole(z).second, std::max(0.5 * zero_dist, 0.25 * arrive)});
        double taken = 0.0;
        cplx next = z;
        if (!integ.try_step(next, h, taken)) continue;
        next = project_to_level(qd, next, level);
        arc += std::abs(next - z);
        z = next;
        edge.points.push_back(z);

        for (std::size_t k = 0; k < cs.points.size(); ++k) {
          if (std::abs(cs.points[k].value - level) > 1e-9 * level) continue;
          const double d = std::abs(z - cs.points[k].z);
          if (k == v && arc < 4 * launch_radius) continue;
          if (d < previous[k]) armed[k] = true;
          previous[k] = d;
          if (d <= arrive || (armed[k] && closest[k] <= snap && d > 2 * closest[k])) {
            target = k;
            edge.approach = std::min(d, closest[k]);
            break;
          }
          if (armed[k]) closest[k] = std::min(closest[k], d);
        }
      }

      // Arrival direction at the terminal zero, then snap onto it.
      cplx before = edge.points.back();
      for (auto it = edge.points.rbegin(); it != edge.points.rend(); ++it) {
        if (std::abs(*it - cs.points[*target].z) >= 0.5 * launch_radius) {
          before = *it;
          break;
        }
      }
      if (edge.points.size() > 2 && std::abs(edge.points.back() - cs.points[*target].z) > edge.approach)
        edge.points.pop_back();
      edge.points.push_back(cs.points[*target].z);
      edge.to = *target;
      used.insert({*target, nearest_direction(dirs[*target], std::arg(before - cs.points[*target].z))});
      graph.edges.push_back(std::move(edge));
    }
  }

  std::vector<std::size_t> parent(graph.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : graph.edges) parent[find_root(parent, e.from)] = find_root(parent, e.to);
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find_root(parent, i));
  graph.component_count = roots.size();
  return graph;
}

}  // namespace strebel
