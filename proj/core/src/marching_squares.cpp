#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "strebel/geometry.hpp"
#include "strebel/tracer.hpp"

namespace strebel {

namespace {

constexpr double kHuge = 1e300;

double level_offset(const QuadDifferential& qd, cplx z, double target) {
  const auto [i, d] = qd.nearest_pole(z);
  if (d == 0.0) return qd.weights()[i] > 0 ? -kHuge : kHuge;
  return qd.log_modulus(z) - target;
}

}  // namespace

ContourSet marching_squares_oracle(const QuadDifferential& qd, double level, const Box& box, int resolution) {
  if (!(level > 0.0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  if (resolution < 2) throw Error(ErrorKind::InvalidArgument, "resolution must be at least 2");
  for (const auto p : qd.poles())
    if (!box.contains(p)) throw Error(ErrorKind::BoxTooSmall, "box does not contain every pole");

  const double target = std::log(level);
  const int n = resolution;
  const double dx = (box.xmax - box.xmin) / n;
  const double dy = (box.ymax - box.ymin) / n;
  const auto vertex = [&](int i, int j) { return cplx(box.xmin + i * dx, box.ymin + j * dy); };

  std::vector<double> g(static_cast<std::size_t>(n + 1) * (n + 1));
  const auto at = [&](int i, int j) -> double& { return g[static_cast<std::size_t>(j) * (n + 1) + i]; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) at(i, j) = level_offset(qd, vertex(i, j), target);

  // Edge ids: 2*(j*(n+1)+i) is (i,j)-(i+1,j); +1 is (i,j)-(i,j+1).
  const auto hedge = [&](int i, int j) { return 2L * (static_cast<long>(j) * (n + 1) + i); };
  const auto vedge = [&](int i, int j) { return hedge(i, j) + 1; };
  std::map<long, cplx> crossing;
  std::map<long, std::vector<long>> links;

  const auto cross = [&](long id, cplx a, cplx b, double ga, double gb) {
    if (!crossing.count(id)) {
      const double t = ga / (ga - gb);
      crossing[id] = a + t * (b - a);
    }
  };
  const auto link = [&](long e0, long e1) {
    links[e0].push_back(e1);
    links[e1].push_back(e0);
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double g00 = at(i, j), g10 = at(i + 1, j), g11 = at(i + 1, j + 1), g01 = at(i, j + 1);
      const int mask = (g00 > 0) | ((g10 > 0) << 1) | ((g11 > 0) << 2) | ((g01 > 0) << 3);
      if (mask == 0 || mask == 15) continue;
      const long bottom = hedge(i, j), right = vedge(i + 1, j), top = hedge(i, j + 1), left = vedge(i, j);
      if ((g00 > 0) != (g10 > 0)) cross(bottom, vertex(i, j), vertex(i + 1, j), g00, g10);
      if ((g10 > 0) != (g11 > 0)) cross(right, vertex(i + 1, j), vertex(i + 1, j + 1), g10, g11);
      if ((g01 > 0) != (g11 > 0)) cross(top, vertex(i, j + 1), vertex(i + 1, j + 1), g01, g11);
      if ((g00 > 0) != (g01 > 0)) cross(left, vertex(i, j), vertex(i, j + 1), g00, g01);

      switch (mask) {
        case 1: case 14: link(left, bottom); break;
        case 2: case 13: link(bottom, right); break;
        case 3: case 12: link(left, right); break;
        case 4: case 11: link(right, top); break;
        case 6: case 9: link(bottom, top); break;
        case 7: case 8: link(left, top); break;
        case 5: case 10: {
          const double gc = level_offset(qd, vertex(i, j) + cplx(0.5 * dx, 0.5 * dy), target);
          // Centre on the side of g00: corners 00 and 11 are joined through it.
          if ((gc > 0) == (g00 > 0)) {
            link(left, top);
            link(bottom, right);
          } else {
            link(left, bottom);
            link(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }

  for (const auto& [id, pts] : links) {
    if (pts.size() != 2) throw Error(ErrorKind::BoxTooSmall, "contour reaches the box boundary");
  }

  std::vector<std::pair<std::vector<std::size_t>, std::vector<cplx>>> loops;
  std::map<long, bool> seen;
  for (const auto& [first, unused] : links) {
    if (seen[first]) continue;
    std::vector<cplx> poly;
    long prev = -1, cur = first;
    while (!seen[cur]) {
      seen[cur] = true;
      poly.push_back(crossing.at(cur));
      const auto& nb = links.at(cur);
      const long next = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = next;
    }
    auto sig = geometry::enclosed_poles(poly, qd.poles());
    loops.emplace_back(std::move(sig), std::move(poly));
  }
  std::stable_sort(loops.begin(), loops.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  ContourSet out;
  out.component_count = loops.size();
  for (auto& [sig, poly] : loops) {
    out.signatures.push_back(std::move(sig));
    out.polylines.push_back(std::move(poly));
  }
  return out;
}

}  // namespace strebel
