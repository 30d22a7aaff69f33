#pragma once

#include <cmath>
#include <vector>

#include "strebel/tracer.hpp"

namespace fixtures {

using strebel::cplx;

inline strebel::QuadDifferential running() {
  return strebel::make_differential({1.0, -1.0, 0.0}, {1.0, -1.0, std::sqrt(2.0)});
}

inline strebel::QuadDifferential two_poles() { return strebel::make_differential({-1.0, 1.0}, {1.0, 1.0}); }

inline strebel::QuadDifferential single_pole() { return strebel::make_differential({0.0}, {1.0}); }

inline const strebel::ClosedCurve& component(const std::vector<strebel::ClosedCurve>& comps,
                                             std::vector<std::size_t> sig) {
  for (const auto& c : comps)
    if (c.enclosed_poles == sig) return c;
  throw std::runtime_error("component not found");
}

inline strebel::ClosedCurve component_at(const strebel::QuadDifferential& qd, double level,
                                         std::vector<std::size_t> sig) {
  return component(strebel::find_components(qd, level), std::move(sig));
}

}  // namespace fixtures
