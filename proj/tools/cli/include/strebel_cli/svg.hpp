#pragma once

#include <span>
#include <string>

#include "strebel/tracer.hpp"

namespace strebel::cli {

/// Poles as crosses (red for positive weight, blue for negative), zeros as
/// dots, components as closed paths, and critical trajectories when given.
std::string render_svg(const QuadDifferential& qd, const CriticalSet& cs, std::span<const ClosedCurve> curves,
                       const CriticalGraph* graph = nullptr);

}  // namespace strebel::cli
