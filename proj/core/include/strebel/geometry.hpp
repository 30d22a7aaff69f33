#pragma once

#include <span>
#include <vector>

#include "strebel/qd_core.hpp"

namespace strebel::geometry {

/// Shoelace area of a closed polyline; positive when counterclockwise.
double signed_area(std::span<const cplx> closed);

/// Winding number of a closed polyline around p (sum of turned angles / 2pi).
double winding_number(std::span<const cplx> closed, cplx p);

double segment_distance(cplx p, cplx a, cplx b);

/// Distance from p to the nearest point of a closed polyline.
double distance_to_polyline(std::span<const cplx> closed, cplx p);

/// Largest distance between two vertices.
double diameter(std::span<const cplx> points);

/// No two non-adjacent segments of the closed polyline intersect.
bool is_simple(std::span<const cplx> closed);

/// Cumulative chord length, starting at zero.
std::vector<double> cumulative_length(std::span<const cplx> points);

/// Indices i of the poles with winding >= 0.5, sorted ascending.
std::vector<std::size_t> enclosed_poles(std::span<const cplx> closed, std::span<const cplx> poles);

}  // namespace strebel::geometry
