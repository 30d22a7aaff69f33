#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "strebel/qd_core.hpp"

namespace strebel {

/// Tolerances for trajectory integration. Zero means "derive from the
/// configuration's length scale".
struct StepControl {
  double tolerance = 1e-10;   ///< embedded RK error tolerance (abs, scaled, and rel)
  double initial_step = 0.0;
  double max_step = 0.0;
  double closure_gap = 1e-8;  ///< accepted return distance to the start point
};

/// A closed counterclockwise polyline on the level set u = log(level).
struct ClosedCurve {
  std::vector<cplx> points;  ///< closed implicitly: last connects to first
  double level = 1.0;
  std::vector<std::size_t> enclosed_poles;  ///< sorted pole indices (the signature)
  std::vector<double> arc_param;            ///< cumulative chord length per point
  double closure_gap = 0.0;

  double length() const;
};

/// Configuration domain containing a sub-lemniscate.
struct DomainClass {
  enum class Kind { CircleAtInfinity, CircleAtPole, Ring };
  Kind kind = Kind::CircleAtInfinity;
  std::size_t pole = 0;             ///< centre pole, CircleAtPole only
  std::vector<std::size_t> inner;   ///< enclosed poles, Ring only

  std::string name() const;
};

struct CriticalEdge {
  std::vector<cplx> points;  ///< from vertex `from` to vertex `to`, both included
  std::size_t from = 0;      ///< index into CriticalGraph::vertices
  std::size_t to = 0;
  double approach = 0.0;     ///< closest distance reached to the terminal zero before snapping
};

struct CriticalGraph {
  std::vector<cplx> vertices;  ///< distinct zeros of F
  std::vector<CriticalEdge> edges;
  std::size_t component_count = 0;
};

struct OrthogonalTrace {
  enum class End { ArcLimit, Pole, Zero };
  std::vector<cplx> points;
  End end = End::ArcLimit;
  std::size_t index = 0;  ///< pole or zero reached, when applicable
  double arc_length = 0.0;
};

enum class Flow { Ascending, Descending };

/// Integrates the level-curve field i*conj(F)/|F| from seed with Newton
/// projection back onto u = log(level) after every accepted step, until the
/// trajectory returns to the seed. Throws NearCriticalPoint or NoClosure.
ClosedCurve trace_level_curve(const QuadDifferential& qd, cplx seed, double level,
                              const StepControl& ctl = {});

/// Every connected component of the lemniscate |f| = level, sorted by
/// signature. Seeds come from bisection along eight rays per pole.
std::vector<ClosedCurve> find_components(const QuadDifferential& qd, double level,
                                         const StepControl& ctl = {});

DomainClass classify(const ClosedCurve& curve, const QuadDifferential& qd);

/// Traces every critical trajectory out of every zero and joins them into a
/// graph. Empty for a single pole.
CriticalGraph critical_graph(const QuadDifferential& qd, const StepControl& ctl = {});

/// Follows the gradient line of u (tangent parallel to conj(F)) until
/// arc_limit or until within 1e-6 * scale of a pole or zero.
OrthogonalTrace trace_orthogonal(const QuadDifferential& qd, cplx seed, double arc_limit,
                                 Flow flow = Flow::Ascending, const StepControl& ctl = {});

/// Newton projection of z onto u = log(level) along the gradient.
cplx project_to_level(const QuadDifferential& qd, cplx z, double level);

/// Axis-aligned rectangle for the contour oracle.
struct Box {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;

  /// Bounding box of the poles padded by margin_factor * diameter.
  static Box around(const QuadDifferential& qd, double margin_factor = 3.0);
  Box scaled(double factor) const;
  bool contains(cplx z) const;
};

struct ContourSet {
  std::size_t component_count = 0;
  std::vector<std::vector<cplx>> polylines;            ///< closed loops
  std::vector<std::vector<std::size_t>> signatures;    ///< sorted by signature
};

/// Grid-based contour extraction of u = log(level) with linear
/// interpolation, independent of the trajectory integrator. Test oracle.
/// Throws BoxTooSmall when a contour leaves the box.
ContourSet marching_squares_oracle(const QuadDifferential& qd, double level, const Box& box,
                                   int resolution);

}  // namespace strebel
