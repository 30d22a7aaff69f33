#pragma once

// Riemann maps of both sides of a smooth Jordan curve, computed from the
// Szego kernel via the Kerzman-Stein integral equation, and the closed-form
// branch maps available on circle domains.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "strebel/periodic.hpp"
#include "strebel/qd_core.hpp"
#include "strebel/tracer.hpp"

namespace strebel {

enum class Side { Interior, Exterior };

struct MapOptions {
  std::size_t nodes = 0;          ///< fixed node count; 0 selects by self-test
  std::size_t min_nodes = 256;
  std::size_t max_nodes = 4096;
  double self_test_tol = 1e-8;    ///< relative to the curve diameter
  double min_rcond = 1e-13;
};

/// Boundary correspondence of a Riemann map on N matched nodes:
/// node z(t_j) corresponds to exp(i circle_args[j]).
///
/// Interior: phi maps the unit disk onto the inside, phi(0) = center,
/// phi'(0) > 0. Exterior: phi maps |zeta| > 1 onto the outside,
/// phi(inf) = inf, phi'(inf) > 0; internally the interior map of the curve
/// inverted about `center`.
class DiskMap {
 public:
  Side side() const noexcept { return side_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const CurveSamples& samples() const noexcept { return samples_; }
  std::span<const cplx> boundary_nodes() const noexcept { return samples_.points; }
  /// Unwrapped, strictly increasing, total increase 2 pi.
  std::span<const double> circle_args() const noexcept { return args_; }
  /// d(circle arg)/dt at the nodes.
  std::span<const double> circle_speed() const noexcept { return speed_; }
  cplx center() const noexcept { return center_; }
  /// phi'(0) for interior maps, phi'(inf) (the capacity) for exterior maps.
  double derivative_at_center() const noexcept { return derivative_; }
  double self_test_error() const noexcept { return self_test_; }
  double rcond() const noexcept { return rcond_; }
  double diameter() const noexcept { return diameter_; }

  /// Circle argument at curve parameter t, continuous in t.
  double circle_arg_at(double t) const;
  double circle_speed_at(double t) const;
  /// Curve parameter t whose circle argument equals theta (mod 2 pi),
  /// returned in [0, 2 pi).
  double param_of_circle_arg(double theta) const;
  cplx boundary_point(double t) const;

  /// phi(zeta) by the discrete Cauchy integral; |zeta| < 1 (interior) or
  /// |zeta| > 1 (exterior). Throws OutsideDomain or TooCloseToBoundary.
  cplx evaluate(cplx zeta) const;
  /// phi^{-1}(z) for z on the map's side of the curve.
  cplx evaluate_inverse(cplx z) const;

  /// Minimal distance to the boundary accepted by the evaluators, in the
  /// z-plane and the zeta-plane.
  double domain_cutoff() const;
  double disk_cutoff() const;

  /// Winding number of the boundary nodes around z.
  double winding_around(cplx z) const;

 private:
  friend struct DiskMapBuilder;

  Side side_ = Side::Interior;
  CurveSamples samples_;
  std::vector<double> args_;
  std::vector<double> speed_;
  TrigInterpolant arg_offset_;  ///< circle arg minus t
  TrigInterpolant z_interp_;
  cplx center_ = 0.0;
  double derivative_ = 1.0;
  double self_test_ = 0.0;
  double rcond_ = 1.0;
  double diameter_ = 0.0;
  std::shared_ptr<const DiskMap> inverted_;  ///< exterior only
};

/// Riemann map of the inside with phi(0) = p0.
DiskMap interior_map(const CurveSampler& curve, cplx p0, const MapOptions& opts = {});
/// Exterior map; `inversion_center` must lie strictly inside the curve.
DiskMap exterior_map(const CurveSampler& curve, cplx inversion_center, const MapOptions& opts = {});

/// Lemniscate-component overloads using lemniscate_sampler; the exterior
/// inversion centre is interior_reference_point.
DiskMap interior_map(const QuadDifferential& qd, const ClosedCurve& curve, cplx p0, const MapOptions& opts = {});
DiskMap exterior_map(const QuadDifferential& qd, const ClosedCurve& curve, const MapOptions& opts = {});

/// Of the centroid of the enclosed poles and the enclosed poles themselves,
/// the candidate farthest from the curve.
cplx interior_reference_point(const QuadDifferential& qd, const ClosedCurve& curve);

/// phi^{-1}(a_i) for the listed poles, in the map's own convention: inside
/// the disk for interior maps, outside for exterior maps. Throws PoleOnWrongSide.
std::vector<cplx> pole_preimages(const DiskMap& map, const QuadDifferential& qd,
                                 std::span<const std::size_t> indices);
/// Preimages of every pole.
std::vector<cplx> pole_preimages(const DiskMap& map, const QuadDifferential& qd);

/// z -> (f(z)/level)^exponent with arguments of every factor continued
/// along query paths from a base point on the curve (principal branch there).
class BranchTrackedMap {
 public:
  BranchTrackedMap(QuadDifferential qd, double level, double exponent, cplx base_point);

  double level() const noexcept { return level_; }
  double exponent() const noexcept { return exponent_; }
  cplx base_point() const noexcept { return base_; }
  /// arg f at the base point (sum of principal factor arguments).
  double base_argument() const noexcept { return base_arg_; }

  /// Continuous arg f along a polyline starting at the base point.
  /// Throws BranchPathCrossesPole.
  std::vector<double> argument_along(std::span<const cplx> path) const;
  /// Map values along a polyline starting at the base point.
  std::vector<cplx> along(std::span<const cplx> path) const;
  /// Value at z continued along the segment from the base point.
  cplx operator()(cplx z) const;

 private:
  QuadDifferential qd_;
  double level_;
  double exponent_;
  cplx base_;
  double base_arg_;
};

/// (f/level)^{1/alpha}, the exterior map's inverse on a proper lemniscate.
BranchTrackedMap closed_form_exterior(const QuadDifferential& qd, double level, const ClosedCurve& curve);
/// (f/level)^{1/alpha_j}, the interior map's inverse around pole j.
BranchTrackedMap closed_form_interior(const QuadDifferential& qd, double level, const ClosedCurve& curve,
                                      std::size_t pole);

}  // namespace strebel
