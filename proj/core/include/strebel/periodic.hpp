#pragma once

// Smooth 2pi-periodic curves sampled on uniform parameter grids and their
// trigonometric interpolants.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "strebel/qd_core.hpp"
#include "strebel/tracer.hpp"

namespace strebel {

/// Trigonometric interpolant of N uniform samples on [0, 2pi).
/// Even N splits the Nyquist mode symmetrically so real data stays real.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(std::span<const cplx> samples);
  static TrigInterpolant from_real(std::span<const double> samples);

  std::size_t size() const noexcept { return n_; }
  cplx operator()(double t) const;
  cplx derivative(double t) const;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> coeffs_;  ///< modes -K..K with K = n/2, index k + K
};

/// Samples z(t_j), z'(t_j) at t_j = 2 pi j / N of a counterclockwise Jordan curve.
struct CurveSamples {
  std::vector<cplx> points;
  std::vector<cplx> derivs;

  std::size_t size() const noexcept { return points.size(); }
  double step() const;
};

/// Produces samples for any requested N; the parametrization is fixed, so
/// node j of N and node 2j of 2N coincide.
using CurveSampler = std::function<CurveSamples(std::size_t)>;

CurveSampler circle_sampler(cplx center, double radius);
CurveSampler ellipse_sampler(double semi_major, double semi_minor, cplx center = 0.0);

/// Lemniscate component parametrized by the conjugate potential: node t
/// satisfies log f(z(t)) = log(level) + i (v0 + alpha_enc t), where
/// alpha_enc is the total enclosed weight. Starts at curve_start. Nodes are
/// solved by Newton, not interpolated.
CurveSampler lemniscate_sampler(const QuadDifferential& qd, const ClosedCurve& curve);

/// The vertex of largest real part projected back onto the level set.
cplx curve_start(const QuadDifferential& qd, const ClosedCurve& curve);

}  // namespace strebel
