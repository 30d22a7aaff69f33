#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "strebel/error.hpp"

namespace strebel {

using cplx = std::complex<double>;

/// The quadratic differential -(sum_i w_i / (z - a_i))^2 dz^2 on the Riemann
/// sphere, stored through its poles a_i and real weights w_i.
///
/// The multivalued function f(z) = prod (z - a_i)^{w_i} never appears
/// explicitly; everything downstream works with F = f'/f (field) and
/// u = log|f| (log-modulus). Instances are immutable once built.
class QuadDifferential {
 public:
  /// Validates and builds. Throws DuplicatePoles, ZeroWeight or
  /// NonpositiveTotalWeight.
  static QuadDifferential make(std::vector<cplx> poles, std::vector<double> weights);

  std::span<const cplx> poles() const noexcept { return poles_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return poles_.size(); }

  /// Total weight; strictly positive.
  double alpha() const noexcept { return alpha_; }

  /// Largest pairwise pole distance, or 1 for a single pole. Used as the
  /// length scale for every scale-relative tolerance.
  double diameter() const noexcept { return diameter_; }
  cplx centroid() const noexcept { return centroid_; }

  /// F(z) = sum w_i / (z - a_i). Throws EvaluationAtPole.
  cplx field(cplx z) const;
  /// d^order F / dz^order at z, order >= 0.
  cplx field_derivative(cplx z, int order) const;
  /// u(z) = sum w_i log|z - a_i|. Throws EvaluationAtPole.
  double log_modulus(cplx z) const;

  /// Sum of weights over a subset of pole indices.
  double weight_of(std::span<const std::size_t> indices) const;

  /// Index of the nearest pole and its distance.
  std::pair<std::size_t, double> nearest_pole(cplx z) const;

 private:
  QuadDifferential() = default;

  std::vector<cplx> poles_;
  std::vector<double> weights_;
  double alpha_ = 0.0;
  double diameter_ = 1.0;
  cplx centroid_{};
};

/// A zero of F with its multiplicity and critical value w = exp(u(z)).
struct CriticalPoint {
  cplx z;
  int multiplicity = 1;
  double value = 0.0;
};

/// Zeros of the numerator polynomial p with multiplicity, and their critical
/// values. Clustered roots are stored once with multiplicity > 1.
struct CriticalSet {
  std::vector<CriticalPoint> points;

  /// Zeros repeated according to multiplicity; length n - 1.
  std::vector<cplx> zeros() const;
  /// Critical values aligned with zeros().
  std::vector<double> values() const;
  /// Sum of multiplicities.
  std::size_t count() const;
  bool empty() const noexcept { return points.empty(); }
};

struct Connectivity {
  bool connected = true;
  /// Indices into CriticalSet::points of a (max, min) critical-value pair,
  /// present only when disconnected.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

QuadDifferential make_differential(std::vector<cplx> poles, std::vector<double> weights);

cplx field_at(const QuadDifferential& qd, cplx z);
double log_modulus(const QuadDifferential& qd, cplx z);

/// Coefficients of p(z) = sum_i w_i prod_{j != i} (z - a_j), lowest degree
/// first. Degree n - 1, leading coefficient alpha.
std::vector<cplx> numerator_polynomial(const QuadDifferential& qd);

/// Horner evaluation of an ascending coefficient sequence.
cplx evaluate_polynomial(std::span<const cplx> coeffs, cplx z);

/// All zeros of p via companion-matrix eigenvalues with Newton polishing.
/// Empty for a single pole. Throws RootSolverFailure.
CriticalSet critical_set(const QuadDifferential& qd);

/// Connected iff all critical values agree to within rel_tol * max value.
Connectivity is_critical_graph_connected(const QuadDifferential& qd, double rel_tol = 1e-9);
Connectivity is_critical_graph_connected(const CriticalSet& cs, double rel_tol = 1e-9);

/// Smallest relative distance |log(level) - log(w_k)| over the critical
/// values, or +inf when there are none.
double critical_margin(const CriticalSet& cs, double level);

}  // namespace strebel
