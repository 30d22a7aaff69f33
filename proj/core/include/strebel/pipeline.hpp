#pragma once

// One-call analysis of a lemniscate component: both Riemann maps, the
// numeric fingerprint, and the formula checks that apply to its domain.

#include <optional>
#include <vector>

#include "strebel/confmap.hpp"
#include "strebel/fingerprint.hpp"
#include "strebel/tracer.hpp"

namespace strebel {

struct AnalysisOptions {
  MapOptions map;
  std::size_t samples = 1024;
};

struct ComponentReport {
  ClosedCurve curve;
  DomainClass domain;
  cplx reference_point = 0.0;  ///< interior map centre and exterior inversion centre
  std::size_t nodes = 0;
  double interior_self_test = 0.0;
  double exterior_self_test = 0.0;
  double derivative_at_center = 0.0;
  double capacity = 0.0;
  Fingerprint fingerprint;
  bool monotone = false;
  double modulus_error = 0.0;

  /// Circle domains: formula vs numeric after rotation alignment (k for the
  /// domain of infinity, k^{-1} for a pole).
  std::optional<Alignment> formula;
  /// Circle domains: closed-form branch map vs the numeric boundary
  /// correspondence on the same side, after one rotation.
  std::optional<Alignment> closed_form;
  /// Ring domains: both exponent variants.
  std::vector<RingResidual> ring;
};

ComponentReport analyze_component(const QuadDifferential& qd, const ClosedCurve& curve,
                                  const AnalysisOptions& opts = {});

/// exp(i circle_args) of a map and closed-form values at the same nodes,
/// aligned by one rotation.
Alignment closed_form_agreement(const DiskMap& map, const BranchTrackedMap& closed_form);

}  // namespace strebel
