#include "strebel/pipeline.hpp"

namespace strebel {

Alignment closed_form_agreement(const DiskMap& map, const BranchTrackedMap& closed_form) {
  Fingerprint numeric, exact;
  const auto nodes = map.boundary_nodes();
  exact.values = closed_form.along(nodes);
  for (std::size_t j = 0; j < map.size(); ++j) {
    numeric.values.push_back(std::polar(1.0, map.circle_args()[j]));
    numeric.thetas.push_back(map.circle_args()[j]);
  }
  exact.thetas = numeric.thetas;
  return align_rotation(numeric, exact);
}

ComponentReport analyze_component(const QuadDifferential& qd, const ClosedCurve& curve, const AnalysisOptions& opts) {
  ComponentReport r;
  r.curve = curve;
  r.domain = classify(curve, qd);
  r.reference_point = interior_reference_point(qd, curve);

  const auto sampler = lemniscate_sampler(qd, curve);
  const auto int_map = interior_map(sampler, r.reference_point, opts.map);
  MapOptions fixed = opts.map;
  fixed.nodes = int_map.size();
  const auto ext_map = exterior_map(sampler, r.reference_point, fixed);

  r.nodes = int_map.size();
  r.interior_self_test = int_map.self_test_error();
  r.exterior_self_test = ext_map.self_test_error();
  r.derivative_at_center = int_map.derivative_at_center();
  r.capacity = ext_map.derivative_at_center();

  r.fingerprint = numeric_fingerprint(int_map, ext_map, opts.samples);
  r.monotone = strictly_monotone(r.fingerprint);
  r.modulus_error = modulus_error(r.fingerprint);

  switch (r.domain.kind) {
    case DomainClass::Kind::CircleAtInfinity: {
      const auto formula = circle_formula_infinity(qd, curve, int_map, opts.samples);
      r.formula = align_rotation(r.fingerprint, formula);
      r.closed_form = closed_form_agreement(ext_map, closed_form_exterior(qd, curve.level, curve));
      break;
    }
    case DomainClass::Kind::CircleAtPole: {
      const auto formula = circle_formula_pole(qd, curve, ext_map, r.domain.pole, opts.samples);
      const auto inverse = numeric_inverse_fingerprint(int_map, ext_map, opts.samples);
      r.formula = align_rotation(inverse, formula.inverse);
      r.closed_form = closed_form_agreement(int_map, closed_form_interior(qd, curve.level, curve, r.domain.pole));
      break;
    }
    case DomainClass::Kind::Ring:
      for (const auto v : {ExponentVariant::Weighted, ExponentVariant::Literal})
        r.ring.push_back(ring_residual(qd, curve, int_map, ext_map, v, opts.samples));
      break;
  }
  return r;
}

}  // namespace strebel
