#pragma once

// Fingerprints k = phi_+^{-1} o phi_- of sub-lemniscates: numerically from
// the two Riemann maps, and from the Blaschke-product expressions that hold
// on circle and ring domains.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "strebel/confmap.hpp"
#include "strebel/qd_core.hpp"
#include "strebel/tracer.hpp"

namespace strebel {

/// exp(i rotation) zeta^monomial_power prod_i b(zeta; c_i)^{e_i} on the unit
/// circle, with b(zeta; c) = (zeta - c) / (1 - conj(c) zeta).
struct BlaschkeProduct {
  std::vector<cplx> centers;
  std::vector<double> exponents;
  double rotation = 0.0;
  double monomial_power = 0.0;

  /// Continuous argument at exp(i theta) for real theta; no unwrapping needed.
  double argument(double theta) const;
  /// Total argument increase over one turn, 2 pi (power + sum of exponents).
  double total_turn() const;
};

/// Continuous arg b(exp(i theta); c), |c| < 1. Equals the principal value at theta = 0.
double blaschke_factor_arg(double theta, cplx c);

/// Samples of B^root_exponent at exp(i theta_m). Throws CenterOnCircle.
std::vector<cplx> blaschke_eval(const BlaschkeProduct& b, double root_exponent, std::span<const double> thetas);

/// M unit-modulus samples of a circle homeomorphism on a uniform grid.
struct Fingerprint {
  std::vector<double> thetas;
  std::vector<cplx> values;
  int winding = 0;

  std::size_t size() const noexcept { return thetas.size(); }
  /// Unwrapped arguments of the values, starting from the principal value.
  std::vector<double> unwrapped() const;
};

std::vector<double> uniform_thetas(std::size_t m);

/// Rounded total turn / 2 pi. Throws NonUnitModulus beyond 1e-10.
int winding(const Fingerprint& fp);
bool strictly_monotone(const Fingerprint& fp);
double modulus_error(const Fingerprint& fp);

/// exp(i theta_to(t)) where theta_from(t) = theta: the circle map
/// to o from^{-1} across the shared curve. Throws CurveMismatch when the
/// maps are not built on the same nodes.
Fingerprint boundary_composition(const DiskMap& from, const DiskMap& to, std::size_t m);
/// Unwrapped arg of the composition at a single theta, continuous in theta.
double composition_arg(const DiskMap& from, const DiskMap& to, double theta);

/// k = phi_+^{-1} o phi_-.
Fingerprint numeric_fingerprint(const DiskMap& int_map, const DiskMap& ext_map, std::size_t m);
/// k^{-1} = phi_-^{-1} o phi_+.
Fingerprint numeric_inverse_fingerprint(const DiskMap& int_map, const DiskMap& ext_map, std::size_t m);

/// B_inf^{1/alpha} with B_inf built on the interior preimages of every pole.
Fingerprint circle_formula_infinity(const QuadDifferential& qd, const ClosedCurve& curve, const DiskMap& int_map,
                                    std::size_t m);

struct PoleFormula {
  Fingerprint inverse;  ///< k^{-1} = zeta^{alpha/alpha_j} B_j^{1/alpha_j}
  Fingerprint forward;  ///< k, by monotone inversion of the samples
  BlaschkeProduct product;
};

/// Circle domain around pole j. Centres are the exterior preimages of the
/// other poles reflected into the disk. Throws NonMonotone.
PoleFormula circle_formula_pole(const QuadDifferential& qd, const ClosedCurve& curve, const DiskMap& ext_map,
                                std::size_t pole, std::size_t m);

/// Exponents of the outer Blaschke factors in the ring-domain equation:
/// the pole weights, or all ones.
enum class ExponentVariant { Weighted, Literal };
std::string to_string(ExponentVariant v);

struct RingResidual {
  double residual = 0.0;     ///< sup over the circle of |B(k) - exp(i theta) A|
  double fitted_theta = 0.0;
  ExponentVariant variant = ExponentVariant::Weighted;
};

/// Residual of B(k(zeta)) = exp(i theta) A(zeta) on a ring-domain component.
/// The sup is taken over the M-point grid and refined around local maxima.
RingResidual ring_residual(const QuadDifferential& qd, const ClosedCurve& curve, const DiskMap& int_map,
                           const DiskMap& ext_map, ExponentVariant variant, std::size_t m);

struct Alignment {
  double theta = 0.0;  ///< in (-pi, pi]
  double sup_dist = 0.0;
};

/// theta minimizing max_m |reference_m - exp(i theta) candidate_m|: coarse
/// grid then golden-section search.
Alignment align_rotation(const Fingerprint& reference, const Fingerprint& candidate);

}  // namespace strebel
