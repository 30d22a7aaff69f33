#include "strebel/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

// This Boost release's pchip header calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

namespace strebel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_pi(double x) {
  x = std::remainder(x, kTwoPi);
  return x <= -kPi ? x + kTwoPi : x;
}

void require_unit_disk(cplx c) {
  if (!(std::abs(c) < 1.0)) throw Error(ErrorKind::CenterOnCircle, "Blaschke centre not inside the unit disk");
}

// Golden-section search for the minimum of g on [lo, hi]; returns (x, g(x)).
std::pair<double, double> golden_min(const std::function<double(double)>& g, double lo, double hi) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - ratio * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + ratio * (hi - lo);
      g2 = g(x2);
    }
  }
  return g1 <= g2 ? std::pair{x1, g1} : std::pair{x2, g2};
}

double golden_max(const std::function<double(double)>& g, double lo, double hi) {
  return -golden_min([&](double t) { return -g(t); }, lo, hi).second;
}

}  // namespace

double blaschke_factor_arg(double theta, cplx c) { return theta + 2.0 * std::arg(1.0 - c * std::polar(1.0, -theta)); }

double BlaschkeProduct::argument(double theta) const {
  double a = rotation + monomial_power * theta;
  for (std::size_t i = 0; i < centers.size(); ++i) a += exponents[i] * blaschke_factor_arg(theta, centers[i]);
  return a;
}

double BlaschkeProduct::total_turn() const {
  double s = monomial_power;
  for (double e : exponents) s += e;
  return kTwoPi * s;
}

std::vector<cplx> blaschke_eval(const BlaschkeProduct& b, double root_exponent, std::span<const double> thetas) {
  if (root_exponent == 0.0) throw Error(ErrorKind::InvalidArgument, "root exponent must be nonzero");
  if (b.centers.size() != b.exponents.size()) throw Error(ErrorKind::InvalidArgument, "centre/exponent size mismatch");
  for (const auto c : b.centers) require_unit_disk(c);
  std::vector<cplx> out;
  out.reserve(thetas.size());
  for (const double t : thetas) out.push_back(std::polar(1.0, root_exponent * b.argument(t)));
  return out;
}

std::vector<double> uniform_thetas(std::size_t m) {
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
  return t;
}

std::vector<double> Fingerprint::unwrapped() const {
  std::vector<double> a;
  a.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double p = std::arg(values[i]);
    a.push_back(i == 0 ? p : a.back() + std::remainder(p - a.back(), kTwoPi));
  }
  return a;
}

double modulus_error(const Fingerprint& fp) {
  double e = 0.0;
  for (const auto v : fp.values) e = std::max(e, std::abs(std::abs(v) - 1.0));
  return e;
}

int winding(const Fingerprint& fp) {
  if (fp.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty fingerprint");
  if (modulus_error(fp) > 1e-10) throw Error(ErrorKind::NonUnitModulus, "fingerprint values leave the unit circle");
  const auto a = fp.unwrapped();
  const double closing = std::remainder(std::arg(fp.values.front()) - a.back(), kTwoPi);
  return static_cast<int>(std::lround((a.back() + closing - a.front()) / kTwoPi));
}

bool strictly_monotone(const Fingerprint& fp) {
  const auto a = fp.unwrapped();
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!(a[i] > a[i - 1])) return false;
  const double closing = std::remainder(std::arg(fp.values.front()) - a.back(), kTwoPi);
  return closing > 0.0;
}

namespace {

void require_same_curve(const DiskMap& a, const DiskMap& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::CurveMismatch, "maps use different node counts");
  const double tol = 1e-10 * std::max(1.0, a.diameter());
  for (std::size_t j = 0; j < a.size(); ++j)
    if (std::abs(a.boundary_nodes()[j] - b.boundary_nodes()[j]) > tol)
      throw Error(ErrorKind::CurveMismatch, "maps are built on different curves");
}

}  // namespace

double composition_arg(const DiskMap& from, const DiskMap& to, double theta) {
  const double base = from.circle_args().front();
  const double turns = std::floor((theta - base) / kTwoPi);
  const double t = from.param_of_circle_arg(theta);
  return to.circle_arg_at(t) + kTwoPi * turns;
}

Fingerprint boundary_composition(const DiskMap& from, const DiskMap& to, std::size_t m) {
  require_same_curve(from, to);
  Fingerprint fp;
  fp.thetas = uniform_thetas(m);
  for (const double th : fp.thetas) fp.values.push_back(std::polar(1.0, to.circle_arg_at(from.param_of_circle_arg(th))));
  fp.winding = winding(fp);
  return fp;
}

Fingerprint numeric_fingerprint(const DiskMap& int_map, const DiskMap& ext_map, std::size_t m) {
  return boundary_composition(int_map, ext_map, m);
}

Fingerprint numeric_inverse_fingerprint(const DiskMap& int_map, const DiskMap& ext_map, std::size_t m) {
  return boundary_composition(ext_map, int_map, m);
}

Fingerprint circle_formula_infinity(const QuadDifferential& qd, const ClosedCurve& curve, const DiskMap& int_map,
                                    std::size_t m) {
  if (curve.enclosed_poles.size() != qd.size())
    throw Error(ErrorKind::PreconditionFailed, "component is not in the circle domain of infinity");
  BlaschkeProduct b;
  b.centers = pole_preimages(int_map, qd);
  b.exponents.assign(qd.weights().begin(), qd.weights().end());
  Fingerprint fp;
  fp.thetas = uniform_thetas(m);
  fp.values = blaschke_eval(b, 1.0 / qd.alpha(), fp.thetas);
  fp.winding = winding(fp);
  return fp;
}

PoleFormula circle_formula_pole(const QuadDifferential& qd, const ClosedCurve& curve, const DiskMap& ext_map,
                                std::size_t pole, std::size_t m) {
  if (curve.enclosed_poles.size() != 1 || curve.enclosed_poles.front() != pole)
    throw Error(ErrorKind::PreconditionFailed, "component is not in the circle domain of the pole");
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < qd.size(); ++i)
    if (i != pole) others.push_back(i);

  PoleFormula out;
  // A factor centred at c outside the disk is a constant times
  // b(zeta; 1/conj(c))^{-1}.
  const auto outside = pole_preimages(ext_map, qd, others);
  for (std::size_t k = 0; k < others.size(); ++k) {
    out.product.centers.push_back(1.0 / std::conj(outside[k]));
    out.product.exponents.push_back(-qd.weights()[others[k]]);
  }
  out.product.monomial_power = qd.alpha();
  const double root = 1.0 / qd.weights()[pole];

  out.inverse.thetas = uniform_thetas(m);
  out.inverse.values = blaschke_eval(out.product, root, out.inverse.thetas);
  out.inverse.winding = winding(out.inverse);
  if (!strictly_monotone(out.inverse)) throw Error(ErrorKind::NonMonotone, "k^{-1} samples are not monotone");

  // Invert theta -> kappa(theta) on three periods so every target is interior.
  std::vector<double> kappa, theta;
  for (int period = -1; period <= 1; ++period) {
    for (std::size_t i = 0; i < m; ++i) {
      const double th = out.inverse.thetas[i] + kTwoPi * period;
      theta.push_back(th);
      kappa.push_back(root * out.product.argument(th));
    }
  }
  const double k0 = kappa[m];
  boost::math::interpolators::pchip<std::vector<double>> inv(std::move(kappa), std::move(theta));
  out.forward.thetas = uniform_thetas(m);
  for (const double th : out.forward.thetas) {
    const double target = k0 + std::fmod(std::fmod(th - k0, kTwoPi) + kTwoPi, kTwoPi);
    out.forward.values.push_back(std::polar(1.0, inv(target)));
  }
  out.forward.winding = winding(out.forward);
  return out;
}

std::string to_string(ExponentVariant v) { return v == ExponentVariant::Weighted ? "weighted" : "literal"; }

RingResidual ring_residual(const QuadDifferential& qd, const ClosedCurve& curve, const DiskMap& int_map,
                           const DiskMap& ext_map, ExponentVariant variant, std::size_t m) {
  const auto& inner = curve.enclosed_poles;
  if (inner.size() < 2 || inner.size() >= qd.size())
    throw Error(ErrorKind::PreconditionFailed, "component is not in a ring domain");
  require_same_curve(int_map, ext_map);
  std::vector<std::size_t> outer;
  for (std::size_t i = 0; i < qd.size(); ++i)
    if (!std::binary_search(inner.begin(), inner.end(), i)) outer.push_back(i);

  BlaschkeProduct a;
  a.centers = pole_preimages(int_map, qd, inner);
  for (const auto i : inner) a.exponents.push_back(qd.weights()[i]);
  BlaschkeProduct b;
  b.monomial_power = qd.alpha();
  const auto outside = pole_preimages(ext_map, qd, outer);
  for (std::size_t k = 0; k < outer.size(); ++k) {
    b.centers.push_back(1.0 / std::conj(outside[k]));
    const double e = variant == ExponentVariant::Weighted ? qd.weights()[outer[k]] : 1.0;
    b.exponents.push_back(-e);
  }
  for (const auto c : a.centers) require_unit_disk(c);
  for (const auto c : b.centers) require_unit_disk(c);

  const auto mismatch = [&](double theta) {
    return b.argument(composition_arg(int_map, ext_map, theta)) - a.argument(theta);
  };
  RingResidual out;
  out.variant = variant;
  out.fitted_theta = wrap_pi(mismatch(0.0));
  const auto r = [&](double theta) { return std::abs(std::polar(1.0, mismatch(theta) - out.fitted_theta) - 1.0); };

  const auto grid = uniform_thetas(m);
  std::vector<double> vals;
  for (const double th : grid) vals.push_back(r(th));
  const double h = kTwoPi / static_cast<double>(m);
  double sup = *std::max_element(vals.begin(), vals.end());
  // Refine the largest local maxima of the sampled residual.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < m; ++i)
    if (vals[i] >= vals[(i + m - 1) % m] && vals[i] >= vals[(i + 1) % m]) peaks.push_back(i);
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
  if (peaks.size() > 8) peaks.resize(8);
  for (const auto i : peaks) sup = std::max(sup, golden_max(r, grid[i] - h, grid[i] + h));
  out.residual = sup;
  return out;
}

Alignment align_rotation(const Fingerprint& reference, const Fingerprint& candidate) {
  if (reference.size() != candidate.size() || reference.values.empty())
    throw Error(ErrorKind::InvalidArgument, "fingerprints must share the sample grid");
  const auto sup = [&](double theta) {
    const cplx rot = std::polar(1.0, theta);
    double s = 0.0;
    for (std::size_t i = 0; i < reference.values.size(); ++i)
      s = std::max(s, std::abs(reference.values[i] - rot * candidate.values[i]));
    return s;
  };
  constexpr int kCoarse = 256;
  const double h = kTwoPi / kCoarse;
  double best = 0.0, best_val = sup(0.0);
  for (int i = 1; i < kCoarse; ++i) {
    const double th = -kPi + h * i;
    if (const double v = sup(th); v < best_val) {
      best_val = v;
      best = th;
    }
  }
  cplx corr = 0.0;
  for (std::size_t i = 0; i < reference.values.size(); ++i) corr += reference.values[i] * std::conj(candidate.values[i]);
  if (const double ls = std::arg(corr); sup(ls) < best_val) {
    best = ls;
    best_val = sup(ls);
  }
  const auto [th, val] = golden_min(sup, best - h, best + h);
  Alignment out;
  if (val < best_val) {
    out.theta = wrap_pi(th);
    out.sup_dist = val;
  } else {
    out.theta = wrap_pi(best);
    out.sup_dist = best_val;
  }
  return out;
}

}  // namespace strebel
