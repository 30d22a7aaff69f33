#include "strebel/confmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "strebel/geometry.hpp"

namespace strebel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr cplx kI{0.0, 1.0};

// H(w, z) = T(z) / (2 pi i (z - w)) for z on the curve with unit tangent T.
cplx kernel_h(cplx w, cplx z, cplx tangent) { return tangent / (kTwoPi * kI * (z - w)); }

struct SzegoSolution {
  std::vector<cplx> szego;  ///< S(z_j, a)
  double rcond = 0.0;
};

SzegoSolution solve_szego(const CurveSamples& s, cplx a) {
  const std::size_t n = s.size();
  const double h = s.step();
  std::vector<double> speed(n), root(n);
  std::vector<cplx> tangent(n);
  for (std::size_t j = 0; j < n; ++j) {
    speed[j] = std::abs(s.derivs[j]);
    tangent[j] = s.derivs[j] / speed[j];
    root[j] = std::sqrt(speed[j] * h);
  }
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const cplx kern = kernel_h(s.points[j], s.points[k], tangent[k]) -
                        std::conj(kernel_h(s.points[k], s.points[j], tangent[j]));
      system(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) -= kern * root[j] * root[k];
    }
    rhs(static_cast<Eigen::Index>(j)) = std::conj(kernel_h(a, s.points[j], tangent[j])) * root[j];
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
  const Eigen::VectorXcd x = lu.solve(rhs);
  SzegoSolution out;
  out.rcond = lu.rcond();
  out.szego.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.szego[j] = x(static_cast<Eigen::Index>(j)) / root[j];
  return out;
}

// Boundary value arg of the Riemann map from the Szego kernel at a node.
double boundary_arg(cplx tangent, cplx szego) { return std::arg(-kI * tangent * szego / std::conj(szego)); }

std::vector<double> unwrap(std::vector<double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    double d = v[i] - v[i - 1];
    d = std::remainder(d, kTwoPi);
    v[i] = v[i - 1] + d;
  }
  return v;
}

CurveSamples even_nodes(const CurveSamples& fine) {
  CurveSamples s;
  for (std::size_t j = 0; j < fine.size(); j += 2) {
    s.points.push_back(fine.points[j]);
    s.derivs.push_back(fine.derivs[j]);
  }
  return s;
}

}  // namespace

struct DiskMapBuilder {
  // Interior map of `s` with centre a. `fine` holds 2N samples whose odd
  // entries drive the self-test; may be null.
  static DiskMap interior(const CurveSamples& s, cplx a, const CurveSamples* fine, std::vector<double>* odd_errors) {
    const std::size_t n = s.size();
    const double h = s.step();
    const auto sol = solve_szego(s, a);

    DiskMap m;
    m.side_ = Side::Interior;
    m.samples_ = s;
    m.center_ = a;
    m.rcond_ = sol.rcond;
    m.diameter_ = geometry::diameter(s.points);

    double saa = 0.0;
    for (std::size_t j = 0; j < n; ++j) saa += std::norm(sol.szego[j]) * std::abs(s.derivs[j]) * h;
    std::vector<double> args(n);
    m.speed_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx tangent = s.derivs[j] / std::abs(s.derivs[j]);
      args[j] = boundary_arg(tangent, sol.szego[j]);
      m.speed_[j] = kTwoPi * std::norm(sol.szego[j]) * std::abs(s.derivs[j]) / saa;
    }
    m.args_ = unwrap(std::move(args));
    m.derivative_ = 1.0 / (kTwoPi * saa);
    finish(m);

    if (fine && odd_errors) {
      // Nystrom interpolant of S at the skipped nodes against the
      // trigonometric interpolant of the boundary correspondence.
      odd_errors->clear();
      for (std::size_t j = 1; j < fine->size(); j += 2) {
        const cplx w = fine->points[j];
        const cplx tw = fine->derivs[j] / std::abs(fine->derivs[j]);
        cplx sw = std::conj(kernel_h(a, w, tw));
        for (std::size_t k = 0; k < n; ++k) {
          const cplx tk = s.derivs[k] / std::abs(s.derivs[k]);
          const cplx kern = kernel_h(w, s.points[k], tk) - std::conj(kernel_h(s.points[k], w, tw));
          sw += kern * sol.szego[k] * std::abs(s.derivs[k]) * h;
        }
        const double t = kPi * static_cast<double>(j) / static_cast<double>(n);
        const double diff = std::remainder(boundary_arg(tw, sw) - m.circle_arg_at(t), kTwoPi);
        odd_errors->push_back(std::abs(diff) * std::abs(fine->derivs[j]) / m.circle_speed_at(t));
      }
    }
    return m;
  }

  static void set_self_test(DiskMap& m, double e) { m.self_test_ = e; }

  static void finish(DiskMap& m) {
    const std::size_t n = m.size();
    std::vector<double> offset(n);
    for (std::size_t j = 0; j < n; ++j) offset[j] = m.args_[j] - kTwoPi * j / n;
    m.arg_offset_ = TrigInterpolant::from_real(offset);
    m.z_interp_ = TrigInterpolant(m.samples_.points);
  }

  static CurveSamples invert(const CurveSamples& s, cplx c) {
    const std::size_t n = s.size();
    CurveSamples w;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = (n - j) % n;
      const cplx d = s.points[src] - c;
      w.points.push_back(1.0 / d);
      w.derivs.push_back(s.derivs[src] / (d * d));
    }
    return w;
  }

  // Exterior map from the interior map of the inverted, reversed curve.
  static DiskMap exterior(const CurveSamples& s, cplx c, const CurveSamples* fine, double* self_test) {
    const std::size_t n = s.size();
    std::vector<double> odd;
    CurveSamples fine_w;
    if (fine) fine_w = invert(*fine, c);
    auto inner = std::make_shared<DiskMap>(interior(invert(s, c), 0.0, fine ? &fine_w : nullptr, &odd));

    DiskMap m;
    m.side_ = Side::Exterior;
    m.samples_ = s;
    m.center_ = c;
    m.rcond_ = inner->rcond_;
    m.diameter_ = geometry::diameter(s.points);
    m.derivative_ = 1.0 / inner->derivative_;
    m.args_.resize(n);
    m.speed_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = (n - j) % n;
      m.args_[j] = (j == 0 ? 0.0 : kTwoPi) - inner->args_[src];
      m.speed_[j] = inner->speed_[src];
    }
    finish(m);
    if (fine && self_test) {
      // Position errors in the w-plane scale by |dz/dw| = 1/|w|^2.
      double worst = 0.0;
      for (std::size_t i = 0; i < odd.size(); ++i) {
        const cplx w = fine_w.points[2 * i + 1];
        worst = std::max(worst, odd[i] / std::norm(w));
      }
      *self_test = worst;
    }
    m.inverted_ = std::move(inner);
    return m;
  }
};

double DiskMap::circle_arg_at(double t) const { return t + arg_offset_(t).real(); }

double DiskMap::circle_speed_at(double t) const { return 1.0 + arg_offset_.derivative(t).real(); }

cplx DiskMap::boundary_point(double t) const { return z_interp_(t); }

double DiskMap::param_of_circle_arg(double theta) const {
  const std::size_t n = size();
  const double base = args_.front();
  double target = base + std::fmod(std::fmod(theta - base, kTwoPi) + kTwoPi, kTwoPi);
  if (target >= base + kTwoPi) target -= kTwoPi;
  // Bracket on the node table, extended by the periodic copy of node 0.
  const auto arg_of = [&](std::size_t j) { return j < n ? args_[j] : base + kTwoPi; };
  std::size_t lo = 0, hi = n;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (arg_of(mid) <= target ? lo : hi) = mid;
  }
  const double h = kTwoPi / static_cast<double>(n);
  double t_lo = h * lo, t_hi = h * hi;
  double t = t_lo + (target - arg_of(lo)) / (arg_of(hi) - arg_of(lo)) * h;
  for (int it = 0; it < 50; ++it) {
    const double g = circle_arg_at(t) - target;
    if (g > 0) t_hi = t; else t_lo = t;
    double next = t - g / circle_speed_at(t);
    if (!(next > t_lo && next < t_hi)) next = 0.5 * (t_lo + t_hi);
    if (std::abs(next - t) <= 1e-16 * kTwoPi) {
      t = next;
      break;
    }
    t = next;
  }
  return std::fmod(t + kTwoPi, kTwoPi);
}

double DiskMap::domain_cutoff() const { return kTwoPi * diameter_ / static_cast<double>(size()); }

double DiskMap::disk_cutoff() const { return 2.0 * kTwoPi / static_cast<double>(size()); }

double DiskMap::winding_around(cplx z) const { return geometry::winding_number(samples_.points, z); }

cplx DiskMap::evaluate(cplx zeta) const {
  if (side_ == Side::Exterior) {
    if (!(std::abs(zeta) > 1.0)) throw Error(ErrorKind::OutsideDomain, "exterior map needs |zeta| > 1");
    return center_ + 1.0 / inverted_->evaluate(1.0 / zeta);
  }
  if (!(std::abs(zeta) < 1.0)) throw Error(ErrorKind::OutsideDomain, "interior map needs |zeta| < 1");
  if (1.0 - std::abs(zeta) < disk_cutoff()) throw Error(ErrorKind::TooCloseToBoundary, "zeta too close to the circle");
  cplx num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const cplx tau = std::polar(1.0, args_[k]);
    const cplx c = kI * tau * speed_[k] / (tau - zeta);
    num += samples_.points[k] * c;
    den += c;
  }
  return num / den;
}

cplx DiskMap::evaluate_inverse(cplx z) const {
  if (side_ == Side::Exterior) {
    if (std::abs(winding_around(z)) > 0.5) throw Error(ErrorKind::OutsideDomain, "point is not outside the curve");
    return 1.0 / inverted_->evaluate_inverse(1.0 / (z - center_));
  }
  if (std::abs(winding_around(z) - 1.0) > 0.5) throw Error(ErrorKind::OutsideDomain, "point is not inside the curve");
  if (geometry::distance_to_polyline(samples_.points, z) < domain_cutoff())
    throw Error(ErrorKind::TooCloseToBoundary, "point too close to the curve");
  cplx num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const cplx c = samples_.derivs[k] / (samples_.points[k] - z);
    num += std::polar(1.0, args_[k]) * c;
    den += c;
  }
  return num / den;
}

namespace {

template <class Build>
DiskMap select_nodes(const CurveSampler& curve, const MapOptions& opts, Build build) {
  if (opts.nodes > 0) {
    const auto fine = curve(2 * opts.nodes);
    auto m = build(even_nodes(fine), fine);
    if (!(m.rcond() >= opts.min_rcond))
      throw Error(ErrorKind::SolverSingular, "ill-conditioned boundary integral system");
    return m;
  }
  double last = 0.0;
  for (std::size_t n = opts.min_nodes; n <= opts.max_nodes; n *= 2) {
    const auto fine = curve(2 * n);
    auto m = build(even_nodes(fine), fine);
    last = m.self_test_error();
    if (m.rcond() >= opts.min_rcond && last <= opts.self_test_tol * m.diameter()) return m;
  }
  throw Error(ErrorKind::SolverSingular,
              "self-test not met at the largest node count (error " + std::to_string(last) + ")");
}

}  // namespace

DiskMap interior_map(const CurveSampler& curve, cplx p0, const MapOptions& opts) {
  return select_nodes(curve, opts, [&](const CurveSamples& s, const CurveSamples& fine) {
    if (std::abs(geometry::winding_number(s.points, p0) - 1.0) > 0.5)
      throw Error(ErrorKind::P0Outside, "centre is not inside the curve");
    std::vector<double> odd;
    auto m = DiskMapBuilder::interior(s, p0, &fine, &odd);
    DiskMapBuilder::set_self_test(m, odd.empty() ? 0.0 : *std::max_element(odd.begin(), odd.end()));
    return m;
  });
}

DiskMap exterior_map(const CurveSampler& curve, cplx inversion_center, const MapOptions& opts) {
  return select_nodes(curve, opts, [&](const CurveSamples& s, const CurveSamples& fine) {
    if (std::abs(geometry::winding_number(s.points, inversion_center) - 1.0) > 0.5)
      throw Error(ErrorKind::P0Outside, "inversion centre is not inside the curve");
    double err = 0.0;
    auto m = DiskMapBuilder::exterior(s, inversion_center, &fine, &err);
    DiskMapBuilder::set_self_test(m, err);
    return m;
  });
}

DiskMap interior_map(const QuadDifferential& qd, const ClosedCurve& curve, cplx p0, const MapOptions& opts) {
  return interior_map(lemniscate_sampler(qd, curve), p0, opts);
}

DiskMap exterior_map(const QuadDifferential& qd, const ClosedCurve& curve, const MapOptions& opts) {
  return exterior_map(lemniscate_sampler(qd, curve), interior_reference_point(qd, curve), opts);
}

cplx interior_reference_point(const QuadDifferential& qd, const ClosedCurve& curve) {
  if (curve.enclosed_poles.empty()) throw Error(ErrorKind::PreconditionFailed, "curve encloses no pole");
  std::vector<cplx> candidates;
  cplx centroid = 0.0;
  for (const auto i : curve.enclosed_poles) {
    candidates.push_back(qd.poles()[i]);
    centroid += qd.poles()[i];
  }
  candidates.insert(candidates.begin(), centroid / static_cast<double>(curve.enclosed_poles.size()));
  cplx best = candidates[1];
  double best_d = -1.0;
  for (const auto c : candidates) {
    if (std::abs(geometry::winding_number(curve.points, c) - 1.0) > 0.5) continue;
    const double d = geometry::distance_to_polyline(curve.points, c);
    if (d > best_d + 1e-12 * qd.diameter()) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<cplx> pole_preimages(const DiskMap& map, const QuadDifferential& qd, std::span<const std::size_t> indices) {
  std::vector<cplx> out;
  for (const auto i : indices) {
    if (i >= qd.size()) throw Error(ErrorKind::InvalidArgument, "pole index out of range");
    const cplx a = qd.poles()[i];
    const double wind = map.winding_around(a);
    const bool inside = std::abs(wind - 1.0) < 0.5;
    if (inside != (map.side() == Side::Interior))
      throw Error(ErrorKind::PoleOnWrongSide, "pole " + std::to_string(i) + " is not on the map's side");
    out.push_back(map.evaluate_inverse(a));
  }
  return out;
}

std::vector<cplx> pole_preimages(const DiskMap& map, const QuadDifferential& qd) {
  std::vector<std::size_t> all(qd.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return pole_preimages(map, qd, all);
}

BranchTrackedMap::BranchTrackedMap(QuadDifferential qd, double level, double exponent, cplx base_point)
    : qd_(std::move(qd)), level_(level), exponent_(exponent), base_(base_point), base_arg_(0.0) {
  if (!(level > 0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  for (std::size_t i = 0; i < qd_.size(); ++i) base_arg_ += qd_.weights()[i] * std::arg(base_ - qd_.poles()[i]);
}

std::vector<double> BranchTrackedMap::argument_along(std::span<const cplx> path) const {
  std::vector<double> out;
  if (path.empty()) return out;
  const double guard = 1e-12 * std::max(1.0, qd_.diameter());
  const auto poles = qd_.poles();
  const auto weights = qd_.weights();
  double arg = base_arg_;
  cplx prev = base_;
  for (const cplx z : path) {
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (geometry::segment_distance(poles[i], prev, z) <= guard)
        throw Error(ErrorKind::BranchPathCrossesPole, "continuation path meets pole " + std::to_string(i));
      arg += weights[i] * std::arg((z - poles[i]) / (prev - poles[i]));
    }
    out.push_back(arg);
    prev = z;
  }
  return out;
}

std::vector<cplx> BranchTrackedMap::along(std::span<const cplx> path) const {
  const auto args = argument_along(path);
  std::vector<cplx> out;
  const double target = std::log(level_);
  for (std::size_t k = 0; k < path.size(); ++k)
    out.push_back(std::polar(std::exp(exponent_ * (qd_.log_modulus(path[k]) - target)), exponent_ * args[k]));
  return out;
}

cplx BranchTrackedMap::operator()(cplx z) const {
  const cplx path[] = {z};
  return along(path).front();
}

BranchTrackedMap closed_form_exterior(const QuadDifferential& qd, double level, const ClosedCurve& curve) {
  if (curve.enclosed_poles.size() != qd.size())
    throw Error(ErrorKind::PreconditionFailed, "component is not a proper lemniscate");
  return BranchTrackedMap(qd, level, 1.0 / qd.alpha(), curve_start(qd, curve));
}

BranchTrackedMap closed_form_interior(const QuadDifferential& qd, double level, const ClosedCurve& curve,
                                      std::size_t pole) {
  if (curve.enclosed_poles.size() != 1 || curve.enclosed_poles.front() != pole)
    throw Error(ErrorKind::PreconditionFailed, "component does not enclose exactly the given pole");
  return BranchTrackedMap(qd, level, 1.0 / qd.weights()[pole], curve_start(qd, curve));
}

}  // namespace strebel
