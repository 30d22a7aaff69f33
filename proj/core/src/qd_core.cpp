#include "strebel/qd_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace strebel {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicatePoles: return "DuplicatePoles";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::NonpositiveTotalWeight: return "NonpositiveTotalWeight";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EvaluationAtPole: return "EvaluationAtPole";
    case ErrorKind::RootSolverFailure: return "RootSolverFailure";
    case ErrorKind::NearCriticalPoint: return "NearCriticalPoint";
    case ErrorKind::NoClosure: return "NoClosure";
    case ErrorKind::TraceEscape: return "TraceEscape";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::SolverSingular: return "SolverSingular";
    case ErrorKind::P0Outside: return "P0Outside";
    case ErrorKind::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::PoleOnWrongSide: return "PoleOnWrongSide";
    case ErrorKind::BranchPathCrossesPole: return "BranchPathCrossesPole";
    case ErrorKind::CurveMismatch: return "CurveMismatch";
    case ErrorKind::CenterOnCircle: return "CenterOnCircle";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::NonUnitModulus: return "NonUnitModulus";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

bool is_configuration_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::DuplicatePoles || kind == ErrorKind::ZeroWeight ||
         kind == ErrorKind::NonpositiveTotalWeight || kind == ErrorKind::InvalidArgument;
}

QuadDifferential QuadDifferential::make(std::vector<cplx> poles, std::vector<double> weights) {
  if (poles.empty()) throw Error(ErrorKind::InvalidArgument, "at least one pole is required");
  if (poles.size() != weights.size())
    throw Error(ErrorKind::InvalidArgument, "poles and weights differ in length");

  double extent = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (!std::isfinite(poles[i].real()) || !std::isfinite(poles[i].imag()))
      throw Error(ErrorKind::InvalidArgument, "non-finite pole");
    for (std::size_t j = 0; j < i; ++j) extent = std::max(extent, std::abs(poles[i] - poles[j]));
  }
  const double magnitude = std::accumulate(poles.begin(), poles.end(), 0.0,
                                           [](double m, cplx p) { return std::max(m, std::abs(p)); });
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(poles[i] - poles[j]) <= 1e-12 * std::max({extent, magnitude, 1.0}))
        throw Error(ErrorKind::DuplicatePoles,
                    "poles " + std::to_string(j) + " and " + std::to_string(i) + " coincide");

  double alpha = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) throw Error(ErrorKind::InvalidArgument, "non-finite weight");
    if (weights[i] == 0.0)
      throw Error(ErrorKind::ZeroWeight, "weight " + std::to_string(i) + " is zero");
    alpha += weights[i];
  }
  if (!(alpha > 0.0))
    throw Error(ErrorKind::NonpositiveTotalWeight, "total weight must be positive");

  QuadDifferential qd;
  qd.centroid_ = std::accumulate(poles.begin(), poles.end(), cplx{}) / double(poles.size());
  qd.poles_ = std::move(poles);
  qd.weights_ = std::move(weights);
  qd.alpha_ = alpha;
  qd.diameter_ = qd.poles_.size() > 1 ? extent : 1.0;
  return qd;
}

cplx QuadDifferential::field(cplx z) const { return field_derivative(z, 0); }

cplx QuadDifferential::field_derivative(cplx z, int order) const {
  // d^m/dz^m (z - a)^{-1} = (-1)^m m! (z - a)^{-(m+1)}
  double factor = 1.0;
  for (int k = 2; k <= order; ++k) factor *= k;
  if (order % 2 == 1) factor = -factor;
  cplx sum{};
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    const cplx d = z - poles_[i];
    if (d == cplx{}) throw Error(ErrorKind::EvaluationAtPole, "field evaluated at a pole");
    sum += weights_[i] * std::pow(d, -(order + 1));
  }
  return factor * sum;
}

double QuadDifferential::log_modulus(cplx z) const {
  double u = 0.0;
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    const double r = std::abs(z - poles_[i]);
    if (r == 0.0) throw Error(ErrorKind::EvaluationAtPole, "log-modulus evaluated at a pole");
    u += weights_[i] * std::log(r);
  }
  return u;
}

double QuadDifferential::weight_of(std::span<const std::size_t> indices) const {
  double s = 0.0;
  for (auto i : indices) s += weights_.at(i);
  return s;
}

std::pair<std::size_t, double> QuadDifferential::nearest_pole(cplx z) const {
  std::size_t best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    const double d = std::abs(z - poles_[i]);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return {best, dist};
}

std::vector<cplx> CriticalSet::zeros() const {
  std::vector<cplx> out;
  for (const auto& p : points) out.insert(out.end(), std::size_t(p.multiplicity), p.z);
  return out;
}

std::vector<double> CriticalSet::values() const {
  std::vector<double> out;
  for (const auto& p : points) out.insert(out.end(), std::size_t(p.multiplicity), p.value);
  return out;
}

std::size_t CriticalSet::count() const {
  std::size_t n = 0;
  for (const auto& p : points) n += std::size_t(p.multiplicity);
  return n;
}

QuadDifferential make_differential(std::vector<cplx> poles, std::vector<double> weights) {
  return QuadDifferential::make(std::move(poles), std::move(weights));
}

cplx field_at(const QuadDifferential& qd, cplx z) { return qd.field(z); }

double log_modulus(const QuadDifferential& qd, cplx z) { return qd.log_modulus(z); }

std::vector<cplx> numerator_polynomial(const QuadDifferential& qd) {
  const auto poles = qd.poles();
  const auto weights = qd.weights();
  const std::size_t n = poles.size();
  std::vector<cplx> p(n, cplx{});
  for (std::size_t i = 0; i < n; ++i) {
    // expand prod_{j != i} (z - a_j), ascending coefficients
    std::vector<cplx> term{cplx{1.0}};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<cplx> next(term.size() + 1, cplx{});
      for (std::size_t k = 0; k < term.size(); ++k) {
        next[k + 1] += term[k];
        next[k] -= poles[j] * term[k];
      }
      term = std::move(next);
    }
    for (std::size_t k = 0; k < term.size(); ++k) p[k] += weights[i] * term[k];
  }
  p.back() = cplx{qd.alpha()};
  return p;
}

cplx evaluate_polynomial(std::span<const cplx> coeffs, cplx z) {
  cplx acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

namespace {

std::vector<cplx> derivative(std::span<const cplx> c) {
  std::vector<cplx> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(double(k) * c[k]);
  return d;
}

// Newton on the (m-1)-th derivative, which has a simple root at an m-fold
// zero of p.
cplx polish(std::span<const cplx> coeffs, cplx z, int multiplicity) {
  std::vector<cplx> f(coeffs.begin(), coeffs.end());
  for (int k = 1; k < multiplicity; ++k) f = derivative(f);
  const auto df = derivative(f);
  for (int it = 0; it < 50; ++it) {
    const cplx fz = evaluate_polynomial(f, z);
    const cplx dfz = evaluate_polynomial(df, z);
    if (dfz == cplx{}) break;
    const cplx step = fz / dfz;
    z -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// |p(z)| relative to the size of its terms: a backward-error measure.
double relative_residual(std::span<const cplx> coeffs, cplx z) {
  double scale = 0.0;
  double r = 1.0;
  for (const auto& c : coeffs) {
    scale += std::abs(c) * r;
    r *= std::abs(z);
  }
  return std::abs(evaluate_polynomial(coeffs, z)) / scale;
}

}  // namespace

CriticalSet critical_set(const QuadDifferential& qd) {
  CriticalSet cs;
  const std::size_t degree = qd.size() - 1;
  if (degree == 0) return cs;

  const auto coeffs = numerator_polynomial(qd);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(Eigen::Index(degree), Eigen::Index(degree));
  for (std::size_t k = 0; k < degree; ++k)
    companion(0, Eigen::Index(k)) = -coeffs[degree - 1 - k] / coeffs[degree];
  for (std::size_t k = 1; k < degree; ++k) companion(Eigen::Index(k), Eigen::Index(k - 1)) = 1.0;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::RootSolverFailure, "companion eigenvalue iteration did not converge");

  std::vector<cplx> roots;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    roots.push_back(polish(coeffs, solver.eigenvalues()[k], 1));

  // Cluster nearly coincident roots. Eigenvalues of an m-fold root spread
  // like eps^{1/m}, so candidates within a loose radius are merged only when
  // the (m-1)-th derivative confirms a common root.
  const double scale = qd.diameter();
  const double merge_tight = 1e-8 * scale;
  const double merge_loose = 1e-4 * scale;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (!used[j] && std::abs(roots[j] - roots[i]) <= merge_loose) cluster.push_back(j);

    const auto accept = [&](std::vector<std::size_t> members) {
      cplx mean{};
      for (auto k : members) mean += roots[k];
      mean /= double(members.size());
      const int m = int(members.size());
      const cplx z = m > 1 ? polish(coeffs, mean, m) : roots[members.front()];
      for (auto k : members) used[k] = true;
      cs.points.push_back({z, m, 0.0});
    };

    if (cluster.size() == 1) {
      accept(cluster);
      continue;
    }
    std::vector<std::size_t> tight{i};
    for (std::size_t k = 1; k < cluster.size(); ++k)
      if (std::abs(roots[cluster[k]] - roots[i]) <= merge_tight) tight.push_back(cluster[k]);
    cplx mean{};
    for (auto k : cluster) mean += roots[k];
    mean /= double(cluster.size());
    const cplx z = polish(coeffs, mean, int(cluster.size()));
    auto dm = std::vector<cplx>(coeffs.begin(), coeffs.end());
    for (std::size_t k = 1; k < cluster.size(); ++k) dm = derivative(dm);
    const bool genuine = relative_residual(dm, z) <= 1e-12 && std::abs(z - mean) <= merge_loose;
    if (genuine) {
      accept(cluster);
    } else {
      for (auto k : cluster) used[k] = false;
      used[i] = true;
      accept(tight);
    }
  }

  for (auto& pt : cs.points) {
    if (relative_residual(coeffs, pt.z) > 1e-9)
      throw Error(ErrorKind::RootSolverFailure, "root polishing left a large residual");
    pt.value = std::exp(qd.log_modulus(pt.z));
  }
  if (cs.count() != degree) throw Error(ErrorKind::RootSolverFailure, "lost roots while clustering");

  std::sort(cs.points.begin(), cs.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.value != b.value ? a.value < b.value
                              : std::make_pair(a.z.real(), a.z.imag()) < std::make_pair(b.z.real(), b.z.imag());
  });
  return cs;
}

Connectivity is_critical_graph_connected(const CriticalSet& cs, double rel_tol) {
  Connectivity out;
  if (cs.points.empty()) return out;
  std::size_t imax = 0, imin = 0;
  for (std::size_t k = 1; k < cs.points.size(); ++k) {
    if (cs.points[k].value > cs.points[imax].value) imax = k;
    if (cs.points[k].value < cs.points[imin].value) imin = k;
  }
  const double hi = cs.points[imax].value;
  const double lo = cs.points[imin].value;
  out.connected = hi - lo <= rel_tol * hi;
  if (!out.connected) out.witness = std::make_pair(imax, imin);
  return out;
}

Connectivity is_critical_graph_connected(const QuadDifferential& qd, double rel_tol) {
  if (!(rel_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "rel_tol must be positive");
  return is_critical_graph_connected(critical_set(qd), rel_tol);
}

double critical_margin(const CriticalSet& cs, double level) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& p : cs.points) margin = std::min(margin, std::abs(level - p.value) / p.value);
  return margin;
}

}  // namespace strebel
