#include "strebel/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "strebel/geometry.hpp"

namespace strebel {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
}  // namespace

TrigInterpolant::TrigInterpolant(std::span<const cplx> samples) : n_(samples.size()) {
  if (n_ == 0) throw Error(ErrorKind::InvalidArgument, "no samples to interpolate");
  std::vector<cplx> in(samples.begin(), samples.end()), out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  const std::size_t k_max = n_ / 2;
  coeffs_.assign(2 * k_max + 1, 0.0);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k <= k_max; ++k) coeffs_[k_max + k] = out[k] * scale;
  for (std::size_t k = 1; k <= k_max; ++k) coeffs_[k_max - k] = out[n_ - k] * scale;
  if (n_ % 2 == 0) {
    coeffs_[0] *= 0.5;
    coeffs_[2 * k_max] = coeffs_[0];
  }
}

TrigInterpolant TrigInterpolant::from_real(std::span<const double> samples) {
  std::vector<cplx> c(samples.begin(), samples.end());
  return TrigInterpolant(c);
}

cplx TrigInterpolant::operator()(double t) const {
  const auto k_max = static_cast<double>(n_ / 2);
  const cplx rot = std::polar(1.0, t);
  cplx phase = std::polar(1.0, -k_max * t);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    sum += coeffs_[i] * phase;
    phase *= rot;
  }
  return sum;
}

cplx TrigInterpolant::derivative(double t) const {
  const auto k_max = static_cast<long>(n_ / 2);
  const cplx rot = std::polar(1.0, t);
  cplx phase = std::polar(1.0, -static_cast<double>(k_max) * t);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    sum += kI * static_cast<double>(static_cast<long>(i) - k_max) * coeffs_[i] * phase;
    phase *= rot;
  }
  return sum;
}

double CurveSamples::step() const { return kTwoPi / static_cast<double>(points.size()); }

CurveSampler circle_sampler(cplx center, double radius) {
  if (!(radius > 0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  return [center, radius](std::size_t n) {
    CurveSamples s;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx e = std::polar(1.0, kTwoPi * j / n);
      s.points.push_back(center + radius * e);
      s.derivs.push_back(kI * radius * e);
    }
    return s;
  };
}

CurveSampler ellipse_sampler(double semi_major, double semi_minor, cplx center) {
  if (!(semi_major > 0 && semi_minor > 0)) throw Error(ErrorKind::InvalidArgument, "semi-axes must be positive");
  return [=](std::size_t n) {
    CurveSamples s;
    for (std::size_t j = 0; j < n; ++j) {
      const double t = kTwoPi * j / n;
      s.points.push_back(center + cplx(semi_major * std::cos(t), semi_minor * std::sin(t)));
      s.derivs.emplace_back(-semi_major * std::sin(t), semi_minor * std::cos(t));
    }
    return s;
  };
}

cplx curve_start(const QuadDifferential& qd, const ClosedCurve& curve) {
  if (curve.points.empty()) throw Error(ErrorKind::InvalidArgument, "empty curve");
  const auto it = std::max_element(curve.points.begin(), curve.points.end(),
                                   [](cplx a, cplx b) { return a.real() < b.real(); });
  return project_to_level(qd, *it, curve.level);
}

CurveSampler lemniscate_sampler(const QuadDifferential& qd, const ClosedCurve& curve) {
  const double enclosed = qd.weight_of(curve.enclosed_poles);
  if (curve.enclosed_poles.empty() || std::abs(enclosed) < 1e-12)
    throw Error(ErrorKind::PreconditionFailed, "component must enclose poles of nonzero total weight");
  const cplx start = curve_start(qd, curve);
  const double target = std::log(curve.level);
  const double scale = std::max(qd.diameter(), geometry::diameter(curve.points));

  return [qd, start, target, enclosed, scale](std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "node count must be positive");
    const std::size_t sub = std::max<std::size_t>(1, (2048 + n - 1) / n);
    const double h = kTwoPi / static_cast<double>(n * sub);
    const auto poles = qd.poles();
    const auto weights = qd.weights();

    CurveSamples s;
    cplx z = start;
    for (std::size_t step = 0; step < n * sub; ++step) {
      if (step % sub == 0) {
        s.points.push_back(z);
        s.derivs.push_back(kI * enclosed / qd.field(z));
      }
      const cplx prev = z;
      // Midpoint predictor on z' = i alpha_enc / F.
      const cplx mid = prev + 0.5 * h * kI * enclosed / qd.field(prev);
      z = prev + h * kI * enclosed / qd.field(mid);
      for (int it = 0; it < 40; ++it) {
        double dv = 0.0;
        for (std::size_t i = 0; i < poles.size(); ++i) dv += weights[i] * std::arg((z - poles[i]) / (prev - poles[i]));
        const cplx r(qd.log_modulus(z) - target, dv - enclosed * h);
        const cplx dz = r / qd.field(z);
        z -= dz;
        if (std::abs(dz) <= 1e-15 * scale) break;
      }
    }
    if (std::abs(z - start) > 1e-8 * scale)
      throw Error(ErrorKind::NoClosure, "conjugate-potential parametrization does not close");
    return s;
  };
}

}  // namespace strebel
