#pragma once

// Unit-speed direction-field integration shared by the tracers.

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "strebel/qd_core.hpp"

namespace strebel::detail {

using State = std::array<double, 2>;

/// dz/ds = rotation * conj(F) / |F|. rotation = +-i gives level curves of u,
/// rotation = +-1 gives gradient lines.
struct UnitField {
  const QuadDifferential* qd;
  cplx rotation;

  cplx direction(cplx z) const {
    const cplx f = qd->field(z);
    return rotation * std::conj(f) / std::abs(f);
  }
  void operator()(const State& x, State& dxdt, double /*s*/) const {
    const cplx d = direction({x[0], x[1]});
    dxdt = {d.real(), d.imag()};
  }
};

class Integrator {
 public:
  Integrator(const QuadDifferential& qd, cplx rotation, double abs_tol, double rel_tol, double max_step)
      : field_{&qd, rotation},
        controlled_(boost::numeric::odeint::make_controlled(
            abs_tol, rel_tol, max_step, boost::numeric::odeint::runge_kutta_cash_karp54<State>())) {}

  const UnitField& field() const { return field_; }

  /// One adaptive step. On success z advances by arc length `taken` and h
  /// holds the next suggestion; on failure h shrinks and z is untouched.
  bool try_step(cplx& z, double& h, double& taken) {
    State x{z.real(), z.imag()};
    double s = 0.0;
    const double proposed = h;
    const auto res = controlled_.try_step(field_, x, s, h);
    if (res != boost::numeric::odeint::success) return false;
    taken = proposed;
    z = {x[0], x[1]};
    return true;
  }

  cplx fixed_step(cplx z, double h) {
    State x{z.real(), z.imag()};
    plain_.do_step(field_, x, 0.0, h);
    return {x[0], x[1]};
  }

 private:
  UnitField field_;
  boost::numeric::odeint::controlled_runge_kutta<boost::numeric::odeint::runge_kutta_cash_karp54<State>>
      controlled_;
  boost::numeric::odeint::runge_kutta_cash_karp54<State> plain_;
};

/// Length scale used for scale-relative tolerances around a point.
inline double length_scale(const QuadDifferential& qd, cplx z) {
  return std::max(qd.diameter(), std::abs(z - qd.centroid()));
}

inline double total_abs_weight(const QuadDifferential& qd) {
  double s = 0.0;
  for (double w : qd.weights()) s += std::abs(w);
  return s;
}

}  // namespace strebel::detail
