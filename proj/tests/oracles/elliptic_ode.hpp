#pragma once

// Independent reference for the Jacobi elliptic functions: integrate their
// defining ODEs with a high-order adaptive Runge-Kutta scheme.

#include <array>
#include <boost/numeric/odeint.hpp>

namespace oracle {

struct EllipticValues {
  double sn;
  double cn;
  double dn;
};

// sn' = cn dn, cn' = -sn dn, dn' = -m sn cn with (sn, cn, dn)(0) = (0, 1, 1).
inline EllipticValues elliptic_by_ode(double u, double m) {
  using State = std::array<double, 3>;
  namespace odeint = boost::numeric::odeint;
  State y{0.0, 1.0, 1.0};
  if (u == 0.0) return {0.0, 1.0, 1.0};
  auto rhs = [m](const State& s, State& d, double) {
    d[0] = s[1] * s[2];
    d[1] = -s[0] * s[2];
    d[2] = -m * s[0] * s[1];
  };
  auto stepper = odeint::make_controlled(1e-15, 1e-15, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_adaptive(stepper, rhs, y, 0.0, u, u / 1000.0);
  return {y[0], y[1], y[2]};
}

// sn from the second-order form y'' = -(1+m) y + 2 m y^3, y(0) = 0, y'(0) = 1.
inline double sn_by_second_order_ode(double u, double m) {
  using State = std::array<double, 2>;
  namespace odeint = boost::numeric::odeint;
  State y{0.0, 1.0};
  if (u == 0.0) return 0.0;
  auto rhs = [m](const State& s, State& d, double) {
    d[0] = s[1];
    d[1] = -(1.0 + m) * s[0] + 2.0 * m * s[0] * s[0] * s[0];
  };
  auto stepper = odeint::make_controlled(1e-15, 1e-15, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_adaptive(stepper, rhs, y, 0.0, u, u / 1000.0);
  return y[0];
}

}  // namespace oracle
