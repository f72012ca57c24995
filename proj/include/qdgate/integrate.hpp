#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace qdgate {

// Thrown when the adaptive step size underflows (stiffness / bad input).
struct StiffnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegratorOptions {
  double tol = 1e-9;        // applied as both absolute and relative tolerance
  double dt_init = 1e-2;    // ps
  double dt_min = 1e-8;     // ps; underflow raises StiffnessError
  double dt_max = 0.0;      // ps; 0 = unlimited
  double fixed_dt = 0.0;    // > 0 switches to fixed-step classic RK4
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

// Dormand-Prince 5(4) with elementwise error control, or fixed-step RK4 when
// opt.fixed_dt > 0. `State` must support Eigen-style arithmetic.
//
//   rhs(t, y, dydt)       evaluates the derivative
//   on_accept(t, y)       called after every accepted step (may modify y,
//                         e.g. re-symmetrization of a density matrix)
template <class State, class Rhs, class OnAccept>
StepStats integrate_adaptive(Rhs&& rhs, State& y, double t0, double t1,
                             const IntegratorOptions& opt,
                             OnAccept&& on_accept) {
  StepStats stats;
  if (t1 <= t0) return stats;

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
  State ytmp = y, y5 = y;

  double t = t0;

  if (opt.fixed_dt > 0.0) {
    const double dt_nominal = opt.fixed_dt;
    while (t < t1 - 1e-14 * (t1 - t0)) {
      const double dt = std::min(dt_nominal, t1 - t);
      rhs(t, y, k1);
      ytmp = y + (0.5 * dt) * k1;
      rhs(t + 0.5 * dt, ytmp, k2);
      ytmp = y + (0.5 * dt) * k2;
      rhs(t + 0.5 * dt, ytmp, k3);
      ytmp = y + dt * k3;
      rhs(t + dt, ytmp, k4);
      y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += dt;
      stats.accepted += 1;
      stats.rhs_evals += 4;
      on_accept(t, y);
    }
    return stats;
  }

  // Dormand-Prince tableau.
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                   e3 = 500.0 / 1113 - 7571.0 / 16695,
                   e4 = 125.0 / 192 - 393.0 / 640,
                   e5 = -2187.0 / 6784 + 92097.0 / 339200,
                   e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  double dt = std::min(opt.dt_init, t1 - t0);
  if (opt.dt_max > 0.0) dt = std::min(dt, opt.dt_max);
  rhs(t, y, k1);
  stats.rhs_evals += 1;

  while (t < t1 - 1e-14 * (t1 - t0)) {
    dt = std::min(dt, t1 - t);

    ytmp = y + dt * (a21 * k1);
    rhs(t + dt / 5.0, ytmp, k2);
    ytmp = y + dt * (a31 * k1 + a32 * k2);
    rhs(t + 0.3 * dt, ytmp, k3);
    ytmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + 0.8 * dt, ytmp, k4);
    ytmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + (8.0 / 9.0) * dt, ytmp, k5);
    ytmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + dt, ytmp, k6);
    y5 = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + dt, y5, k7);
    stats.rhs_evals += 6;

    // Elementwise local error against atol + rtol * |y|.
    const auto err_mat =
        (dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7))
            .cwiseAbs()
            .eval();
    const auto scale =
        (y.cwiseAbs().cwiseMax(y5.cwiseAbs()) * opt.tol).array() + opt.tol;
    const double err = (err_mat.array() / scale).maxCoeff();

    if (err <= 1.0) {
      t += dt;
      y = y5;
      k1 = k7;  // FSAL
      stats.accepted += 1;
      on_accept(t, y);
    } else {
      stats.rejected += 1;
    }

    double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    dt *= fac;
    if (opt.dt_max > 0.0) dt = std::min(dt, opt.dt_max);
    if (dt < opt.dt_min)
      throw StiffnessError("integrate_adaptive: step size underflow at t = " +
                           std::to_string(t) + " ps (dt = " +
                           std::to_string(dt) + " ps, err = " +
                           std::to_string(err) + ")");
  }
  return stats;
}

}  // namespace qdgate
