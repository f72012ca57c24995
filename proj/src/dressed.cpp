#include "qdgate/dressed.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "qdgate/quadrature.hpp"

namespace qdgate {

double wrap_phase(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(phi + std::numbers::pi, two_pi);
  if (y <= 0.0) y += two_pi;
  return y - std::numbers::pi;
}

double mixing_angle(double omega_mev, double delta_mev) {
  if (omega_mev == 0.0 && delta_mev == 0.0)
    throw std::invalid_argument("mixing_angle: undefined for Omega = Delta = 0");
  return 0.5 * std::atan2(std::sqrt(2.0) * omega_mev, delta_mev);
}

DressedFrame dressed_frame(double omega_mev, double delta_mev,
                           double v_f_mev) {
  const double w = units::mev_to_ps_inv(omega_mev);
  const double d = units::mev_to_ps_inv(delta_mev);
  const double vf = units::mev_to_ps_inv(v_f_mev);

  DressedFrame f;
  f.theta = (w == 0.0 && d == 0.0) ? 0.0 : 0.5 * std::atan2(std::sqrt(2.0) * w, d);
  f.lambda_cap = std::sqrt(d * d + 2.0 * w * w);
  f.lambda_minus = 0.5 * (d - f.lambda_cap);
  f.lambda_plus = 0.5 * (d + f.lambda_cap);
  f.lambda_psi_minus = d - 2.0 * vf;
  f.upsilon = 2.0 * vf - f.lambda_minus;
  f.xi = f.lambda_plus - 2.0 * vf;
  return f;
}

double radiative_decay_rate(double theta, double gamma0_ps_inv) {
  const double s = std::sin(theta);
  return std::sqrt(2.0) * gamma0_ps_inv * s * s;
}

EnergyShiftEstimate energy_shift_estimate(double omega_mev, double delta_mev,
                                          double v_f_mev) {
  if (delta_mev == 0.0 || delta_mev == v_f_mev)
    throw std::invalid_argument(
        "energy_shift_estimate: singular at Delta = 0 or Delta = V_F");
  if (std::abs(delta_mev) < 3.0 * std::abs(omega_mev))
    std::cerr << "warning: energy_shift_estimate used outside the"
              << " perturbative regime (Delta < 3 Omega)\n";

  EnergyShiftEstimate est;
  est.delta_e_mev = -omega_mev * omega_mev * v_f_mev /
                    (2.0 * delta_mev * (delta_mev - v_f_mev));
  const double de_ps = std::abs(units::mev_to_ps_inv(est.delta_e_mev));
  est.t_gate_square_ps = de_ps > 0.0
                             ? std::numbers::pi / de_ps
                             : std::numeric_limits<double>::infinity();
  return est;
}

PhaseLedger phase_integrals(const PulseSchedule& pulse, double v_f_mev,
                            double t0_ps, double t1_ps) {
  pulse.validate();
  const double w0 = units::mev_to_ps_inv(pulse.omega0_mev);
  const double d = units::mev_to_ps_inv(pulse.delta_mev);
  const double dp = d - units::mev_to_ps_inv(v_f_mev);
  const double tau = pulse.tau_ps;

  auto omega_at = [&](double t) { return w0 * std::exp(-(t / tau) * (t / tau)); };
  if (w0 > 0.0 &&
      (omega_at(t0_ps) > 1e-6 * w0 || omega_at(t1_ps) > 1e-6 * w0))
    throw std::invalid_argument(
        "phase_integrals: window does not cover the pulse support");

  auto e_zeta_minus = [&](double t) {
    const double w = omega_at(t);
    return 0.5 * (d - std::sqrt(d * d + 2.0 * w * w));
  };
  auto e_dressed_h1 = [&](double t) {
    const double w = omega_at(t);
    return 0.5 * (dp - std::sqrt(dp * dp + w * w));
  };

  PhaseLedger ledger;
  ledger.phi_11 = integrate_gk(e_zeta_minus, t0_ps, t1_ps, 1e-10);
  ledger.phi_01 = integrate_gk(e_dressed_h1, t0_ps, t1_ps, 1e-10);
  ledger.phi_10 = ledger.phi_01;
  ledger.conditional_phase =
      wrap_phase(ledger.phi_11 - ledger.phi_01 - ledger.phi_10);
  return ledger;
}

}  // namespace qdgate
