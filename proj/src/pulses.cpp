#include "qdgate/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdgate/dressed.hpp"
#include "qdgate/evolve.hpp"

namespace qdgate {

void PulseSchedule::validate() const {
  if (omega0_mev < 0.0)
    throw std::invalid_argument("PulseSchedule: omega0 must be >= 0");
  if (tau_ps <= 0.0)
    throw std::invalid_argument("PulseSchedule: tau must be > 0");
  if (t_cut < 4.0)
    throw std::invalid_argument("PulseSchedule: t_cut must be >= 4");
}

std::pair<double, double> PulseSchedule::evaluate(double t_ps) const {
  if (std::abs(t_ps) > t_cut * tau_ps) return {0.0, delta_mev};
  const double x = t_ps / tau_ps;
  return {omega0_mev * std::exp(-x * x), delta_mev};
}

DynamicPulse DynamicPulse::two_pi(double omega_mev) {
  if (omega_mev <= 0.0)
    throw std::invalid_argument("DynamicPulse: omega must be > 0");
  DynamicPulse p;
  p.omega_mev = omega_mev;
  const double w = units::mev_to_ps_inv(omega_mev);
  p.duration_ps = 2.0 * std::numbers::pi / (std::sqrt(2.0) * w);
  return p;
}

std::pair<double, double> DynamicPulse::evaluate(double t_ps) const {
  (void)t_ps;  // square pulse held constant over the simulated window
  return {omega_mev, 0.0};
}

double adiabaticity_lhs(const PulseSchedule& pulse, double t_ps) {
  const auto [omega_mev, delta_mev] = pulse.evaluate(t_ps);
  const double w = units::mev_to_ps_inv(omega_mev);
  const double d = units::mev_to_ps_inv(delta_mev);
  const double wdot = -2.0 * t_ps * w / (pulse.tau_ps * pulse.tau_ps);
  const double denom =
      std::sqrt(2.0) * std::pow(d * d + 2.0 * w * w, 1.5);
  if (denom == 0.0) return 0.0;
  return wdot * d / denom;
}

double adiabaticity_max(const PulseSchedule& pulse) {
  // |lhs| is smooth with a single maximum per half-window; a dense scan with
  // one refinement pass is plenty.
  double best = 0.0, t_best = 0.0;
  const int n = 2000;
  const double t0 = pulse.window_start(), t1 = pulse.window_end();
  for (int i = 0; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * i / n;
    const double v = std::abs(adiabaticity_lhs(pulse, t));
    if (v > best) {
      best = v;
      t_best = t;
    }
  }
  const double h = (t1 - t0) / n;
  for (int i = -50; i <= 50; ++i) {
    const double t = t_best + h * i / 50.0;
    best = std::max(best, std::abs(adiabaticity_lhs(pulse, t)));
  }
  return best;
}

AdiabaticityBound adiabaticity_bound_gaussian(const PulseSchedule& pulse,
                                              double margin) {
  if (pulse.delta_mev == 0.0)
    throw std::invalid_argument(
        "adiabaticity_bound_gaussian: undefined for Delta = 0");
  const double w0 = units::mev_to_ps_inv(pulse.omega0_mev);
  const double d = units::mev_to_ps_inv(pulse.delta_mev);
  AdiabaticityBound b;
  b.bound_ps = std::sqrt(2.0) * w0 / (d * d);
  b.satisfied = pulse.tau_ps >= margin * b.bound_ps;
  return b;
}

namespace {

// Unwrapped conditional phase of the coherent 9-level gate for a given tau.
double coherent_conditional_phase(const PulseSchedule& pulse,
                                  const SystemParams& params) {
  DissipatorConfig none;
  none.radiative = false;
  none.phonon = false;
  auto pulse_fn = [pulse](double t) { return pulse.evaluate(t); };
  const Generator gen = make_generator(params, pulse_fn, none);

  IntegratorOptions opt;
  opt.tol = 1e-10;
  Trajectory traj =
      evolve_schrodinger(gen, standard_input_state(), pulse.window_start(),
                         pulse.window_end(), opt);
  const Sample& last = traj.back();
  return last.phi_11 - last.phi_01 - last.phi_10;
}

}  // namespace

PulseSchedule calibrate_cphase(double omega0_mev, double delta_mev,
                               double v_f_mev, const SystemParams& params,
                               double t_cut, double phase_tol) {
  if (omega0_mev <= 0.0)
    throw std::invalid_argument("calibrate_cphase: omega0 must be > 0");
  if (v_f_mev == 0.0)
    throw CalibrationError(
        "calibrate_cphase: V_F = 0, no conditional phase accumulates");

  // Leading-order estimate fixes the starting width; the Gaussian profile
  // rescales the square-pulse time by sqrt(pi/2) through
  // int Omega^2(t) dt = Omega0^2 tau sqrt(pi/2).
  const EnergyShiftEstimate est =
      energy_shift_estimate(omega0_mev, delta_mev, v_f_mev);
  const double tau0 =
      est.t_gate_square_ps * std::sqrt(2.0 / std::numbers::pi);

  SystemParams p = params;
  p.v_f_mev = v_f_mev;

  PulseSchedule pulse;
  pulse.omega0_mev = omega0_mev;
  pulse.delta_mev = delta_mev;
  pulse.t_cut = t_cut;

  auto conditional = [&](double tau) {
    pulse.tau_ps = tau;
    return coherent_conditional_phase(pulse, p);
  };

  // The accumulated phase grows linearly with tau from zero, so its sign is
  // fixed across the bracket; aim for +-pi accordingly.
  double lo = 0.2 * tau0, hi = 5.0 * tau0;
  const double c_lo = conditional(lo);
  const double target = std::copysign(std::numbers::pi, c_lo);
  auto residual = [&](double tau) { return conditional(tau) - target; };

  double f_lo = c_lo - target, f_hi = residual(hi);
  if (f_lo * f_hi > 0.0)
    throw CalibrationError(
        "calibrate_cphase: no sign change in [0.2, 5] x tau0 bracket");

  double mid = 0.5 * (lo + hi), f_mid = 0.0;
  for (int iter = 0; iter < 80; ++iter) {
    mid = 0.5 * (lo + hi);
    f_mid = residual(mid);
    if (std::abs(f_mid) <= phase_tol) break;
    if (f_lo * f_mid <= 0.0) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  if (std::abs(f_mid) > phase_tol)
    throw CalibrationError("calibrate_cphase: bisection did not converge");

  pulse.tau_ps = mid;
  return pulse;
}

}  // namespace qdgate
