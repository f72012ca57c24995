#pragma once

#include <utility>

#include "qdgate/core.hpp"

namespace qdgate {

// Gaussian control pulse at constant detuning:
//   Omega(t) = Omega0 exp(-(t/tau)^2),  Delta(t) = Delta,
// truncated to zero outside |t| > t_cut * tau.
struct PulseSchedule {
  double omega0_mev = 1.0;  // peak coupling
  double tau_ps = 10.0;     // Gaussian width
  double delta_mev = 5.0;   // constant detuning
  double t_cut = 5.0;       // window half-width in units of tau

  void validate() const;  // omega0 >= 0, tau > 0, t_cut >= 4
  double window_start() const { return -t_cut * tau_ps; }
  double window_end() const { return t_cut * tau_ps; }

  // (Omega, Delta) in meV at time t; Omega is exactly 0 outside the window.
  std::pair<double, double> evaluate(double t_ps) const;
};

// Square resonant pulse driving the |11> <-> |psi+> transition (Delta = 0).
// A 2pi rotation takes duration 2*pi / (sqrt(2) Omega).
struct DynamicPulse {
  double omega_mev = 0.1;
  double duration_ps = 0.0;  // derived on construction when <= 0

  static DynamicPulse two_pi(double omega_mev);
  std::pair<double, double> evaluate(double t_ps) const;
};

// LHS of the adiabaticity condition
//   (dOmega/dt * Delta - Omega * dDelta/dt) / (sqrt(2) (Delta^2 + 2 Omega^2)^(3/2))
// for the Gaussian schedule (dDelta/dt = 0, dOmega/dt analytic). Dimensionless.
double adiabaticity_lhs(const PulseSchedule& pulse, double t_ps);

// max_t |adiabaticity_lhs| over the pulse window (dense scan + refinement).
double adiabaticity_max(const PulseSchedule& pulse);

struct AdiabaticityBound {
  double bound_ps = 0.0;  // sqrt(2) Omega0 / Delta^2
  bool satisfied = false; // tau >= margin * bound
};

// Upper bound for adiabatic following of the Gaussian schedule; "tau much
// greater than the bound" is operationalized as a configurable margin
// (default 10x). Throws for delta == 0.
AdiabaticityBound adiabaticity_bound_gaussian(const PulseSchedule& pulse,
                                              double margin = 10.0);

// Thrown when the CPHASE calibration cannot bracket the target phase.
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solves for the Gaussian width tau such that the coherent 9-level evolution
// of the pulse accumulates a conditional phase of +-pi (sign set by the
// leading-order shift) to within 1e-4 rad. Bisection on the full simulation,
// starting from the analytic square-pulse estimate.
PulseSchedule calibrate_cphase(double omega0_mev, double delta_mev,
                               double v_f_mev, const SystemParams& params,
                               double t_cut = 5.0, double phase_tol = 1e-4);

}  // namespace qdgate
