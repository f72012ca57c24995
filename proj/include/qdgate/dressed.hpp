#pragma once

#include "qdgate/core.hpp"
#include "qdgate/pulses.hpp"

namespace qdgate {

// Snapshot of the dressed-frame analysis at one instant. All frequencies in
// ps^-1. Upsilon and Xi keep the sign of the raw formulas; the phonon module
// applies the conjugate-operator rule for negative values.
struct DressedFrame {
  double theta = 0.0;            // mixing angle, rad
  double lambda_minus = 0.0;     // energy of zeta-
  double lambda_plus = 0.0;      // energy of zeta+
  double lambda_psi_minus = 0.0; // energy Delta - 2 V_F of psi-
  double lambda_cap = 0.0;       // Lambda = sqrt(Delta^2 + 2 Omega^2)
  double upsilon = 0.0;          // 2 V_F - lambda_minus
  double xi = 0.0;               // lambda_plus - 2 V_F
};

// Accumulated single-state phases and the CPHASE combination
// phi_00 - phi_01 - phi_10 + phi_11 with phi_00 = 0.
struct PhaseLedger {
  double phi_11 = 0.0;
  double phi_01 = 0.0;
  double phi_10 = 0.0;
  double conditional_phase = 0.0;  // wrapped into (-pi, pi]
};

// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

// Theta = (1/2) atan2(sqrt(2) Omega, Delta), in [0, pi/2] for Omega >= 0.
// Throws when both arguments vanish.
double mixing_angle(double omega_mev, double delta_mev);

DressedFrame dressed_frame(double omega_mev, double delta_mev, double v_f_mev);

// Gamma_minus = sqrt(2) Gamma_0 sin^2(Theta): total spontaneous-emission rate
// out of the followed dressed state.
double radiative_decay_rate(double theta, double gamma0_ps_inv);

// Leading-order conditional energy shift
//   deltaE = -Omega^2 V_F / (2 Delta (Delta - V_F))   [meV]
// and the square-pulse gate-time estimate pi/|deltaE| [ps]. Throws for
// Delta in {0, V_F}; warns when Delta < 3 Omega.
struct EnergyShiftEstimate {
  double delta_e_mev = 0.0;
  double t_gate_square_ps = 0.0;
};
EnergyShiftEstimate energy_shift_estimate(double omega_mev, double delta_mev,
                                          double v_f_mev);

// Quadrature of the dressed energies over [t0, t1]:
//   phi_11    = int dt (Delta - sqrt(Delta^2 + 2 Omega^2(t))) / 2
//   phi_01,10 = int dt (Delta' - sqrt(Delta'^2 + Omega^2(t))) / 2,  Delta' = Delta - V_F.
// Throws when the window does not cover the pulse support.
PhaseLedger phase_integrals(const PulseSchedule& pulse, double v_f_mev,
                            double t0_ps, double t1_ps);

inline PhaseLedger phase_integrals(const PulseSchedule& pulse, double v_f_mev) {
  return phase_integrals(pulse, v_f_mev, pulse.window_start(),
                         pulse.window_end());
}

}  // namespace qdgate
