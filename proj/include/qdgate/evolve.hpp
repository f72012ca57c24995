#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qdgate/core.hpp"
#include "qdgate/dressed.hpp"
#include "qdgate/integrate.hpp"
#include "qdgate/phonons.hpp"
#include "qdgate/pulses.hpp"

namespace qdgate {

// Which dissipation channels enter the master equation.
struct DissipatorConfig {
  bool radiative = true;
  bool phonon = false;
  PhononEnvironment env;       // used when phonon == true
  double temperature_k = 0.0;

  bool coherent_only() const { return !radiative && !phonon; }
};

struct Sample {
  double t = 0.0;
  double purity = 1.0;
  std::array<double, 9> pop{};  // bare-state populations
  double pop_minus = 0.0;       // instantaneous dressed zeta- population
  double phi_01 = 0.0, phi_10 = 0.0, phi_11 = 0.0;  // unwrapped phases
};

struct Trajectory {
  std::vector<Sample> samples;   // one per accepted step
  DensityMatrix rho_final = DensityMatrix::Zero();
  StepStats stats;

  const Sample& back() const { return samples.back(); }
};

// Time-dependent sources for the master equation, all in the bare basis and
// ps^-1. `lindblads` appends the active terms at time t into a reusable
// buffer; `minus_state` supplies the instantaneous zeta- vector for the
// trajectory observable (optional).
struct Generator {
  std::function<void(double t, Operator& h)> hamiltonian;
  std::function<void(double t, std::vector<LindbladTerm>& out)> lindblads;
  std::function<StateVec(double t)> minus_state;
};

// Integrates d(rho)/dt = -i [H(t), rho] + sum_k rate_k D[L_k(t)] rho with the
// adaptive RK45 stepper; rho is re-symmetrized after every accepted step.
Trajectory evolve_lindblad(const Generator& gen, const DensityMatrix& rho0,
                           double t0, double t1,
                           const IntegratorOptions& opt = {});

// Pure-state Schroedinger evolution under the same Hamiltonian source; this
// is the decoherence-free reference path.
Trajectory evolve_schrodinger(const Generator& gen, const StateVec& psi0,
                              double t0, double t1,
                              const IntegratorOptions& opt = {},
                              StateVec* psi_final = nullptr);

struct GateResult {
  DensityMatrix rho_final = DensityMatrix::Zero();
  double purity = 0.0;
  double fidelity = 0.0;
  double conditional_phase = 0.0;  // wrapped into (-pi, pi]
  double phi_01 = 0.0, phi_10 = 0.0;  // reference phases used for unwinding
  double gate_end_ps = 0.0;
  double max_pop_xx = 0.0;  // over the coherent reference run
  Trajectory trajectory;    // dissipative run (may extend past gate_end_ps)
  StepStats ref_stats;
};

struct EvolveOptions {
  IntegratorOptions integ;
  double tail_ps = 0.0;  // extra simulated time past the gate end
};

// Builds H(t) and the configured dissipators for a pulse given by
// (Omega, Delta)(t) in meV.
Generator make_generator(const SystemParams& params,
                         std::function<std::pair<double, double>(double)> pulse,
                         const DissipatorConfig& dconf);

// Adiabatic CPHASE gate: evolves the standard input state through the pulse
// window with the configured dissipators. Fidelity is measured against the
// phase-unwound target built from a decoherence-free twin run.
GateResult run_adiabatic_gate(const PulseSchedule& pulse,
                              const SystemParams& params,
                              const DissipatorConfig& dconf,
                              const EvolveOptions& opt = {});

// Dynamic CPHASE gate: square resonant 2pi pulse on |11> <-> |psi+>.
GateResult run_dynamic_gate(const DynamicPulse& pulse,
                            const SystemParams& params,
                            const DissipatorConfig& dconf,
                            const EvolveOptions& opt = {});

// Coherent evolution of |11> through the pulse, projected at each step onto
// the instantaneous approximate eigenstate zeta-(Theta(t)).
Trajectory lz_leakage_trace(const PulseSchedule& pulse,
                            const SystemParams& params,
                            const EvolveOptions& opt = {});

// ---------------------------------------------------------------------------
// Parameter sweeps. Cells are independent; with jobs > 1 they are dispatched
// to an OpenMP worker pool. jobs <= 1 runs the serial reference path. Output
// ordering is by grid index either way.

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

struct SweepCell {
  std::vector<double> axis_values;
  std::vector<double> observables;  // NaN-filled on failure
  std::string error;                // empty on success
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<std::string> observable_names;
  std::vector<SweepCell> cells;  // row-major, first axis slowest
};

using CellFn =
    std::function<void(const std::vector<double>& axis_values,
                       std::vector<double>& observables)>;

SweepResult run_sweep(const std::vector<SweepAxis>& axes,
                      const std::vector<std::string>& observable_names,
                      const CellFn& cell_fn, int jobs = 1);

}  // namespace qdgate
