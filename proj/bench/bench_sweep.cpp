// Compares the serial sweep path against the OpenMP worker pool on a grid
// of Landau-Zener traces, and verifies that both produce identical tables.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdgate/evolve.hpp"
#include "qdgate/units.hpp"

using namespace qdgate;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main() {
  SystemParams params;
  params.v_f_mev = 0.85;
  params.v_xx_mev = 5.0;
  params.gamma0_ps_inv = 0.0;

  std::vector<SweepAxis> axes = {
      {"delta_ps_inv", {0.6, 0.8, 1.0, 1.2, 1.4, 1.6}},
      {"omega0_ps_inv", {0.4, 0.7, 1.0, 1.3, 1.6, 2.0}},
  };

  const CellFn cell = [&](const std::vector<double>& v,
                          std::vector<double>& obs) {
    PulseSchedule pulse;
    pulse.delta_mev = units::ps_inv_to_mev(v[0]);
    pulse.omega0_mev = units::ps_inv_to_mev(v[1]);
    pulse.tau_ps = 3.0;
    pulse.t_cut = 5.0;
    EvolveOptions opt;
    opt.integ.tol = 1e-9;
    Trajectory traj = lz_leakage_trace(pulse, params, opt);
    obs = {1.0 - traj.back().pop_minus};
  };

  int max_jobs = 2;
#ifdef _OPENMP
  max_jobs = omp_get_max_threads();
#endif

  std::printf("LZ leakage sweep, %zu cells\n",
              axes[0].values.size() * axes[1].values.size());

  double t0 = now_ms();
  SweepResult serial = run_sweep(axes, {"leakage"}, cell, 1);
  const double serial_ms = now_ms() - t0;
  std::printf("  serial reference: %8.1f ms\n", serial_ms);

  for (int jobs = 2; jobs <= max_jobs; jobs *= 2) {
    t0 = now_ms();
    SweepResult par = run_sweep(axes, {"leakage"}, cell, jobs);
    const double par_ms = now_ms() - t0;

    double max_dev = 0.0;
    for (std::size_t i = 0; i < par.cells.size(); ++i)
      max_dev = std::max(max_dev,
                         std::abs(par.cells[i].observables[0] -
                                  serial.cells[i].observables[0]));
    std::printf("  %d jobs:          %8.1f ms (speedup %.2fx, max dev %.2e)\n",
                jobs, par_ms, serial_ms / par_ms, max_dev);
    if (max_dev != 0.0) {
      std::printf("FAILED: parallel sweep deviates from serial reference\n");
      return 1;
    }
  }
  std::printf("parallel results identical to serial reference\n");
  return 0;
}
