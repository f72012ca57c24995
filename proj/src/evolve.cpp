#include "qdgate/evolve.hpp"

#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qdgate {

namespace {

constexpr cplx kImag{0.0, 1.0};

// Tracks the unwrapped phase of a slowly rotating complex signal. Increments
// are skipped while the magnitude is too small to define a phase.
struct PhaseTracker {
  cplx last{0.0, 0.0};
  double phase = 0.0;
  bool primed = false;

  void update(cplx z) {
    if (std::abs(z) < 1e-9) return;
    if (primed) phase -= std::arg(z * std::conj(last));
    last = z;
    primed = true;
  }
};

void record_sample(Trajectory& traj, double t, const DensityMatrix& rho,
                   const Generator& gen, PhaseTracker* trackers) {
  Sample s;
  s.t = t;
  s.purity = purity(rho);
  for (int i = 0; i < kNumLevels; ++i) s.pop[i] = std::real(rho(i, i));
  if (gen.minus_state) {
    const StateVec zm = gen.minus_state(t);
    s.pop_minus = std::real(zm.dot(rho * zm));
  }
  if (trackers) {
    trackers[0].update(rho(k01, k00));
    trackers[1].update(rho(k10, k00));
    trackers[2].update(rho(k11, k00));
    s.phi_01 = trackers[0].phase;
    s.phi_10 = trackers[1].phase;
    s.phi_11 = trackers[2].phase;
  }
  traj.samples.push_back(s);
}

}  // namespace

Trajectory evolve_lindblad(const Generator& gen, const DensityMatrix& rho0,
                           double t0, double t1, const IntegratorOptions& opt) {
  Trajectory traj;
  DensityMatrix rho = rho0;
  Operator h = Operator::Zero();
  std::vector<LindbladTerm> terms;
  terms.reserve(16);

  auto rhs = [&](double t, const DensityMatrix& r, DensityMatrix& dr) {
    gen.hamiltonian(t, h);
    dr = -kImag * (h * r - r * h);
    if (!gen.lindblads) return;
    terms.clear();
    gen.lindblads(t, terms);
    for (const LindbladTerm& term : terms) {
      const double k = term.rate * term.amp * term.amp;
      if (k == 0.0) continue;
      const StateVec w = r * term.from;                  // rho |from>
      const cplx s = term.from.dot(w);                   // <from|rho|from>
      const Eigen::Matrix<cplx, 1, 9> row = term.from.adjoint() * r;
      dr += (k * s) * (term.to * term.to.adjoint());
      dr -= (0.5 * k) * (term.from * row);
      dr -= (0.5 * k) * (w * term.from.adjoint());
    }
  };

  PhaseTracker trackers[3];
  record_sample(traj, t0, rho, gen, trackers);

  traj.stats = integrate_adaptive(
      rhs, rho, t0, t1, opt, [&](double t, DensityMatrix& r) {
        r = 0.5 * (r + r.adjoint()).eval();
        record_sample(traj, t, r, gen, trackers);
      });

  traj.rho_final = rho;
  return traj;
}

Trajectory evolve_schrodinger(const Generator& gen, const StateVec& psi0,
                              double t0, double t1,
                              const IntegratorOptions& opt,
                              StateVec* psi_final) {
  Trajectory traj;
  StateVec psi = psi0;
  Operator h = Operator::Zero();

  auto rhs = [&](double t, const StateVec& p, StateVec& dp) {
    gen.hamiltonian(t, h);
    dp = -kImag * (h * p);
  };

  PhaseTracker trackers[3];
  auto record = [&](double t, const StateVec& p) {
    Sample s;
    s.t = t;
    s.purity = 1.0;
    for (int i = 0; i < kNumLevels; ++i) s.pop[i] = std::norm(p(i));
    if (gen.minus_state) {
      const StateVec zm = gen.minus_state(t);
      s.pop_minus = std::norm(zm.dot(p));
    }
    const cplx a0 = std::conj(p(k00));
    trackers[0].update(p(k01) * a0);
    trackers[1].update(p(k10) * a0);
    trackers[2].update(p(k11) * a0);
    s.phi_01 = trackers[0].phase;
    s.phi_10 = trackers[1].phase;
    s.phi_11 = trackers[2].phase;
    traj.samples.push_back(s);
  };

  record(t0, psi);
  traj.stats = integrate_adaptive(rhs, psi, t0, t1, opt,
                                  [&](double t, StateVec& p) { record(t, p); });

  traj.rho_final = psi * psi.adjoint();
  if (psi_final) *psi_final = psi;
  return traj;
}

Generator make_generator(
    const SystemParams& params,
    std::function<std::pair<double, double>(double)> pulse,
    const DissipatorConfig& dconf) {
  params.validate();

  Generator gen;
  gen.hamiltonian = [params, pulse](double t, Operator& h) {
    const auto [omega, delta] = pulse(t);
    h = build_rwa_hamiltonian(params, omega, delta);
  };

  // Radiative channels are fixed in the bare basis; phonon channels are
  // rebuilt from the instantaneous dressed frame at every evaluation.
  std::vector<LindbladTerm> radiative;
  if (dconf.radiative && params.gamma0_ps_inv > 0.0) {
    auto bare = [](int i) {
      StateVec v = StateVec::Zero();
      v(i) = 1.0;
      return v;
    };
    LindbladTerm h1{bare(k01), bare(k0X), 1.0, params.gamma0_ps_inv,
                    LindbladLabel::radiative_h1};
    LindbladTerm h1p{bare(k10), bare(kX0), 1.0, params.gamma0_ps_inv,
                     LindbladLabel::radiative_h1p};
    LindbladTerm h2{bare(k11), psi_plus_state(), 1.0,
                    std::sqrt(2.0) * params.gamma0_ps_inv,
                    LindbladLabel::radiative_h2};
    radiative = {h1, h1p, h2};
  }

  const bool phonon = dconf.phonon;
  gen.lindblads = [params, pulse, dconf, phonon,
                   radiative](double t, std::vector<LindbladTerm>& out) {
    out.insert(out.end(), radiative.begin(), radiative.end());
    if (!phonon) return;
    const auto [omega, delta] = pulse(t);
    const DressedFrame frame = dressed_frame(omega, delta, params.v_f_mev);
    append_phonon_lindblad_set(frame, dconf.env, dconf.temperature_k, out);
    append_single_exciton_lindblads(omega, delta - params.v_f_mev, dconf.env,
                                    dconf.temperature_k, out);
  };

  gen.minus_state = [pulse](double t) {
    const auto [omega, delta] = pulse(t);
    const double theta = (omega == 0.0 && delta == 0.0)
                             ? 0.0
                             : 0.5 * std::atan2(std::sqrt(2.0) * omega, delta);
    StateVec zm = StateVec::Zero();
    zm(k11) = std::cos(theta);
    StateVec pp = psi_plus_state();
    return (zm - std::sin(theta) * pp).eval();
  };

  return gen;
}

namespace {

// Shared implementation of both gate drivers. `gate_end` is where purity and
// fidelity are measured; the trajectory may continue past it.
GateResult run_gate(const SystemParams& params,
                    std::function<std::pair<double, double>(double)> pulse,
                    const DissipatorConfig& dconf, double t0, double gate_end,
                    double tail_ps, const IntegratorOptions& integ) {
  GateResult result;
  result.gate_end_ps = gate_end;

  // Decoherence-free twin run: reference phases for the unwound target and
  // the conditional phase of the coherent gate.
  DissipatorConfig none;
  none.radiative = false;
  none.phonon = false;
  const Generator ref_gen = make_generator(params, pulse, none);
  StateVec psi_ref;
  Trajectory ref =
      evolve_schrodinger(ref_gen, standard_input_state(), t0, gate_end, integ,
                         &psi_ref);
  result.ref_stats = ref.stats;
  for (const Sample& s : ref.samples)
    result.max_pop_xx = std::max(result.max_pop_xx, s.pop[kXX]);

  const cplx a00 = psi_ref(k00);
  auto rel_phase = [&](int idx) {
    const cplx z = psi_ref(idx) * std::conj(a00);
    return std::abs(z) > 0.0 ? -std::arg(z) : 0.0;
  };
  result.phi_01 = rel_phase(k01);
  result.phi_10 = rel_phase(k10);
  const double phi_11 = rel_phase(k11);
  result.conditional_phase = wrap_phase(phi_11 - result.phi_01 - result.phi_10);

  StateVec target = StateVec::Zero();
  target(k00) = 0.5;
  target(k01) = 0.5 * std::exp(-kImag * result.phi_01);
  target(k10) = 0.5 * std::exp(-kImag * result.phi_10);
  target(k11) = -0.5 * std::exp(-kImag * (result.phi_01 + result.phi_10));

  const Generator gen = make_generator(params, pulse, dconf);
  const DensityMatrix rho0 =
      standard_input_state() * standard_input_state().adjoint();
  result.trajectory = evolve_lindblad(gen, rho0, t0, gate_end, integ);

  const DensityMatrix rho_gate = result.trajectory.rho_final;
  result.rho_final = rho_gate;
  result.purity = purity(rho_gate);
  result.fidelity = fidelity(rho_gate, target);

  if (tail_ps > 0.0) {
    Trajectory tail =
        evolve_lindblad(gen, rho_gate, gate_end, gate_end + tail_ps, integ);
    result.trajectory.samples.insert(result.trajectory.samples.end(),
                                     tail.samples.begin() + 1,
                                     tail.samples.end());
    result.trajectory.rho_final = tail.rho_final;
    result.trajectory.stats.accepted += tail.stats.accepted;
    result.trajectory.stats.rejected += tail.stats.rejected;
    result.trajectory.stats.rhs_evals += tail.stats.rhs_evals;
  }
  return result;
}

}  // namespace

GateResult run_adiabatic_gate(const PulseSchedule& pulse,
                              const SystemParams& params,
                              const DissipatorConfig& dconf,
                              const EvolveOptions& opt) {
  pulse.validate();
  auto pulse_fn = [pulse](double t) { return pulse.evaluate(t); };
  return run_gate(params, pulse_fn, dconf, pulse.window_start(),
                  pulse.window_end(), opt.tail_ps, opt.integ);
}

GateResult run_dynamic_gate(const DynamicPulse& pulse,
                            const SystemParams& params,
                            const DissipatorConfig& dconf,
                            const EvolveOptions& opt) {
  const DynamicPulse p =
      pulse.duration_ps > 0.0 ? pulse : DynamicPulse::two_pi(pulse.omega_mev);
  auto pulse_fn = [p](double t) { return p.evaluate(t); };
  return run_gate(params, pulse_fn, dconf, 0.0, p.duration_ps, opt.tail_ps,
                  opt.integ);
}

Trajectory lz_leakage_trace(const PulseSchedule& pulse,
                            const SystemParams& params,
                            const EvolveOptions& opt) {
  pulse.validate();
  DissipatorConfig none;
  none.radiative = false;
  none.phonon = false;
  auto pulse_fn = [pulse](double t) { return pulse.evaluate(t); };
  const Generator gen = make_generator(params, pulse_fn, none);

  StateVec psi0 = StateVec::Zero();
  psi0(k11) = 1.0;
  return evolve_schrodinger(gen, psi0, pulse.window_start(),
                            pulse.window_end(), opt.integ);
}

SweepResult run_sweep(const std::vector<SweepAxis>& axes,
                      const std::vector<std::string>& observable_names,
                      const CellFn& cell_fn, int jobs) {
  if (axes.empty())
    throw std::invalid_argument("run_sweep: at least one axis required");
  for (const SweepAxis& ax : axes)
    if (ax.values.empty())
      throw std::invalid_argument("run_sweep: axis '" + ax.name +
                                  "' has no values");

  SweepResult result;
  for (const SweepAxis& ax : axes) result.axis_names.push_back(ax.name);
  result.observable_names = observable_names;

  std::size_t total = 1;
  for (const SweepAxis& ax : axes) total *= ax.values.size();
  result.cells.resize(total);

  auto cell_values = [&](std::size_t flat) {
    std::vector<double> vals(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      const std::size_t n = axes[k].values.size();
      vals[k] = axes[k].values[flat % n];
      flat /= n;
    }
    return vals;
  };

  auto run_cell = [&](std::size_t i) {
    SweepCell& cell = result.cells[i];
    cell.axis_values = cell_values(i);
    cell.observables.assign(observable_names.size(),
                            std::numeric_limits<double>::quiet_NaN());
    try {
      cell_fn(cell.axis_values, cell.observables);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  if (jobs > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (long long i = 0; i < static_cast<long long>(total); ++i)
      run_cell(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
#endif
  } else {
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
  }
  return result;
}

}  // namespace qdgate
