// Command-line front end: reproduces the simulator's headline analyses as
// CSV (and optional SVG) files from a single JSON config.
//
//   qdgate <spectra|calibrate|gate|sweep|lz> --config cfg.json [options]
//
// Exit codes: 0 success, 2 config/usage error, 3 numerical failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdgate/config.hpp"
#include "qdgate/csv.hpp"
#include "qdgate/svg.hpp"

namespace fs = std::filesystem;
using namespace qdgate;

namespace {

struct CliOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int jobs = 1;
  std::string formats;
  bool stamp = false;
};

RunConfig resolve_config(const CliOptions& cli) {
  RunConfig cfg = load_config(cli.config_path, cli.overrides);
  if (!cli.out_dir.empty()) cfg.output.dir = cli.out_dir;
  if (!cli.formats.empty()) {
    cfg.output.formats.clear();
    std::stringstream ss(cli.formats);
    std::string f;
    while (std::getline(ss, f, ',')) cfg.output.formats.push_back(f);
    for (const auto& f2 : cfg.output.formats)
      if (f2 != "csv" && f2 != "svg")
        throw ConfigError("--format entries must be csv|svg");
  }
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

CsvWriter make_csv(const RunConfig& cfg, const CliOptions& cli) {
  CsvWriter csv;
  csv.comment(version_string());
  csv.comment("config " + cfg.canonical_json());
  if (cli.stamp) {
    const auto now = std::chrono::system_clock::now();
    csv.comment("generated " +
                std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                                   now.time_since_epoch())
                                   .count()));
  }
  return csv;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.output.dir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------- spectra --

int cmd_spectra(const CliOptions& cli) {
  const RunConfig cfg = resolve_config(cli);
  const fs::path dir = prepare_out_dir(cfg);
  const MaterialParams& mat = cfg.material;
  const DotGeometry geo = cfg.geometry();
  const SpectraConfig& sp = cfg.spectra;

  std::vector<double> omega(sp.count);
  std::vector<std::array<double, 4>> rows(sp.count);
  for (int i = 0; i < sp.count; ++i) {
    omega[i] = sp.omega_min_ps_inv +
               (sp.omega_max_ps_inv - sp.omega_min_ps_inv) * i /
                   (sp.count - 1);
    rows[i] = {
        spectral_density_deformation(omega[i], Branch::plus, mat, geo),
        spectral_density_deformation(omega[i], Branch::minus, mat, geo),
        spectral_density_piezo(omega[i], Branch::plus, mat, geo),
        spectral_density_piezo(omega[i], Branch::minus, mat, geo)};
  }
  if (sp.normalize == "peak") {
    double peak_def = 0.0, peak_pz = 0.0;
    for (const auto& r : rows) {
      peak_def = std::max({peak_def, r[0], r[1]});
      peak_pz = std::max({peak_pz, r[2], r[3]});
    }
    for (auto& r : rows) {
      if (peak_def > 0) r[0] /= peak_def, r[1] /= peak_def;
      if (peak_pz > 0) r[2] /= peak_pz, r[3] /= peak_pz;
    }
  }

  CsvWriter csv = make_csv(cfg, cli);
  csv.header({"omega_ps_inv", "J_plus_def", "J_minus_def", "J_plus_piezo",
              "J_minus_piezo"});
  for (int i = 0; i < sp.count; ++i)
    csv.row_numeric({omega[i], rows[i][0], rows[i][1], rows[i][2], rows[i][3]});
  csv.write_file((dir / "spectra.csv").string());

  if (cfg.output.wants("svg")) {
    std::vector<SvgSeries> series(4);
    const char* names[4] = {"J+ def", "J- def", "J+ piezo", "J- piezo"};
    for (int k = 0; k < 4; ++k) {
      series[k].label = names[k];
      series[k].x = omega;
      for (const auto& r : rows) series[k].y.push_back(r[k]);
    }
    write_text(dir / "spectra.svg",
               svg_line_chart(series, "omega (1/ps)", "J (1/ps)",
                              "phonon spectral densities"));
  }
  std::cout << "wrote " << (dir / "spectra.csv").string() << "\n";
  return 0;
}

void apply_axis(RunConfig& c, const std::string& path, double v) {
  if (path == "pulse.delta_mev") c.pulse.delta_mev = v;
  else if (path == "pulse.omega0_mev") c.pulse.omega0_mev = v;
  else if (path == "pulse.tau_ps") { c.pulse.tau_ps = v; c.pulse.calibrate = false; }
  else if (path == "system.v_f_mev") c.system.v_f_mev = v;
  else if (path == "system.v_xx_mev") c.system.v_xx_mev = v;
  else if (path == "system.gamma0_ps_inv") c.system.gamma0_ps_inv = v;
  else if (path == "system.temperature_k") c.system.temperature_k = v;
  else throw ConfigError("sweep: unsupported axis path " + path);
}

// -------------------------------------------------------------- calibrate --

int cmd_calibrate(const CliOptions& cli) {
  const RunConfig cfg = resolve_config(cli);
  const fs::path dir = prepare_out_dir(cfg);

  // Calibrate on the sweep grid when one is configured, otherwise on the
  // single configured pulse.
  std::vector<AxisSpec> axes = cfg.sweep.axes;
  if (axes.empty())
    axes.push_back({"pulse.delta_mev", {cfg.pulse.delta_mev}});

  std::vector<SweepAxis> sweep_axes;
  for (const AxisSpec& a : axes) sweep_axes.push_back({a.path, a.values});

  const CellFn cell = [&](const std::vector<double>& vals,
                          std::vector<double>& obs) {
    RunConfig c = cfg;
    for (std::size_t k = 0; k < axes.size(); ++k)
      apply_axis(c, axes[k].path, vals[k]);
    const PulseSchedule pulse =
        calibrate_cphase(c.pulse.omega0_mev, c.pulse.delta_mev,
                         c.system.v_f_mev, c.system, c.pulse.t_cut);
    DissipatorConfig none;
    none.radiative = false;
    none.phonon = false;
    GateResult res = run_adiabatic_gate(pulse, c.system, none,
                                        {c.integrator_options(), 0.0});
    const double residual =
        std::abs(std::abs(res.conditional_phase) - std::numbers::pi);
    obs = {c.pulse.omega0_mev, c.pulse.delta_mev, c.system.v_f_mev,
           pulse.tau_ps, residual};
  };

  SweepResult table = run_sweep(
      sweep_axes,
      {"omega0_mev", "delta_mev", "v_f_mev", "tau_ps",
       "conditional_phase_residual"},
      cell, cli.jobs);

  CsvWriter csv = make_csv(cfg, cli);
  csv.header({"omega0_mev", "delta_mev", "v_f_mev", "tau_ps",
              "conditional_phase_residual", "error"});
  bool any_failed = false;
  for (const SweepCell& c : table.cells) {
    std::vector<std::string> cells;
    for (double v : c.observables) cells.push_back(format_double(v));
    cells.push_back(c.error);
    csv.row(cells);
    if (!c.error.empty()) any_failed = true;
    if (c.error.empty())
      std::cout << "calibrated: Omega0 = " << c.observables[0]
                << " meV, Delta = " << c.observables[1]
                << " meV, V_F = " << c.observables[2]
                << " meV -> tau = " << c.observables[3]
                << " ps (residual " << c.observables[4] << " rad)\n";
    else
      std::cerr << "calibration failed: " << c.error << "\n";
  }
  csv.write_file((dir / "calibration.csv").string());
  std::cout << "wrote " << (dir / "calibration.csv").string() << "\n";
  return any_failed ? 3 : 0;
}

// ------------------------------------------------------------------- gate --

int cmd_gate(const CliOptions& cli) {
  const RunConfig cfg = resolve_config(cli);
  const fs::path dir = prepare_out_dir(cfg);
  const DissipatorConfig dconf = cfg.dissipator_config();
  EvolveOptions opt{cfg.integrator_options(), cfg.pulse.tail_ps};

  GateResult res;
  double tau_ps = cfg.pulse.tau_ps;
  if (cfg.pulse.kind == "adiabatic") {
    PulseSchedule pulse;
    if (cfg.pulse.calibrate || cfg.pulse.tau_ps <= 0.0) {
      pulse = calibrate_cphase(cfg.pulse.omega0_mev, cfg.pulse.delta_mev,
                               cfg.system.v_f_mev, cfg.system,
                               cfg.pulse.t_cut);
    } else {
      pulse = {cfg.pulse.omega0_mev, cfg.pulse.tau_ps, cfg.pulse.delta_mev,
               cfg.pulse.t_cut};
    }
    tau_ps = pulse.tau_ps;
    res = run_adiabatic_gate(pulse, cfg.system, dconf, opt);
  } else {
    const DynamicPulse pulse = DynamicPulse::two_pi(cfg.pulse.omega0_mev);
    tau_ps = pulse.duration_ps;
    res = run_dynamic_gate(pulse, cfg.system, dconf, opt);
  }

  // Trajectory CSV, decimated to a bounded number of rows.
  CsvWriter csv = make_csv(cfg, cli);
  std::vector<std::string> cols = {"t_ps", "purity"};
  for (const auto& name : kBasisNames)
    cols.push_back("pop_" + std::string(name));
  cols.push_back("pop_zeta_minus");
  csv.header(cols);
  const std::size_t n = res.trajectory.samples.size();
  const std::size_t max_rows = 4000;
  const std::size_t stride = n > max_rows ? (n + max_rows - 1) / max_rows : 1;
  for (std::size_t i = 0; i < n; i += stride) {
    const Sample& s = res.trajectory.samples[i];
    std::vector<double> row = {s.t, s.purity};
    for (double p : s.pop) row.push_back(p);
    row.push_back(s.pop_minus);
    csv.row_numeric(row);
  }
  if ((n - 1) % stride != 0) {
    const Sample& s = res.trajectory.samples.back();
    std::vector<double> row = {s.t, s.purity};
    for (double p : s.pop) row.push_back(p);
    row.push_back(s.pop_minus);
    csv.row_numeric(row);
  }
  csv.write_file((dir / "trajectory.csv").string());

  nlohmann::json summary;
  summary["kind"] = cfg.pulse.kind;
  summary["tau_ps"] = tau_ps;
  summary["gate_end_ps"] = res.gate_end_ps;
  summary["purity"] = res.purity;
  summary["fidelity"] = res.fidelity;
  summary["conditional_phase"] = res.conditional_phase;
  summary["phi_01"] = res.phi_01;
  summary["phi_10"] = res.phi_10;
  summary["max_pop_xx"] = res.max_pop_xx;
  summary["steps_accepted"] = res.trajectory.stats.accepted;
  summary["steps_rejected"] = res.trajectory.stats.rejected;
  write_text(dir / "gate_summary.json", summary.dump() + "\n");
  std::cout << summary.dump() << "\n";

  if (cfg.output.wants("svg")) {
    SvgSeries purity_series{"purity", {}, {}};
    for (std::size_t i = 0; i < n; i += stride) {
      purity_series.x.push_back(res.trajectory.samples[i].t);
      purity_series.y.push_back(res.trajectory.samples[i].purity);
    }
    write_text(dir / "trajectory.svg",
               svg_line_chart({purity_series}, "t (ps)", "purity",
                              cfg.pulse.kind + " gate"));
  }
  std::cout << "wrote " << (dir / "trajectory.csv").string() << "\n";
  return 0;
}

// ------------------------------------------------------------------ sweep --

int cmd_sweep(const CliOptions& cli) {
  const RunConfig cfg = resolve_config(cli);
  if (cfg.sweep.axes.empty())
    throw ConfigError("sweep: no axes configured");
  const fs::path dir = prepare_out_dir(cfg);

  std::vector<std::string> observables = cfg.sweep.observables;
  if (observables.empty()) {
    if (cfg.sweep.driver == "lz") observables = {"leakage"};
    else if (cfg.sweep.driver == "adiabaticity")
      observables = {"adiab_max", "adiab_band", "tau_ps"};
    else observables = {"fidelity", "purity", "conditional_phase", "tau_ps"};
  }

  std::vector<SweepAxis> axes;
  for (const AxisSpec& a : cfg.sweep.axes) axes.push_back({a.path, a.values});

  const std::string driver = cfg.sweep.driver;
  const CellFn cell = [&](const std::vector<double>& vals,
                          std::vector<double>& obs) {
    RunConfig c = cfg;
    for (std::size_t k = 0; k < axes.size(); ++k)
      apply_axis(c, axes[k].name, vals[k]);

    std::map<std::string, double> m;
    if (driver == "adiabatic" || driver == "dynamic") {
      const DissipatorConfig dconf = c.dissipator_config();
      EvolveOptions opt{c.integrator_options(), c.pulse.tail_ps};
      GateResult res;
      if (driver == "adiabatic") {
        PulseSchedule pulse;
        if (c.pulse.calibrate || c.pulse.tau_ps <= 0.0)
          pulse = calibrate_cphase(c.pulse.omega0_mev, c.pulse.delta_mev,
                                   c.system.v_f_mev, c.system, c.pulse.t_cut);
        else
          pulse = {c.pulse.omega0_mev, c.pulse.tau_ps, c.pulse.delta_mev,
                   c.pulse.t_cut};
        m["tau_ps"] = pulse.tau_ps;
        res = run_adiabatic_gate(pulse, c.system, dconf, opt);
      } else {
        const DynamicPulse pulse = DynamicPulse::two_pi(c.pulse.omega0_mev);
        m["tau_ps"] = pulse.duration_ps;
        res = run_dynamic_gate(pulse, c.system, dconf, opt);
      }
      m["fidelity"] = res.fidelity;
      m["purity"] = res.purity;
      m["conditional_phase"] = res.conditional_phase;
      m["phi_01"] = res.phi_01;
      m["phi_10"] = res.phi_10;
      m["max_pop_xx"] = res.max_pop_xx;
    } else if (driver == "lz") {
      PulseSchedule pulse{c.pulse.omega0_mev, c.pulse.tau_ps, c.pulse.delta_mev,
                          c.pulse.t_cut};
      EvolveOptions opt{c.integrator_options(), 0.0};
      Trajectory traj = lz_leakage_trace(pulse, c.system, opt);
      m["leakage"] = 1.0 - traj.back().pop_minus;
      m["pop_minus"] = traj.back().pop_minus;
      m["tau_ps"] = pulse.tau_ps;
    } else if (driver == "adiabaticity") {
      PulseSchedule pulse;
      if (c.pulse.calibrate || c.pulse.tau_ps <= 0.0)
        pulse = calibrate_cphase(c.pulse.omega0_mev, c.pulse.delta_mev,
                                 c.system.v_f_mev, c.system, c.pulse.t_cut);
      else
        pulse = {c.pulse.omega0_mev, c.pulse.tau_ps, c.pulse.delta_mev,
                 c.pulse.t_cut};
      m["tau_ps"] = pulse.tau_ps;
      const double worst = adiabaticity_max(pulse);
      m["adiab_max"] = worst;
      m["bound_ps"] = adiabaticity_bound_gaussian(pulse).bound_ps;
      // three-band classification: 0 adiabatic, 1 marginal, 2 non-adiabatic
      m["adiab_band"] = worst < 0.01 ? 0.0 : (worst < 0.1 ? 1.0 : 2.0);
    } else {
      throw ConfigError("sweep.driver must be adiabatic|dynamic|lz|adiabaticity");
    }

    obs.clear();
    for (const std::string& name : observables) {
      if (!m.count(name))
        throw ConfigError("sweep: unknown observable '" + name + "'");
      obs.push_back(m[name]);
    }
  };

  SweepResult table = run_sweep(axes, observables, cell, cli.jobs);

  CsvWriter csv = make_csv(cfg, cli);
  std::vector<std::string> cols = table.axis_names;
  cols.insert(cols.end(), observables.begin(), observables.end());
  cols.push_back("error");
  csv.header(cols);
  for (const SweepCell& c : table.cells) {
    std::vector<std::string> cells;
    for (double v : c.axis_values) cells.push_back(format_double(v));
    for (double v : c.observables) cells.push_back(format_double(v));
    cells.push_back(c.error);
    csv.row(cells);
  }
  csv.write_file((dir / "sweep.csv").string());
  std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";

  if (cfg.output.wants("svg") && !table.cells.empty()) {
    if (axes.size() == 2) {
      const std::size_t ny = axes[0].values.size();
      const std::size_t nx = axes[1].values.size();
      std::vector<std::vector<double>> grid(ny, std::vector<double>(nx));
      for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
          grid[iy][ix] = table.cells[iy * nx + ix].observables[0];
      write_text(dir / "sweep.svg",
                 svg_heatmap(grid, axes[1].values, axes[0].values,
                             axes[1].name, axes[0].name, observables[0],
                             driver == "adiabaticity"));
    } else {
      SvgSeries s{observables[0], {}, {}};
      for (const SweepCell& c : table.cells) {
        s.x.push_back(c.axis_values[0]);
        s.y.push_back(c.observables[0]);
      }
      write_text(dir / "sweep.svg",
                 svg_line_chart({s}, axes[0].name, observables[0],
                                driver + " sweep"));
    }
  }
  return 0;
}

// --------------------------------------------------------------------- lz --

int cmd_lz(const CliOptions& cli) {
  const RunConfig cfg = resolve_config(cli);
  const fs::path dir = prepare_out_dir(cfg);

  std::vector<SvgSeries> series;
  for (std::size_t k = 0; k < cfg.lz_tau_ps.size(); ++k) {
    PulseSchedule pulse{cfg.pulse.omega0_mev, cfg.lz_tau_ps[k],
                        cfg.pulse.delta_mev, cfg.pulse.t_cut};
    EvolveOptions opt{cfg.integrator_options(), 0.0};
    Trajectory traj = lz_leakage_trace(pulse, cfg.system, opt);

    CsvWriter csv = make_csv(cfg, cli);
    csv.comment("tau_ps " + format_double(pulse.tau_ps));
    csv.header({"t_ps", "pop_minus"});
    SvgSeries s{"tau = " + format_double(pulse.tau_ps) + " ps", {}, {}};
    const std::size_t n = traj.samples.size();
    const std::size_t stride = n > 4000 ? (n + 3999) / 4000 : 1;
    for (std::size_t i = 0; i < n; i += stride) {
      csv.row_numeric({traj.samples[i].t, traj.samples[i].pop_minus});
      s.x.push_back(traj.samples[i].t);
      s.y.push_back(traj.samples[i].pop_minus);
    }
    if ((n - 1) % stride != 0)
      csv.row_numeric({traj.samples.back().t, traj.samples.back().pop_minus});
    const fs::path file = dir / ("lz_" + std::to_string(k) + ".csv");
    csv.write_file(file.string());
    std::cout << "tau = " << pulse.tau_ps
              << " ps: final pop_minus = " << traj.back().pop_minus
              << " (wrote " << file.string() << ")\n";
    series.push_back(std::move(s));
  }
  if (cfg.output.wants("svg"))
    write_text(dir / "lz.svg",
               svg_line_chart(series, "t (ps)", "pop in zeta-",
                              "Landau-Zener leakage"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled-quantum-dot CPHASE gate simulator"};
  app.require_subcommand(1);

  CliOptions cli;
  for (const char* name :
       {"spectra", "calibrate", "gate", "sweep", "lz"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", cli.config_path, "JSON config file")
        ->required();
    sub->add_option("--set", cli.overrides,
                    "override config fields, dotted path KEY=VALUE");
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--jobs", cli.jobs, "worker pool size for sweeps");
    sub->add_option("--format", cli.formats, "output formats: csv[,svg]");
    sub->add_flag("--stamp", cli.stamp, "embed a timestamp in outputs");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "spectra") return cmd_spectra(cli);
    if (sub == "calibrate") return cmd_calibrate(cli);
    if (sub == "gate") return cmd_gate(cli);
    if (sub == "sweep") return cmd_sweep(cli);
    if (sub == "lz") return cmd_lz(cli);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CalibrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const StiffnessError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
