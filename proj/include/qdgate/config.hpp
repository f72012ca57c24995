#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qdgate/core.hpp"
#include "qdgate/evolve.hpp"
#include "qdgate/phonons.hpp"
#include "qdgate/pulses.hpp"

namespace qdgate {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AxisSpec {
  std::string path;            // dotted config path, e.g. "pulse.delta_mev"
  std::vector<double> values;  // expanded grid values
};

struct SpectraConfig {
  double omega_min_ps_inv = 0.0;
  double omega_max_ps_inv = 15.0;
  int count = 1501;
  std::string normalize = "raw";  // raw | peak
};

struct PulseConfig {
  std::string kind = "adiabatic";  // adiabatic | dynamic
  double omega0_mev = 1.0;
  double delta_mev = 5.0;
  double tau_ps = 0.0;  // 0 requests calibration for adiabatic pulses
  double t_cut = 5.0;
  bool calibrate = true;
  double tail_ps = 0.0;
};

struct DissipatorSection {
  bool radiative = true;
  bool phonon = false;
  std::string coupling = "deformation";  // deformation | piezo | both
};

struct SweepConfig {
  std::string driver = "adiabatic";  // adiabatic | dynamic | lz | adiabaticity
  std::vector<AxisSpec> axes;
  std::vector<std::string> observables;
};

struct OutputConfig {
  std::string dir = "out";
  std::vector<std::string> formats = {"csv"};  // csv, svg

  bool wants(const std::string& fmt) const;
};

// The fully resolved run configuration. Unknown keys anywhere in the source
// JSON are rejected.
struct RunConfig {
  SystemParams system;
  MaterialParams material;
  double dot_distance_nm = 7.0;
  double confinement_j_m2 = 8.3e-3;
  PulseConfig pulse;
  DissipatorSection dissipators;
  double integrator_tol = 1e-9;
  double integrator_fixed_dt_ps = 0.0;
  SweepConfig sweep;
  SpectraConfig spectra;
  std::vector<double> lz_tau_ps = {1.8, 20.0};
  OutputConfig output;

  // Derived objects.
  DotGeometry geometry() const;
  PhononEnvironment phonon_env() const;
  DissipatorConfig dissipator_config() const;
  IntegratorOptions integrator_options() const;

  // Canonical single-line JSON of the resolved configuration; echoed into
  // every output file for reproducibility.
  std::string canonical_json() const;
};

// Parses a config file, applying `overrides` ("dotted.path=value") on top of
// the file contents before validation. Throws ConfigError on any problem.
RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides = {});
RunConfig parse_config(const std::string& json_text,
                       const std::vector<std::string>& overrides = {});

std::string version_string();

}  // namespace qdgate
