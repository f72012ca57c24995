#include "qdgate/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qdgate/csv.hpp"

namespace qdgate {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) {
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
  }
}

std::vector<double> expand_axis(const json& ax, const std::string& where) {
  require_keys(ax, where, {"path", "min", "max", "count", "scale", "values"});
  if (ax.contains("values")) {
    auto vals = ax.at("values").get<std::vector<double>>();
    if (vals.empty()) throw ConfigError(where + ": empty values list");
    return vals;
  }
  if (!ax.contains("min") || !ax.contains("max") || !ax.contains("count"))
    throw ConfigError(where + ": need min/max/count or values");
  const double lo = ax.at("min").get<double>();
  const double hi = ax.at("max").get<double>();
  const int n = ax.at("count").get<int>();
  if (n < 1) throw ConfigError(where + ": count must be >= 1");
  std::string scale = "linear";
  if (ax.contains("scale")) scale = ax.at("scale").get<std::string>();

  std::vector<double> vals(n);
  if (n == 1) {
    vals[0] = lo;
  } else if (scale == "linear") {
    for (int i = 0; i < n; ++i) vals[i] = lo + (hi - lo) * i / (n - 1);
  } else if (scale == "log") {
    if (lo <= 0.0 || hi <= 0.0)
      throw ConfigError(where + ": log scale needs positive bounds");
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
      vals[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  } else {
    throw ConfigError(where + ": unknown scale '" + scale + "'");
  }
  return vals;
}

// Applies a "dotted.path=value" override; the value is parsed as JSON when
// possible and falls back to a plain string.
void apply_override(json& root, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set expects KEY=VALUE, got '" + spec + "'");
  const std::string path = spec.substr(0, eq);
  const std::string raw = spec.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;  // unquoted string
  }

  json* node = &root;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ConfigError("--set: empty key in '" + spec + "'");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    node = &(*node)[parts[i]];
  (*node)[parts.back()] = value;
}

json defaults_json(const RunConfig& c) {
  json j;
  j["system"] = {{"omega0_mev", c.system.omega0_mev},
                 {"v_f_mev", c.system.v_f_mev},
                 {"v_xx_mev", c.system.v_xx_mev},
                 {"gamma0_ps_inv", c.system.gamma0_ps_inv},
                 {"temperature_k", c.system.temperature_k}};
  j["material"] = {{"d_e_ev", c.material.d_e_ev},
                   {"d_h_ev", c.material.d_h_ev},
                   {"p_piezo_ev_nm", c.material.p_piezo_ev_nm},
                   {"m_e_rel", c.material.m_e_rel},
                   {"m_h_rel", c.material.m_h_rel},
                   {"mass_density_g_cm3", c.material.mass_density_g_cm3},
                   {"sound_velocity_cm_s", c.material.sound_velocity_cm_s}};
  j["geometry"] = {{"dot_distance_nm", c.dot_distance_nm},
                   {"confinement_j_m2", c.confinement_j_m2}};
  j["pulse"] = {{"kind", c.pulse.kind},
                {"omega0_mev", c.pulse.omega0_mev},
                {"delta_mev", c.pulse.delta_mev},
                {"tau_ps", c.pulse.tau_ps},
                {"t_cut", c.pulse.t_cut},
                {"calibrate", c.pulse.calibrate},
                {"tail_ps", c.pulse.tail_ps}};
  j["dissipators"] = {{"radiative", c.dissipators.radiative},
                      {"phonon", c.dissipators.phonon},
                      {"coupling", c.dissipators.coupling}};
  j["integrator"] = {{"tol", c.integrator_tol},
                     {"fixed_dt_ps", c.integrator_fixed_dt_ps}};
  j["spectra"] = {{"omega_min_ps_inv", c.spectra.omega_min_ps_inv},
                  {"omega_max_ps_inv", c.spectra.omega_max_ps_inv},
                  {"count", c.spectra.count},
                  {"normalize", c.spectra.normalize}};
  j["lz"] = {{"tau_ps", c.lz_tau_ps}};
  // output.dir is deliberately omitted: the echoed config describes the
  // data, which must not depend on where it is written
  j["output"] = {{"formats", c.output.formats}};
  // sweep axes/observables are reproduced verbatim
  return j;
}

}  // namespace

bool OutputConfig::wants(const std::string& fmt) const {
  for (const auto& f : formats)
    if (f == fmt) return true;
  return false;
}

DotGeometry RunConfig::geometry() const {
  return DotGeometry(material, dot_distance_nm, confinement_j_m2);
}

PhononEnvironment RunConfig::phonon_env() const {
  PhononEnvironment env;
  env.mat = material;
  env.geo = geometry();
  if (dissipators.coupling == "deformation")
    env.coupling = PhononCoupling::deformation;
  else if (dissipators.coupling == "piezo")
    env.coupling = PhononCoupling::piezo;
  else if (dissipators.coupling == "both")
    env.coupling = PhononCoupling::both;
  else
    throw ConfigError("dissipators.coupling must be deformation|piezo|both");
  return env;
}

DissipatorConfig RunConfig::dissipator_config() const {
  DissipatorConfig d;
  d.radiative = dissipators.radiative;
  d.phonon = dissipators.phonon;
  if (d.phonon) d.env = phonon_env();
  d.temperature_k = system.temperature_k;
  return d;
}

IntegratorOptions RunConfig::integrator_options() const {
  IntegratorOptions opt;
  opt.tol = integrator_tol;
  opt.fixed_dt = integrator_fixed_dt_ps;
  return opt;
}

std::string RunConfig::canonical_json() const {
  json j = defaults_json(*this);
  json sweep_j;
  sweep_j["driver"] = sweep.driver;
  sweep_j["observables"] = sweep.observables;
  sweep_j["axes"] = json::array();
  for (const AxisSpec& ax : sweep.axes) {
    json a;
    a["path"] = ax.path;
    a["values"] = ax.values;
    sweep_j["axes"].push_back(a);
  }
  j["sweep"] = sweep_j;
  return j.dump();
}

RunConfig parse_config(const std::string& json_text,
                       const std::vector<std::string>& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");

  for (const std::string& o : overrides) apply_override(root, o);

  require_keys(root, "config",
               {"system", "material", "geometry", "pulse", "dissipators",
                "integrator", "sweep", "spectra", "lz", "output"});

  RunConfig c;

  if (root.contains("system")) {
    const json& s = root["system"];
    require_keys(s, "system",
                 {"omega0_mev", "v_f_mev", "v_xx_mev", "gamma0_ps_inv",
                  "temperature_k"});
    read(s, "omega0_mev", c.system.omega0_mev);
    read(s, "v_f_mev", c.system.v_f_mev);
    read(s, "v_xx_mev", c.system.v_xx_mev);
    read(s, "gamma0_ps_inv", c.system.gamma0_ps_inv);
    read(s, "temperature_k", c.system.temperature_k);
  }
  if (root.contains("material")) {
    const json& m = root["material"];
    require_keys(m, "material",
                 {"d_e_ev", "d_h_ev", "p_piezo_ev_nm", "m_e_rel", "m_h_rel",
                  "mass_density_g_cm3", "sound_velocity_cm_s"});
    read(m, "d_e_ev", c.material.d_e_ev);
    read(m, "d_h_ev", c.material.d_h_ev);
    read(m, "p_piezo_ev_nm", c.material.p_piezo_ev_nm);
    read(m, "m_e_rel", c.material.m_e_rel);
    read(m, "m_h_rel", c.material.m_h_rel);
    read(m, "mass_density_g_cm3", c.material.mass_density_g_cm3);
    read(m, "sound_velocity_cm_s", c.material.sound_velocity_cm_s);
  }
  if (root.contains("geometry")) {
    const json& g = root["geometry"];
    require_keys(g, "geometry", {"dot_distance_nm", "confinement_j_m2"});
    read(g, "dot_distance_nm", c.dot_distance_nm);
    read(g, "confinement_j_m2", c.confinement_j_m2);
  }
  if (root.contains("pulse")) {
    const json& p = root["pulse"];
    require_keys(p, "pulse",
                 {"kind", "omega0_mev", "delta_mev", "tau_ps", "t_cut",
                  "calibrate", "tail_ps"});
    read(p, "kind", c.pulse.kind);
    read(p, "omega0_mev", c.pulse.omega0_mev);
    read(p, "delta_mev", c.pulse.delta_mev);
    read(p, "tau_ps", c.pulse.tau_ps);
    read(p, "t_cut", c.pulse.t_cut);
    read(p, "calibrate", c.pulse.calibrate);
    read(p, "tail_ps", c.pulse.tail_ps);
    if (c.pulse.kind != "adiabatic" && c.pulse.kind != "dynamic")
      throw ConfigError("pulse.kind must be adiabatic|dynamic");
  }
  if (root.contains("dissipators")) {
    const json& d = root["dissipators"];
    require_keys(d, "dissipators", {"radiative", "phonon", "coupling"});
    read(d, "radiative", c.dissipators.radiative);
    read(d, "phonon", c.dissipators.phonon);
    read(d, "coupling", c.dissipators.coupling);
  }
  if (root.contains("integrator")) {
    const json& i = root["integrator"];
    require_keys(i, "integrator", {"tol", "fixed_dt_ps"});
    read(i, "tol", c.integrator_tol);
    read(i, "fixed_dt_ps", c.integrator_fixed_dt_ps);
    if (c.integrator_tol < 1e-12 || c.integrator_tol > 1e-6)
      throw ConfigError("integrator.tol must lie in [1e-12, 1e-6]");
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    require_keys(s, "sweep", {"driver", "axes", "observables"});
    read(s, "driver", c.sweep.driver);
    if (s.contains("observables"))
      c.sweep.observables = s["observables"].get<std::vector<std::string>>();
    if (s.contains("axes")) {
      if (!s["axes"].is_array()) throw ConfigError("sweep.axes must be a list");
      for (const json& ax : s["axes"]) {
        AxisSpec spec;
        if (!ax.contains("path"))
          throw ConfigError("sweep axis needs a 'path'");
        spec.path = ax.at("path").get<std::string>();
        spec.values = expand_axis(ax, "sweep axis '" + spec.path + "'");
        c.sweep.axes.push_back(spec);
      }
    }
  }
  if (root.contains("spectra")) {
    const json& s = root["spectra"];
    require_keys(s, "spectra",
                 {"omega_min_ps_inv", "omega_max_ps_inv", "count", "normalize"});
    read(s, "omega_min_ps_inv", c.spectra.omega_min_ps_inv);
    read(s, "omega_max_ps_inv", c.spectra.omega_max_ps_inv);
    read(s, "count", c.spectra.count);
    read(s, "normalize", c.spectra.normalize);
    if (c.spectra.count < 2) throw ConfigError("spectra.count must be >= 2");
    if (c.spectra.normalize != "raw" && c.spectra.normalize != "peak")
      throw ConfigError("spectra.normalize must be raw|peak");
  }
  if (root.contains("lz")) {
    const json& l = root["lz"];
    require_keys(l, "lz", {"tau_ps"});
    if (l.contains("tau_ps"))
      c.lz_tau_ps = l["tau_ps"].get<std::vector<double>>();
    if (c.lz_tau_ps.empty()) throw ConfigError("lz.tau_ps must not be empty");
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    require_keys(o, "output", {"dir", "formats"});
    read(o, "dir", c.output.dir);
    if (o.contains("formats"))
      c.output.formats = o["formats"].get<std::vector<std::string>>();
    for (const auto& f : c.output.formats)
      if (f != "csv" && f != "svg")
        throw ConfigError("output.formats entries must be csv|svg");
  }

  c.system.validate();
  c.material.validate();
  (void)c.geometry();  // validates R and confinement
  return c;
}

RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string version_string() { return "qdgate 0.1.0"; }

}  // namespace qdgate
