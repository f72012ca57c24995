#include "qdgate/phonons.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdgate {

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// Prefactor of the deformation-potential spectral density,
//   D_e^2 / (4 pi mu c_s^2 R^3)
// evaluated in hbar = 1 (meV, nm, ps) units, result in ps^-1.
//
// Worked example for the GaAs defaults and R = 7 nm:
//   D_e = 14.6 eV = 14600 meV            -> 14600 / 0.6582119569 = 2.2182e4 ps^-1
//   mu  = 5.3 g/cm^3                     -> 5.3 * 6241.509074 / 0.6582119569
//                                           = 5.0257e4 ps / nm^5
//   c_s = 4.8e5 cm/s                     -> 4.8 nm / ps
//   => prefactor = 2.2182e4^2 / (4 pi * 5.0257e4 * 4.8^2 * 7^3) ~ 0.0986 ps^-1
double deformation_prefactor(const MaterialParams& mat,
                             const DotGeometry& geo) {
  const double d_e = 1e3 * mat.d_e_ev / units::hbar_mev_ps;  // ps^-1
  const double mu = mat.mass_density_g_cm3 * units::g_cm3_in_mev_ps2_nm5 /
                    units::hbar_mev_ps;                      // ps / nm^5
  const double c_s = mat.sound_velocity_cm_s * 1e-5;         // nm / ps
  const double r = geo.dot_distance_nm();
  return d_e * d_e / (4.0 * std::numbers::pi * mu * c_s * c_s * r * r * r);
}

// Prefactor P^2 / (4 pi mu c_s^2 R) of the piezoelectric density, same units.
double piezo_prefactor(const MaterialParams& mat, const DotGeometry& geo) {
  const double p = 1e3 * mat.p_piezo_ev_nm / units::hbar_mev_ps;  // ps^-1/nm
  const double mu = mat.mass_density_g_cm3 * units::g_cm3_in_mev_ps2_nm5 /
                    units::hbar_mev_ps;
  const double c_s = mat.sound_velocity_cm_s * 1e-5;
  const double r = geo.dot_distance_nm();
  return p * p / (4.0 * std::numbers::pi * mu * c_s * c_s * r);
}

}  // namespace

void MaterialParams::validate() const {
  const bool ok = d_e_ev > 0 && d_h_ev > 0 && p_piezo_ev_nm > 0 &&
                  m_e_rel > 0 && m_h_rel > 0 && mass_density_g_cm3 > 0 &&
                  sound_velocity_cm_s > 0;
  if (!ok)
    throw std::invalid_argument(
        "MaterialParams: all parameters must be strictly positive");
}

DotGeometry::DotGeometry(const MaterialParams& mat, double dot_distance_nm,
                         double confinement_j_m2)
    : r_nm_(dot_distance_nm), c_conf_(confinement_j_m2) {
  mat.validate();
  if (r_nm_ <= 0.0 || c_conf_ <= 0.0)
    throw std::invalid_argument("DotGeometry: R and c must be positive");

  // d = (hbar / sqrt(m c))^(1/2), evaluated in SI and converted to nm.
  auto width_nm = [&](double m_rel) {
    const double m_kg = m_rel * units::electron_mass_kg;
    const double d2_m2 = units::hbar_joule_s / std::sqrt(m_kg * c_conf_);
    return std::sqrt(d2_m2) * 1e9;
  };
  d_e_nm_ = width_nm(mat.m_e_rel);
  d_h_nm_ = width_nm(mat.m_h_rel);

  const double c_s = mat.sound_velocity_cm_s * 1e-5;  // nm / ps
  omega_e_ = std::sqrt(2.0) * c_s / d_e_nm_;
  omega_h_ = std::sqrt(2.0) * c_s / d_h_nm_;
  omega_eh_ = 2.0 * c_s / std::sqrt(d_e_nm_ * d_e_nm_ + d_h_nm_ * d_h_nm_);
  omega_p_ = c_s / r_nm_;
}

double DotGeometry::deformation_zero(const MaterialParams& mat) const {
  const double c_s = mat.sound_velocity_cm_s * 1e-5;
  const double num = 4.0 * c_s * c_s * std::log(mat.d_e_ev / mat.d_h_ev);
  const double den = d_e_nm_ * d_e_nm_ - d_h_nm_ * d_h_nm_;
  return std::sqrt(num / den);
}

double spectral_density_deformation(double omega_ps_inv, Branch branch,
                                    const MaterialParams& mat,
                                    const DotGeometry& geo) {
  if (omega_ps_inv < 0.0)
    throw std::invalid_argument(
        "spectral_density_deformation: omega must be >= 0");
  const double w = omega_ps_inv;
  const double ratio = mat.d_h_ev / mat.d_e_ev;
  const double xp = w / geo.omega_p();
  const double xe = w / geo.omega_e();
  const double xh = w / geo.omega_h();
  const double xeh = w / geo.omega_eh();
  const double bracket = std::exp(-xe * xe) -
                         2.0 * ratio * std::exp(-xeh * xeh) +
                         ratio * ratio * std::exp(-xh * xh);
  const double interference =
      branch == Branch::plus ? 1.0 + sinc(xp) : 1.0 - sinc(xp);
  return deformation_prefactor(mat, geo) * xp * xp * xp * interference *
         bracket;
}

double spectral_density_piezo(double omega_ps_inv, Branch branch,
                              const MaterialParams& mat,
                              const DotGeometry& geo) {
  if (omega_ps_inv < 0.0)
    throw std::invalid_argument("spectral_density_piezo: omega must be >= 0");
  const double w = omega_ps_inv;
  const double xp = w / geo.omega_p();
  const double xe = w / geo.omega_e();
  const double xh = w / geo.omega_h();
  const double xeh = w / geo.omega_eh();
  const double bracket = std::exp(-xe * xe) - 2.0 * std::exp(-xeh * xeh) +
                         std::exp(-xh * xh);
  const double interference =
      branch == Branch::plus ? 1.0 + sinc(xp) : 1.0 - sinc(xp);
  return piezo_prefactor(mat, geo) * xp * interference * bracket;
}

double bose_occupation(double omega_ps_inv, double temperature_k) {
  if (omega_ps_inv <= 0.0)
    throw std::invalid_argument("bose_occupation: omega must be > 0");
  if (temperature_k == 0.0) return 0.0;
  const double x = omega_ps_inv * units::hbar_mev_ps /
                   (units::kb_mev_per_k * temperature_k);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

double PhononEnvironment::j_plus(double w) const {
  switch (coupling) {
    case PhononCoupling::deformation:
      return spectral_density_deformation(w, Branch::plus, mat, geo);
    case PhononCoupling::piezo:
      return spectral_density_piezo(w, Branch::plus, mat, geo);
    case PhononCoupling::both:
      return spectral_density_deformation(w, Branch::plus, mat, geo) +
             spectral_density_piezo(w, Branch::plus, mat, geo);
  }
  return 0.0;
}

double PhononEnvironment::j_minus(double w) const {
  switch (coupling) {
    case PhononCoupling::deformation:
      return spectral_density_deformation(w, Branch::minus, mat, geo);
    case PhononCoupling::piezo:
      return spectral_density_piezo(w, Branch::minus, mat, geo);
    case PhononCoupling::both:
      return spectral_density_deformation(w, Branch::minus, mat, geo) +
             spectral_density_piezo(w, Branch::minus, mat, geo);
  }
  return 0.0;
}

double PhononEnvironment::j_single(double w) const {
  return j_plus(w) + j_minus(w);
}

std::string_view to_string(LindbladLabel label) {
  switch (label) {
    case LindbladLabel::lambda_emission: return "Lambda-emission";
    case LindbladLabel::lambda_absorption: return "Lambda-absorption";
    case LindbladLabel::upsilon_emission: return "Upsilon-emission";
    case LindbladLabel::upsilon_absorption: return "Upsilon-absorption";
    case LindbladLabel::xi_emission: return "Xi-emission";
    case LindbladLabel::xi_absorption: return "Xi-absorption";
    case LindbladLabel::radiative_h1: return "radiative-H1";
    case LindbladLabel::radiative_h1p: return "radiative-H1'";
    case LindbladLabel::radiative_h2: return "radiative-H2";
    case LindbladLabel::h1_phonon_emission: return "H1-phonon-emission";
    case LindbladLabel::h1_phonon_absorption: return "H1-phonon-absorption";
    case LindbladLabel::h1p_phonon_emission: return "H1'-phonon-emission";
    case LindbladLabel::h1p_phonon_absorption: return "H1'-phonon-absorption";
  }
  return "?";
}

void append_phonon_lindblad_set(const DressedFrame& frame,
                                const PhononEnvironment& env,
                                double temperature_k,
                                std::vector<LindbladTerm>& out) {
  const double s = std::sin(frame.theta);
  const double c = std::cos(frame.theta);

  const StateVec psi_p = psi_plus_state();
  const StateVec psi_m = psi_minus_state();
  const StateVec e11 = [] {
    StateVec v = StateVec::Zero();
    v(k11) = 1.0;
    return v;
  }();
  const StateVec zeta_m = c * e11 - s * psi_p;
  const StateVec zeta_p = s * e11 + c * psi_p;

  // Emission operator, amplitude and raw frequency of each transition. A
  // negative raw frequency means the labelling of upper and lower state is
  // inverted there: use the adjoint operator with |omega| instead.
  struct Raw {
    StateVec lower, upper;
    double amp;
    double freq;
    bool plus_branch;
    LindbladLabel em, abs;
  };
  const Raw raws[3] = {
      {zeta_m, zeta_p, -0.5 * std::sin(2.0 * frame.theta), frame.lambda_cap,
       true, LindbladLabel::lambda_emission, LindbladLabel::lambda_absorption},
      {psi_m, zeta_p, c, frame.upsilon, false, LindbladLabel::upsilon_emission,
       LindbladLabel::upsilon_absorption},
      {zeta_m, psi_m, -s, frame.xi, false, LindbladLabel::xi_emission,
       LindbladLabel::xi_absorption},
  };

  for (const Raw& r : raws) {
    StateVec lower = r.lower, upper = r.upper;
    double w = r.freq;
    if (w < 0.0) {
      std::swap(lower, upper);
      w = -w;
    }
    const double j = r.plus_branch ? env.j_plus(w) : env.j_minus(w);
    const double n = w > 0.0 ? bose_occupation(w, temperature_k) : 0.0;

    LindbladTerm em;
    em.to = lower;
    em.from = upper;
    em.amp = r.amp;
    em.rate = j * (n + 1.0);
    em.label = r.em;
    out.push_back(em);

    LindbladTerm ab;
    ab.to = upper;
    ab.from = lower;
    ab.amp = r.amp;
    ab.rate = j * n;
    ab.label = r.abs;
    out.push_back(ab);
  }
}

std::vector<LindbladTerm> phonon_lindblad_set(const DressedFrame& frame,
                                              const PhononEnvironment& env,
                                              double temperature_k) {
  std::vector<LindbladTerm> out;
  out.reserve(6);
  append_phonon_lindblad_set(frame, env, temperature_k, out);
  return out;
}

void append_single_exciton_lindblads(double omega_mev, double delta_prime_mev,
                                     const PhononEnvironment& env,
                                     double temperature_k,
                                     std::vector<LindbladTerm>& out) {
  const double w = units::mev_to_ps_inv(omega_mev);
  const double dp = units::mev_to_ps_inv(delta_prime_mev);
  const double split = std::sqrt(dp * dp + w * w);
  if (split <= 0.0) return;

  // Dressed two-level system with mixing angle theta1 = atan2(Omega, Delta')/2;
  // the diagonal exciton-phonon coupling turns into a |-><+| transition with
  // amplitude -sin(2 theta1)/2, exactly as in the H2 Lambda channel.
  const double theta1 = 0.5 * std::atan2(w, dp);
  const double amp = -0.5 * std::sin(2.0 * theta1);
  const double ct = std::cos(theta1), st = std::sin(theta1);

  const double j = env.j_single(split);
  const double n = bose_occupation(split, temperature_k);

  struct Pair {
    int ground, excited;
    LindbladLabel em, abs;
  };
  const Pair pairs[2] = {
      {k01, k0X, LindbladLabel::h1_phonon_emission,
       LindbladLabel::h1_phonon_absorption},
      {k10, kX0, LindbladLabel::h1p_phonon_emission,
       LindbladLabel::h1p_phonon_absorption},
  };

  for (const Pair& p : pairs) {
    StateVec g = StateVec::Zero(), e = StateVec::Zero();
    g(p.ground) = 1.0;
    e(p.excited) = 1.0;
    const StateVec minus = ct * g - st * e;
    const StateVec plus = st * g + ct * e;

    LindbladTerm em;
    em.to = minus;
    em.from = plus;
    em.amp = amp;
    em.rate = j * (n + 1.0);
    em.label = p.em;
    out.push_back(em);

    LindbladTerm ab;
    ab.to = plus;
    ab.from = minus;
    ab.amp = amp;
    ab.rate = j * n;
    ab.label = p.abs;
    out.push_back(ab);
  }
}

double adiabatic_frame_validity(const PulseSchedule& pulse, double v_f_mev,
                                double t_ps) {
  const auto [omega, delta] = pulse.evaluate(t_ps);
  const DressedFrame f = dressed_frame(omega, delta, v_f_mev);

  // dLambda/dt = 2 Omega dOmega/dt / Lambda; Upsilon and Xi change at half
  // that rate (constant detuning).
  const double w = units::mev_to_ps_inv(omega);
  const double wdot = -2.0 * t_ps * w / (pulse.tau_ps * pulse.tau_ps);
  const double lamdot =
      f.lambda_cap > 0.0 ? 2.0 * w * wdot / f.lambda_cap : 0.0;

  const double t_el = t_ps - pulse.window_start();
  double worst = 0.0;
  const double freqs[3] = {f.lambda_cap, f.upsilon, f.xi};
  const double rates[3] = {lamdot, 0.5 * lamdot, 0.5 * lamdot};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(freqs[i]) < 1e-12) continue;
    worst = std::max(worst, std::abs(rates[i] * t_el / freqs[i]));
  }
  return worst;
}

}  // namespace qdgate
