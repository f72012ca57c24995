#pragma once

#include <string_view>
#include <vector>

#include "qdgate/core.hpp"
#include "qdgate/dressed.hpp"

namespace qdgate {

// Bulk material constants. Defaults are the GaAs values.
struct MaterialParams {
  double d_e_ev = 14.6;               // electron deformation potential
  double d_h_ev = 4.8;                // hole deformation potential
  double p_piezo_ev_nm = 1.45;        // piezoelectric constant, eV/nm
  double m_e_rel = 0.067;             // effective electron mass / m0
  double m_h_rel = 0.34;              // effective hole mass / m0
  double mass_density_g_cm3 = 5.3;
  double sound_velocity_cm_s = 4.8e5;

  void validate() const;  // all strictly positive
};

// Dot geometry and the cutoff frequencies derived from it. The wavefunction
// widths follow from an isotropic harmonic confinement:
//   d_{e/h} = (hbar / sqrt(m_{e/h} c))^(1/2)
// and the cutoffs are
//   omega_{e/h} = sqrt(2) c_s / d_{e/h},  omega_eh = 2 c_s / sqrt(d_e^2 + d_h^2),
//   omega_p = c_s / R.
class DotGeometry {
 public:
  DotGeometry() : DotGeometry(MaterialParams{}, 7.0, 8.3e-3) {}
  DotGeometry(const MaterialParams& mat, double dot_distance_nm,
              double confinement_j_m2);

  double dot_distance_nm() const { return r_nm_; }
  double confinement_j_m2() const { return c_conf_; }
  double d_e_nm() const { return d_e_nm_; }
  double d_h_nm() const { return d_h_nm_; }
  double omega_e() const { return omega_e_; }    // ps^-1
  double omega_h() const { return omega_h_; }    // ps^-1
  double omega_eh() const { return omega_eh_; }  // ps^-1
  double omega_p() const { return omega_p_; }    // ps^-1

  // Frequency of the interior zero of the deformation-potential bracket:
  //   omega*^2 = 4 c_s^2 ln(D_e/D_h) / (d_e^2 - d_h^2).
  double deformation_zero(const MaterialParams& mat) const;

 private:
  double r_nm_, c_conf_;
  double d_e_nm_, d_h_nm_;
  double omega_e_, omega_h_, omega_eh_, omega_p_;
};

enum class Branch { plus, minus };
enum class PhononCoupling { deformation, piezo, both };

// Superohmic deformation-potential spectral density J_+-(omega), ps^-1.
// Throws for omega < 0; callers handle negative frequencies through the
// conjugate-operator rule.
double spectral_density_deformation(double omega_ps_inv, Branch branch,
                                    const MaterialParams& mat,
                                    const DotGeometry& geo);

// Ohmic piezoelectric spectral density J_+-(omega), ps^-1.
double spectral_density_piezo(double omega_ps_inv, Branch branch,
                              const MaterialParams& mat,
                              const DotGeometry& geo);

// Thermal phonon occupation N(omega) = 1/(exp(hbar omega / kB T) - 1).
// T = 0 returns exactly 0; throws for omega <= 0.
double bose_occupation(double omega_ps_inv, double temperature_k);

// Material + geometry + coupling selection bundled for the evolver.
struct PhononEnvironment {
  MaterialParams mat;
  DotGeometry geo;
  PhononCoupling coupling = PhononCoupling::deformation;

  double j_plus(double omega_ps_inv) const;
  double j_minus(double omega_ps_inv) const;
  // Single-dot spectral density J_+ + J_- (the interference terms cancel);
  // this is what a lone exciton in H1 or H1' couples to.
  double j_single(double omega_ps_inv) const;
};

enum class LindbladLabel {
  lambda_emission,
  lambda_absorption,
  upsilon_emission,
  upsilon_absorption,
  xi_emission,
  xi_absorption,
  radiative_h1,
  radiative_h1p,
  radiative_h2,
  h1_phonon_emission,
  h1_phonon_absorption,
  h1p_phonon_emission,
  h1p_phonon_absorption,
};

std::string_view to_string(LindbladLabel label);

// One dissipator term: L = amp |to><from| applied at the given rate, all in
// the bare 9-level basis.
struct LindbladTerm {
  StateVec to = StateVec::Zero();
  StateVec from = StateVec::Zero();
  double amp = 0.0;
  double rate = 0.0;  // ps^-1, >= 0
  LindbladLabel label = LindbladLabel::lambda_emission;

  Operator op() const { return amp * (to * from.adjoint()); }
};

// The six dressed-frame phonon terms of the H2 subspace: emission and
// absorption for each of the Lambda (branch +), Upsilon and Xi (branch -)
// transitions. Negative raw frequencies conjugate the operator and use the
// absolute frequency. The omega' = 0 operator is dropped since J(0) = 0.
std::vector<LindbladTerm> phonon_lindblad_set(const DressedFrame& frame,
                                              const PhononEnvironment& env,
                                              double temperature_k);
void append_phonon_lindblad_set(const DressedFrame& frame,
                                const PhononEnvironment& env,
                                double temperature_k,
                                std::vector<LindbladTerm>& out);

// Phonon terms for the single-exciton subspaces H1 and H1', treated as the
// isomorphic driven two-level systems with coupling Omega and detuning
// Delta' = Delta - V_F, coupled to the single-dot spectral density.
void append_single_exciton_lindblads(double omega_mev, double delta_prime_mev,
                                     const PhononEnvironment& env,
                                     double temperature_k,
                                     std::vector<LindbladTerm>& out);

// Validity measure of the instantaneous dressed-frame master equation at
// time t: max over the transition frequencies omega' of |d(omega')/dt * t_el
// / omega'|, with t_el measured from the pulse start.
double adiabatic_frame_validity(const PulseSchedule& pulse, double v_f_mev,
                                double t_ps);

}  // namespace qdgate
