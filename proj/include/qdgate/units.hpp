#pragma once

// Unit conventions used throughout:
//
//   * user-facing energies          meV
//   * internal angular frequencies  ps^-1   (energy / hbar)
//   * times                         ps
//   * lengths                       nm
//   * temperatures                  K
//
// The only conversions that ever happen are meV <-> ps^-1 at module
// boundaries and the one-off SI -> (meV, nm, ps) conversion of the material
// constants in phonons.cpp.

namespace qdgate::units {

inline constexpr double hbar_mev_ps = 0.6582119569;   // meV ps
inline constexpr double kb_mev_per_k = 0.0861733;     // meV / K

// SI constants, needed only to convert the material parameters.
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double ev_in_joule = 1.602176634e-19;
inline constexpr double hbar_joule_s = 1.054571817e-34;

// 1 g/cm^3 expressed in meV ps^2 / nm^5:
//   1 g/cm^3 = 10^3 kg/m^3 = 10^3 J s^2 / m^5
//            = 10^3 * (6.241509074e21 meV) * (10^24 ps^2) / (10^45 nm^5)
//            = 6241.509074 meV ps^2 / nm^5
inline constexpr double g_cm3_in_mev_ps2_nm5 = 6241.509074;

inline constexpr double mev_to_ps_inv(double e_mev) { return e_mev / hbar_mev_ps; }
inline constexpr double ps_inv_to_mev(double w) { return w * hbar_mev_ps; }

}  // namespace qdgate::units
