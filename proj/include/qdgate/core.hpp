#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string_view>

#include "qdgate/units.hpp"

namespace qdgate {

using cplx = std::complex<double>;
using Operator = Eigen::Matrix<cplx, 9, 9>;       // bare RWA basis, ps^-1
using DensityMatrix = Eigen::Matrix<cplx, 9, 9>;  // bare RWA basis
using StateVec = Eigen::Matrix<cplx, 9, 1>;

// Fixed basis order for every operator and state in this code base.
// "X" denotes the trion level of the respective dot.
enum Basis : int {
  k00 = 0,
  k01 = 1,
  k0X = 2,
  k10 = 3,
  kX0 = 4,
  k11 = 5,
  k1X = 6,
  kX1 = 7,
  kXX = 8,
};

inline constexpr int kNumLevels = 9;

inline constexpr std::array<std::string_view, 9> kBasisNames = {
    "00", "01", "0X", "10", "X0", "11", "1X", "X1", "XX"};

// The Hamiltonian decouples into four subspaces (Pauli blocking):
//   H0 = {00},  H1 = {01, 0X},  H1' = {10, X0},  H2 = {11, 1X, X1, XX}
enum class Subspace { H0, H1, H1p, H2 };

inline constexpr Subspace subspace_of(int index) {
  if (index == k00) return Subspace::H0;
  if (index == k01 || index == k0X) return Subspace::H1;
  if (index == k10 || index == kX0) return Subspace::H1p;
  return Subspace::H2;
}

// Static physical couplings. Energies in meV, rates in ps^-1.
struct SystemParams {
  double omega0_mev = 1300.0;  // exciton creation energy; cancels in the rotating frame
  double v_f_mev = 0.85;       // Foerster coupling, signed
  double v_xx_mev = 5.0;       // biexciton dipolar shift
  double gamma0_ps_inv = 0.01; // single-dot spontaneous emission rate
  double temperature_k = 0.0;  // bath temperature

  // Throws std::invalid_argument on hard violations, emits stderr warnings
  // for couplings outside the expected meV scale.
  void validate() const;
};

// Symmetric/antisymmetric single-exciton superpositions of the H2 subspace.
StateVec psi_plus_state();   // (|1X> + |X1>)/sqrt(2)
StateVec psi_minus_state();  // (|1X> - |X1>)/sqrt(2)

// The general input state (|00> + |01> + |10> + |11>)/2.
StateVec standard_input_state();

// 9x9 block-diagonal rotating-frame Hamiltonian for drive amplitude `omega`
// and detuning `delta` (both meV; detuning is measured from the |11> <-> psi+
// transition). Returned in ps^-1.
Operator build_rwa_hamiltonian(const SystemParams& params, double omega_mev,
                               double delta_mev);

// tr(rho^2); 1 for pure states, 1/9 for the maximally mixed 9-level state.
double purity(const DensityMatrix& rho);

// <target| rho |target>. Throws if `target` is not normalized to 1e-12.
double fidelity(const DensityMatrix& rho, const StateVec& target);

// Validation helpers used by tests and the evolver's invariant checks.
bool is_hermitian(const Operator& op, double tol = 1e-10);
double trace_error(const DensityMatrix& rho);       // |tr(rho) - 1|
double min_eigenvalue(const DensityMatrix& rho);    // smallest eigenvalue of (rho+rho^+)/2

}  // namespace qdgate
