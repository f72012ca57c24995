#include "qdgate/core.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace qdgate {

void SystemParams::validate() const {
  if (gamma0_ps_inv < 0.0)
    throw std::invalid_argument("SystemParams: gamma0 must be >= 0");
  if (temperature_k < 0.0)
    throw std::invalid_argument("SystemParams: temperature must be >= 0");
  if (std::abs(v_f_mev) > 20.0 || v_xx_mev < 0.0 || v_xx_mev > 20.0) {
    std::cerr << "warning: couplings outside the expected [0, 20] meV scale"
              << " (V_F = " << v_f_mev << " meV, V_XX = " << v_xx_mev
              << " meV)\n";
  }
}

StateVec psi_plus_state() {
  StateVec v = StateVec::Zero();
  v(k1X) = 1.0 / std::sqrt(2.0);
  v(kX1) = 1.0 / std::sqrt(2.0);
  return v;
}

StateVec psi_minus_state() {
  StateVec v = StateVec::Zero();
  v(k1X) = 1.0 / std::sqrt(2.0);
  v(kX1) = -1.0 / std::sqrt(2.0);
  return v;
}

StateVec standard_input_state() {
  StateVec v = StateVec::Zero();
  v(k00) = 0.5;
  v(k01) = 0.5;
  v(k10) = 0.5;
  v(k11) = 0.5;
  return v;
}

Operator build_rwa_hamiltonian(const SystemParams& params, double omega_mev,
                               double delta_mev) {
  const double w = units::mev_to_ps_inv(omega_mev);
  const double d = units::mev_to_ps_inv(delta_mev);
  const double vf = units::mev_to_ps_inv(params.v_f_mev);
  const double vxx = units::mev_to_ps_inv(params.v_xx_mev);
  const double dp = d - vf;  // detuning in the single-exciton subspaces

  Operator h = Operator::Zero();

  // H1 = {01, 0X}: the laser couples |01> <-> |0X| at half the bare drive.
  h(k01, k0X) = 0.5 * w;
  h(k0X, k01) = 0.5 * w;
  h(k0X, k0X) = dp;

  // H1' = {10, X0}: identical structure.
  h(k10, kX0) = 0.5 * w;
  h(kX0, k10) = 0.5 * w;
  h(kX0, kX0) = dp;

  // H2 = {11, 1X, X1, XX}: inverse rotation of the {11, psi+, psi-, XX}
  // form back to the bare product basis. The Foerster term appears as the
  // 1X <-> X1 coupling, the drive as omega/2 on each single-trion leg.
  h(k11, k1X) = 0.5 * w;
  h(k1X, k11) = 0.5 * w;
  h(k11, kX1) = 0.5 * w;
  h(kX1, k11) = 0.5 * w;
  h(k1X, k1X) = dp;
  h(kX1, kX1) = dp;
  h(k1X, kX1) = vf;
  h(kX1, k1X) = vf;
  h(k1X, kXX) = 0.5 * w;
  h(kXX, k1X) = 0.5 * w;
  h(kX1, kXX) = 0.5 * w;
  h(kXX, kX1) = 0.5 * w;
  h(kXX, kXX) = 2.0 * dp + vxx;

  return h;
}

double purity(const DensityMatrix& rho) { return rho.cwiseAbs2().sum(); }

double fidelity(const DensityMatrix& rho, const StateVec& target) {
  if (std::abs(target.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("fidelity: target state is not normalized");
  return std::real(target.dot(rho * target));
}

bool is_hermitian(const Operator& op, double tol) {
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double trace_error(const DensityMatrix& rho) {
  return std::abs(rho.trace() - cplx(1.0, 0.0));
}

double min_eigenvalue(const DensityMatrix& rho) {
  DensityMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace qdgate
