#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qdgate/core.hpp"
#include "qdgate/units.hpp"

using namespace qdgate;

namespace {

SystemParams gaas_system() {
  SystemParams p;
  p.v_xx_mev = 5.0;
  p.v_f_mev = 0.85;
  p.gamma0_ps_inv = 0.01;
  return p;
}

Eigen::Matrix<cplx, 4, 4> h2_block(const Operator& h) {
  return h.block<4, 4>(k11, k11);
}

}  // namespace

TEST_CASE("basis order is frozen") {
  CHECK(kBasisNames[k00] == "00");
  CHECK(kBasisNames[k0X] == "0X");
  CHECK(kBasisNames[kX0] == "X0");
  CHECK(kBasisNames[k11] == "11");
  CHECK(kBasisNames[kXX] == "XX");
  CHECK(subspace_of(k00) == Subspace::H0);
  CHECK(subspace_of(k01) == Subspace::H1);
  CHECK(subspace_of(k0X) == Subspace::H1);
  CHECK(subspace_of(k10) == Subspace::H1p);
  CHECK(subspace_of(kX1) == Subspace::H2);
}

TEST_CASE("rwa hamiltonian: diagonal for omega = 0") {
  const SystemParams p = gaas_system();
  const double delta = 3.7;
  const Operator h = build_rwa_hamiltonian(p, 0.0, delta);

  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      if (i != j && !(i == k1X && j == kX1) && !(i == kX1 && j == k1X))
        CHECK(std::abs(h(i, j)) == 0.0);

  // H2-block eigenvalues relative to |11>: {0, Delta - 2 V_F, Delta,
  // 2 Delta - 2 V_F + V_XX}.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, 4, 4>> es(h2_block(h));
  std::vector<double> expect = {
      0.0, units::mev_to_ps_inv(delta - 2 * p.v_f_mev),
      units::mev_to_ps_inv(delta),
      units::mev_to_ps_inv(2 * delta - 2 * p.v_f_mev + p.v_xx_mev)};
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 4; ++i)
    CHECK(es.eigenvalues()(i) == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("rwa hamiltonian: hermitian and block diagonal for random params") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-8.0, 8.0);
  for (int trial = 0; trial < 50; ++trial) {
    SystemParams p = gaas_system();
    p.v_f_mev = dist(rng);
    p.v_xx_mev = std::abs(dist(rng));
    const Operator h = build_rwa_hamiltonian(p, std::abs(dist(rng)), dist(rng));
    CHECK(is_hermitian(h, 1e-12));
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        if (subspace_of(i) != subspace_of(j))
          CHECK(std::abs(h(i, j)) == 0.0);
  }
}

TEST_CASE("rwa hamiltonian: H2 block in the {11, psi+, psi-, XX} basis") {
  const SystemParams p = gaas_system();
  const double omega = 1.3, delta = 4.2;
  const Operator h = build_rwa_hamiltonian(p, omega, delta);

  Eigen::Matrix<cplx, 4, 4> u;  // columns: 11, psi+, psi-, XX in bare coords
  const double r = 1.0 / std::sqrt(2.0);
  u << 1, 0, 0, 0,
       0, r, r, 0,
       0, r, -r, 0,
       0, 0, 0, 1;
  const Eigen::Matrix<cplx, 4, 4> rotated =
      u.adjoint() * h2_block(h) * u;

  const double d = units::mev_to_ps_inv(delta);
  const double vf = units::mev_to_ps_inv(p.v_f_mev);
  const double vxx = units::mev_to_ps_inv(p.v_xx_mev);
  const double w = units::mev_to_ps_inv(omega);

  Eigen::Matrix<cplx, 4, 4> expect = Eigen::Matrix<cplx, 4, 4>::Zero();
  expect(1, 1) = d;
  expect(2, 2) = d - 2 * vf;
  expect(3, 3) = 2 * d - 2 * vf + vxx;
  expect(0, 1) = expect(1, 0) = w / std::sqrt(2.0);
  expect(1, 3) = expect(3, 1) = w / std::sqrt(2.0);

  CHECK((rotated - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rwa hamiltonian: anticrossing gap sqrt(2) Omega at resonance") {
  // At Delta = 0 the zeta-/zeta+ splitting is the effective Rabi frequency
  // sqrt(2) Omega (up to the small XX repulsion).
  const SystemParams p = gaas_system();
  const double omega = 1.0;
  const Operator h = build_rwa_hamiltonian(p, omega, 0.0);
  Eigen::Matrix<cplx, 3, 3> block;  // {11, psi+, XX} sector
  const double w = units::mev_to_ps_inv(omega);
  const double vf = units::mev_to_ps_inv(p.v_f_mev);
  const double vxx = units::mev_to_ps_inv(p.v_xx_mev);
  block << 0, w / std::sqrt(2.0), 0,
           w / std::sqrt(2.0), 0, w / std::sqrt(2.0),
           0, w / std::sqrt(2.0), -2 * vf + vxx;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, 3, 3>> es(block);
  const double gap = es.eigenvalues()(1) - es.eigenvalues()(0);
  CHECK(gap ==
        doctest::Approx(std::sqrt(2.0) * w).epsilon(0.05));  // XX shifts ~2%

  // And the full 9x9 matches an independent dense diagonalization.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, 4, 4>> full(h2_block(h));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, 3, 3>> sub(block);
  // the psi- level sits at -2 vf within the H2 block
  std::vector<double> expect = {sub.eigenvalues()(0), sub.eigenvalues()(1),
                                sub.eigenvalues()(2), -2 * vf};
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 4; ++i)
    CHECK(full.eigenvalues()(i) == doctest::Approx(expect[i]).epsilon(1e-10));
}

TEST_CASE("purity of pure, mixed and half-mixed states") {
  const StateVec phi = standard_input_state();
  const DensityMatrix pure = phi * phi.adjoint();
  CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix mixed = DensityMatrix::Identity() / 9.0;
  CHECK(purity(mixed) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  StateVec e11 = StateVec::Zero();
  e11(k11) = 1.0;
  const StateVec pm = psi_minus_state();
  const DensityMatrix half =
      0.5 * (e11 * e11.adjoint()) + 0.5 * (pm * pm.adjoint());
  CHECK(purity(half) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity") {
  const StateVec phi = standard_input_state();
  const DensityMatrix rho = phi * phi.adjoint();
  CHECK(fidelity(rho, phi) == doctest::Approx(1.0).epsilon(1e-12));

  StateVec e00 = StateVec::Zero(), e11 = StateVec::Zero();
  e00(k00) = 1.0;
  e11(k11) = 1.0;
  CHECK(fidelity(e00 * e00.adjoint(), e11) == doctest::Approx(0.0));
  CHECK(fidelity(DensityMatrix::Identity() / 9.0, phi) ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  StateVec unnorm = 2.0 * phi;
  CHECK_THROWS_AS((void)fidelity(rho, unnorm), std::invalid_argument);
}

TEST_CASE("standard input state") {
  const StateVec phi = standard_input_state();
  CHECK(std::abs(phi(k00) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(phi(k01) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(phi(k10) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(phi(k11) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(phi(k0X)) == 0.0);
  CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("system params validation") {
  SystemParams p = gaas_system();
  p.gamma0_ps_inv = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = gaas_system();
  p.temperature_k = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
