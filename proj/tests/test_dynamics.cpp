#include <catch2/catch_amalgamated.hpp>

#include "npgqc/control_synthesis.hpp"
#include "npgqc/dynamics.hpp"
#include "npgqc/gate_algebra.hpp"
#include "npgqc/metrics.hpp"

#include <cmath>

using namespace npgqc;

namespace {

MatX zero_h(double) { return MatX::Zero(2, 2); }

// spectral-decomposition oracle for exp(-i H tau) of a constant Hermitian H
MatX expm_oracle(const MatX& h, double tau) {
  Eigen::SelfAdjointEigenSolver<MatX> es(h);
  const VecX phases = (-im * tau * es.eigenvalues().cast<cplx>().array()).exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("state propagation basics") {
  VecX psi0 = VecX::Zero(2);
  psi0(0) = 1.0;

  const VecX same = propagate_state(zero_h, psi0, 1.0, 10);
  REQUIRE((same - psi0).norm() < 1e-14);

  // constant H = (Omega/2) sigma_x: analytic Rabi solution
  const double omega = 2.3, tau = 0.9;
  auto h = [&](double) -> MatX {
    MatX m(2, 2);
    m << 0.0, omega / 2.0, omega / 2.0, 0.0;
    return m;
  };
  const VecX out = propagate_state(h, psi0, tau, 4000);
  REQUIRE(std::abs(out(0) - std::cos(omega * tau / 2)) < 1e-10);
  REQUIRE(std::abs(out(1) - (-im * std::sin(omega * tau / 2))) < 1e-10);
  REQUIRE(std::abs(out.norm() - 1.0) < 1e-10);

  VecX bad = 2.0 * psi0;
  REQUIRE_THROWS(propagate_state(zero_h, bad, 1.0, 10));
  REQUIRE_THROWS(propagate_state(zero_h, psi0, 1.0, 0));
}

TEST_CASE("geometric controls take |0> to the superposition state") {
  ControlField c = synthesize_controls(path_for_gate(GateName::H));
  auto h = [&](double t) -> MatX { return hamiltonian_from_controls(c, t); };
  VecX psi0 = VecX::Zero(2);
  psi0(0) = 1.0;
  const VecX out = propagate_state(h, psi0, 1.0, 20000);
  VecX tgt(2);
  tgt << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  REQUIRE(1.0 - std::norm(tgt.dot(out)) < 1e-8);
}

TEST_CASE("propagator basics and composition") {
  REQUIRE((propagator(zero_h, 2, 1.0, 10) - MatX::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  MatX h(2, 2);
  h << 0.7, cplx(0.2, -0.4), cplx(0.2, 0.4), -0.7;
  auto hs = [&](double) -> MatX { return h; };
  const MatX u = propagator(hs, 2, 1.3, 4000);
  REQUIRE((u - expm_oracle(h, 1.3)).cwiseAbs().maxCoeff() < 1e-10);
  REQUIRE((u.adjoint() * u - MatX::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

  // semigroup property on a time-dependent problem
  ControlField c = synthesize_controls(path_for_gate(GateName::H));
  auto hc = [&](double t) -> MatX { return hamiltonian_from_controls(c, t); };
  const MatX full = propagator(hc, 2, 1.0, 20000);
  const MatX first = propagator(hc, 2, 0.5, 10000, 0.0);
  const MatX second = propagator(hc, 2, 0.5, 10000, 0.5);
  REQUIRE((full - second * first).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("lindblad analytic decay rates pin the dissipator normalization") {
  const double kappa = 0.35;

  // dephasing: c_z = |0><0| - |1><1| at rate k: rho01(t) = rho01(0) e^{-4 k t}
  LindbladModel m;
  m.dim = 2;
  m.collapses = qubit_collapses(0.0, kappa);
  m.collapses.erase(m.collapses.begin());  // keep only the dephasing channel
  VecX plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const double t_probe = 1.0 / kappa;
  DensityMatrix rho = propagate_lindblad(m, DensityMatrix::pure(plus), t_probe, 4000);
  const double expect_01 = 0.5 * std::exp(-4.0 * kappa * t_probe);
  REQUIRE(std::abs(rho.rho(0, 1).real() - expect_01) / expect_01 < 1e-6);

  // amplitude damping: c- = |0><1| at rate k: rho11(t) = e^{-2 k t}
  LindbladModel md;
  md.dim = 2;
  md.collapses = qubit_collapses(kappa, 0.0);
  md.collapses.pop_back();
  VecX one = VecX::Zero(2);
  one(1) = 1.0;
  DensityMatrix rho2 = propagate_lindblad(md, DensityMatrix::pure(one), t_probe, 4000);
  const double expect_11 = std::exp(-2.0 * kappa * t_probe);
  REQUIRE(std::abs(rho2.rho(1, 1).real() - expect_11) / expect_11 < 1e-6);
}

TEST_CASE("closed system matches unitary propagation") {
  ControlField c = synthesize_controls(path_for_gate(GateName::T));
  LindbladModel m = qubit_model(c, 0.0, 0.0);
  VecX psi0(2);
  psi0 << std::cos(0.4), std::sin(0.4);
  DensityMatrix rho = propagate_lindblad(m, DensityMatrix::pure(psi0), 1.0, 20000);
  const VecX psi = propagate_state(m.hamiltonian, psi0, 1.0, 20000);
  REQUIRE((rho.rho - MatX(psi * psi.adjoint())).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("trace drift triggers the refinement error") {
  LindbladModel m;
  m.dim = 2;
  m.collapses = qubit_collapses(500.0, 500.0);
  VecX one = VecX::Zero(2);
  one(1) = 1.0;
  REQUIRE_THROWS_AS(propagate_lindblad(m, DensityMatrix::pure(one), 1.0, 3), std::runtime_error);
}

TEST_CASE("superoperator propagator agrees with direct integration") {
  ControlField c = synthesize_controls(path_for_gate(GateName::H));
  LindbladModel m = qubit_model(c, 3e-4, 5e-4);
  const MatX sop = lindblad_superop_propagator(m, 1.0, 4000);

  VecX psi0(2);
  psi0 << std::cos(1.1), std::sin(1.1);
  const DensityMatrix direct = propagate_lindblad(m, DensityMatrix::pure(psi0), 1.0, 4000);
  const MatX via_sop = apply_superop(sop, MatX(psi0 * psi0.adjoint()));
  REQUIRE((via_sop - direct.rho).cwiseAbs().maxCoeff() < 1e-10);

  // block-split evaluation is exact
  LindbladSuperop sup(m);
  const MatX left = lindblad_superop_propagator_block(sup, 1.0, 4000, 0, 2);
  const MatX right = lindblad_superop_propagator_block(sup, 1.0, 4000, 2, 2);
  REQUIRE((sop.leftCols(2) - left).cwiseAbs().maxCoeff() < 1e-14);
  REQUIRE((sop.rightCols(2) - right).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("propagated states stay positive, Hermitian and unit trace") {
  ControlField c = synthesize_controls(path_for_gate(GateName::H));
  const double kap = 2.0 * c.omega_bar / 1e4;
  LindbladModel m = qubit_model(c, kap, kap);
  VecX psi0(2);
  psi0 << std::cos(0.8), std::sin(0.8);
  DensityMatrix rho = propagate_lindblad(m, DensityMatrix::pure(psi0), 1.0, 20000);
  REQUIRE(std::abs(rho.rho.trace().real() - 1.0) < 1e-8);
  REQUIRE((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::SelfAdjointEigenSolver<MatX> es(rho.rho, Eigen::EigenvaluesOnly);
  REQUIRE(es.eigenvalues().minCoeff() > -1e-8);
  rho.validate();
}

TEST_CASE("integrator converges at fourth order on the gate problem") {
  ControlField c = synthesize_controls(path_for_gate(GateName::H));
  auto h = [&](double t) -> MatX { return hamiltonian_from_controls(c, t); };
  const MatX ref = propagator(h, 2, 1.0, 65536);
  const double e1 = (propagator(h, 2, 1.0, 512) - ref).cwiseAbs().maxCoeff();
  const double e2 = (propagator(h, 2, 1.0, 1024) - ref).cwiseAbs().maxCoeff();
  const double ratio = e1 / e2;
  REQUIRE(ratio > 8.0);
  REQUIRE(ratio < 32.0);
}

TEST_CASE("sampled lindblad trajectory matches the endpoint run") {
  ControlField c = synthesize_controls(path_for_gate(GateName::T));
  const double kap = 1e-3;
  LindbladModel m = qubit_model(c, kap, kap);
  VecX psi0(2);
  psi0 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  auto traj = propagate_lindblad_sampled(m, DensityMatrix::pure(psi0), 1.0, 2000, 11);
  REQUIRE(traj.size() == 11);
  REQUIRE(traj.front().first == 0.0);
  REQUIRE(std::abs(traj.back().first - 1.0) < 1e-12);
  DensityMatrix end = propagate_lindblad(m, DensityMatrix::pure(psi0), 1.0, 2000);
  REQUIRE((traj.back().second - end.rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("model validation catches bad inputs") {
  LindbladModel m;
  m.dim = 2;
  m.hamiltonian = [](double) -> MatX {
    MatX h(2, 2);
    h << 0.0, cplx(0, 1), cplx(0, 1), 0.0;  // not Hermitian
    return h;
  };
  REQUIRE_THROWS(m.validate());

  LindbladModel m2;
  m2.dim = 2;
  MatX cm = MatX::Zero(2, 2);
  cm(0, 1) = 1.0;
  m2.collapses = {{cm, -1.0}};
  REQUIRE_THROWS(m2.validate());
}
