#pragma once

// Analytic evolution operators for the noncyclic paths, the named-gate
// parameter table and global-phase-invariant gate comparison.

#include "npgqc/path_engine.hpp"
#include "npgqc/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace npgqc {

enum class GateName { H, T, S };

inline std::string to_string(GateName g) {
  switch (g) {
    case GateName::H: return "H";
    case GateName::T: return "T";
    case GateName::S: return "S";
  }
  return "?";
}

inline GateName gate_from_string(const std::string& s) {
  if (s == "H") return GateName::H;
  if (s == "T") return GateName::T;
  if (s == "S") return GateName::S;
  throw std::invalid_argument("unknown gate name: " + s);
}

/// (Gamma, xi, phi_span) triple realizing a named single-qubit gate.
struct GateSpec {
  double gamma_big;
  double xi;
  double phi_span;
};

inline GateSpec params_for_gate(GateName g) {
  switch (g) {
    case GateName::H: return {pi / 4.0, 0.0, 3.0 * pi};
    case GateName::T: return {0.0, 0.0, 9.0 * pi / 4.0};
    case GateName::S: return {0.0, 0.0, 5.0 * pi / 2.0};
  }
  throw std::invalid_argument("unknown gate");
}

inline PathParams path_for_gate(GateName g, double tau = 1.0, double phi0 = 0.0) {
  const GateSpec s = params_for_gate(g);
  return PathParams::from_phi_span(s.gamma_big, s.xi, s.phi_span, tau, phi0);
}

/// Evolution operator as the phase-weighted outer-product sum of the moving
/// pair between the endpoint configurations. `gamma_tau` is the accumulated
/// total phase of the first state (the second carries its negative). The
/// result has the form [[u1, u2], [-conj(u2), conj(u1)]] by construction.
inline Mat2 evolution_operator_general(const PathParams& p, double gamma_tau) {
  auto [p1_0, p2_0] = aux_states_at_phi(p, p.phi0);
  auto [p1_t, p2_t] = aux_states_at_phi(p, p.phi0 + p.phi_span);
  const cplx eg = std::exp(im * gamma_tau);
  Mat2 u = eg * (p1_t * p1_0.adjoint()) + std::conj(eg) * (p2_t * p2_0.adjoint());
  return u;
}

/// Closed-form operator for the constant-theta paths with the linear
/// schedule: u1 = -cos(phi_span/2) + i cos(Gamma) sin(phi_span/2),
/// u2 = sin(Gamma) sin(phi_span/2) (sin(xi) + i cos(xi)).
inline Mat2 evolution_operator_simplified(const GateSpec& g) {
  const double half = g.phi_span / 2.0;
  const cplx u1 = -std::cos(half) + im * std::cos(g.gamma_big) * std::sin(half);
  const cplx u2 = std::sin(g.gamma_big) * std::sin(half) * cplx(std::sin(g.xi), std::cos(g.xi));
  Mat2 u;
  u << u1, u2, -std::conj(u2), std::conj(u1);
  return u;
}

inline Mat2 evolution_operator_simplified(GateName g) {
  return evolution_operator_simplified(params_for_gate(g));
}

/// min over real phi of ||U - e^{i phi} V||_F, evaluated in closed form as
/// sqrt(2 d - 2 |tr(V^dag U)|). Zero iff the gates agree up to a global phase.
inline double gate_distance_up_to_phase(const MatX& u, const MatX& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw std::invalid_argument("gate_distance_up_to_phase: dimension mismatch");
  const double d = static_cast<double>(u.rows());
  const double t = std::abs((v.adjoint() * u).trace());
  return std::sqrt(std::max(0.0, 2.0 * d - 2.0 * t));
}

/// diag(1, 1, 1, e^{i gamma_g}) in the ordered basis {|00>, |01>, |10>, |11>}.
inline Mat4 cphase_operator(double gamma_g) {
  Mat4 u = Mat4::Identity();
  u(3, 3) = std::exp(im * gamma_g);
  return u;
}

/// Reference matrices for the named gates in the standard convention.
inline Mat2 standard_gate(GateName g) {
  Mat2 u;
  switch (g) {
    case GateName::H:
      u << 1, 1, 1, -1;
      return u / std::sqrt(2.0);
    case GateName::T:
      u << 1, 0, 0, std::exp(im * pi / 4.0);
      return u;
    case GateName::S:
      u << 1, 0, 0, im;
      return u;
  }
  throw std::invalid_argument("unknown gate");
}

} // namespace npgqc
