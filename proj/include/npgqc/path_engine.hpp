#pragma once

// Evolution-path parameterization on the Bloch sphere: the fixed basis pair,
// the moving orthonormal state pair, the linear azimuth schedule that cancels
// the dynamical phase, and the two phase functionals.

#include "npgqc/types.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace npgqc {

/// Degrees of freedom of one evolution path. `gamma_big` and `xi` select the
/// fixed basis pair, `theta` is the (constant) polar angle, the azimuth runs
/// linearly from `phi0` over `phi_span` during `tau`.
struct PathParams {
  double gamma_big = 0.0;
  double xi = 0.0;
  double theta = 0.0;
  double phi0 = 0.0;
  double phi_span = two_pi;
  double tau = 1.0;

  /// Principal-branch construction from the span: theta = acos(2*pi/phi_span).
  /// Rejects |phi_span| < 2*pi (no real polar angle exists for the schedule).
  static PathParams from_phi_span(double gamma_big, double xi, double phi_span,
                                  double tau = 1.0, double phi0 = 0.0) {
    if (!(tau > 0.0)) throw std::invalid_argument("PathParams: tau must be positive");
    if (std::abs(phi_span) < two_pi)
      throw std::invalid_argument("PathParams: |phi_span| < 2*pi has no valid schedule");
    PathParams p;
    p.gamma_big = gamma_big;
    p.xi = xi;
    p.phi_span = phi_span;
    p.tau = tau;
    p.phi0 = phi0;
    p.theta = std::acos(two_pi / phi_span);
    return p;
  }

  /// As above but with theta supplied explicitly; must agree with the span.
  static PathParams from_theta(double gamma_big, double xi, double theta,
                               double phi_span, double tau = 1.0, double phi0 = 0.0) {
    PathParams p = from_phi_span(gamma_big, xi, phi_span, tau, phi0);
    if (std::abs(theta - p.theta) > 1e-12)
      throw std::invalid_argument("PathParams: theta inconsistent with 2*pi/phi_span");
    p.theta = theta;
    return p;
  }

  double phi_dot() const { return phi_span / tau; }
  double cos_theta() const { return std::cos(theta); }
  double sin_theta() const { return std::sin(theta); }

  /// Rescale to a new duration (pulse amplitudes scale as 1/tau).
  PathParams with_tau(double new_tau) const {
    PathParams p = *this;
    if (!(new_tau > 0.0)) throw std::invalid_argument("PathParams: tau must be positive");
    p.tau = new_tau;
    return p;
  }
};

/// Mixing angle and relative phase of a general superposition of the two
/// evolution states.
struct SuperpositionLabel {
  double lambda_big = 0.0;
  double zeta = 0.0;
};

/// The fixed orthonormal basis pair selected by (Gamma, xi).
inline std::pair<Vec2, Vec2> mu_basis(const PathParams& p) {
  const double cg = std::cos(p.gamma_big / 2.0);
  const double sg = std::sin(p.gamma_big / 2.0);
  const cplx em = std::exp(-im * p.xi / 2.0);
  const cplx ep = std::exp(im * p.xi / 2.0);
  Vec2 mu1, mu2;
  mu1 << cg * em, sg * ep;
  mu2 << sg * em, -cg * ep;
  return {mu1, mu2};
}

/// Azimuth schedule phi(t) = 2*pi*t/(tau*cos(theta)) + phi0. Linear in t and
/// spans exactly phi_span over [0, tau]. Degenerate when cos(theta) ~ 0 (the
/// drive rate diverges).
inline double phi_schedule(const PathParams& p, double t) {
  const double c = p.cos_theta();
  if (std::abs(c) < 1e-9)
    throw std::domain_error("phi_schedule: degenerate schedule, |cos(theta)| too small");
  return two_pi * t / (p.tau * c) + p.phi0;
}

/// The moving orthonormal pair at azimuth phi (theta held constant).
inline std::pair<Vec2, Vec2> aux_states_at_phi(const PathParams& p, double phi) {
  auto [mu1, mu2] = mu_basis(p);
  const cplx a = std::cos(p.theta / 2.0) * std::exp(-im * phi / 2.0);
  const cplx b = std::sin(p.theta / 2.0) * std::exp(im * phi / 2.0);
  Vec2 psi1 = a * mu1 + b * mu2;
  Vec2 psi2 = std::conj(b) * mu1 - std::conj(a) * mu2;
  return {psi1, psi2};
}

/// The moving orthonormal pair at time t under the linear schedule.
inline std::pair<Vec2, Vec2> aux_states(const PathParams& p, double t) {
  return aux_states_at_phi(p, phi_schedule(p, t));
}

/// Geometric phase 0.5*cos(theta)*(phi(t) - phi0); equals pi at t = tau for
/// every valid span.
inline double geometric_phase(const PathParams& p, double t) {
  return 0.5 * p.cos_theta() * (phi_schedule(p, t) - p.phi0);
}

/// Dynamical phase of the superposition labelled by `s`, integrated with
/// composite Simpson over [0, tau]. Under the linear schedule the integrand
/// is 0.5*sin(Lambda)*sin(theta)*cos(zeta + 2*gamma(t))*phi_dot and the
/// integral vanishes.
inline double dynamical_phase(const PathParams& p, const SuperpositionLabel& s,
                              int quadrature_steps = 10000) {
  if (quadrature_steps < 100)
    throw std::invalid_argument("dynamical_phase: quadrature_steps must be >= 100");
  int n = quadrature_steps;
  if (n % 2 != 0) ++n;
  const double sl = std::sin(s.lambda_big);
  if (sl == 0.0) return 0.0;
  const double st = p.sin_theta();
  const double pd = p.phi_dot();
  const double h = p.tau / n;
  auto f = [&](double t) {
    const double g = geometric_phase(p, t);
    return std::cos(s.zeta + 2.0 * g) * pd * st;
  };
  double acc = f(0.0) + f(p.tau);
  for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return 0.5 * sl * acc * h / 3.0;
}

} // namespace npgqc
