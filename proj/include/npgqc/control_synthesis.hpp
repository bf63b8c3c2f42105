#pragma once

// Physical control fields: the reverse-engineered detuning/drive pair for a
// path, the resonant dynamical-gate pulses used as robustness baseline, and
// systematic-error injection.

#include "npgqc/gate_algebra.hpp"
#include "npgqc/path_engine.hpp"
#include "npgqc/types.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace npgqc {

/// Time-samplable control pair. `omega_dot` is the analytic time derivative
/// of the complex drive when the schedule is closed-form (used by the DRAG
/// correction); absent samplers fall back to central differences downstream.
struct ControlField {
  std::function<double(double)> delta;
  std::function<cplx(double)> omega;
  std::function<cplx(double)> omega_dot;  // may be empty
  double tau = 1.0;
  double omega_bar = 0.0;  // time average of |omega| over [0, tau]

  /// Numeric time average of |omega(t)| (composite Simpson).
  double averaged_drive_magnitude(int steps = 20000) const {
    int n = steps + (steps % 2);
    const double h = tau / n;
    double acc = std::abs(omega(0.0)) + std::abs(omega(tau));
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * std::abs(omega(k * h));
    return acc * h / 3.0 / tau;
  }

  /// Peak of |omega(t)| over a dense uniform sampling.
  double peak_drive_magnitude(int samples = 200001) const {
    double peak = 0.0;
    for (int k = 0; k < samples; ++k)
      peak = std::max(peak, std::abs(omega(tau * k / (samples - 1))));
    return peak;
  }
};

/// Fractional systematic errors of Eq-style error injection: a constant
/// detuning drift delta_frac * omega_bar and a drive scaling (1 + eps_frac).
struct ErrorSetting {
  double delta_frac = 0.0;
  double eps_frac = 0.0;
};

/// Reverse-engineered controls for a constant-theta path:
///   Delta(t) = [cos(phi)/2 * sin(2 theta) sin(Gamma) - cos(Gamma) sin^2(theta)] * phi_dot
///   Omega(t) = phi_dot * e^{-i xi} [sin(Gamma) sin^2(theta)
///              + sin(2 theta)/2 * (cos(Gamma) cos(phi) - i sin(phi))]
inline ControlField synthesize_controls(const PathParams& p) {
  const double st = p.sin_theta();
  const double ct = p.cos_theta();
  if (std::abs(ct) < 1e-9)
    throw std::domain_error("synthesize_controls: degenerate schedule");
  const double s2t = 2.0 * st * ct;
  const double cg = std::cos(p.gamma_big);
  const double sg = std::sin(p.gamma_big);
  const double pd = p.phi_dot();
  const double a1 = 0.5 * s2t * cg;
  const double a2 = 0.5 * s2t;
  const double p0 = sg * st * st;
  const cplx exi = std::exp(-im * p.xi);
  const double phi0 = p.phi0;

  ControlField c;
  c.tau = p.tau;
  c.delta = [=](double t) {
    const double phi = phi0 + pd * t;
    return (0.5 * std::cos(phi) * s2t * sg - cg * st * st) * pd;
  };
  c.omega = [=](double t) {
    const double phi = phi0 + pd * t;
    return pd * exi * cplx(p0 + a1 * std::cos(phi), -a2 * std::sin(phi));
  };
  c.omega_dot = [=](double t) {
    const double phi = phi0 + pd * t;
    return pd * pd * exi * cplx(-a1 * std::sin(phi), -a2 * std::cos(phi));
  };
  c.omega_bar = c.averaged_drive_magnitude();
  return c;
}

/// H(t) = 1/2 [[-Delta, Omega], [conj(Omega), Delta]]; Hermitian, traceless.
inline Mat2 hamiltonian_from_controls(const ControlField& c, double t) {
  const double d = c.delta(t);
  const cplx o = c.omega(t);
  Mat2 h;
  h << -0.5 * d, 0.5 * o, 0.5 * std::conj(o), 0.5 * d;
  return h;
}

/// Delta(t) -> Delta(t) + delta_frac * omega_bar, Omega(t) -> (1+eps) Omega(t).
/// The returned field's omega_bar is recomputed from the scaled drive.
inline ControlField inject_errors(const ControlField& c, const ErrorSetting& e) {
  ControlField out;
  out.tau = c.tau;
  const double shift = e.delta_frac * c.omega_bar;
  const double scale = 1.0 + e.eps_frac;
  auto delta0 = c.delta;
  auto omega0 = c.omega;
  out.delta = [=](double t) { return delta0(t) + shift; };
  out.omega = [=](double t) { return scale * omega0(t); };
  if (c.omega_dot) {
    auto od = c.omega_dot;
    out.omega_dot = [=](double t) { return scale * od(t); };
  }
  out.omega_bar = std::abs(scale) * c.omega_bar;
  return out;
}

/// Resonant half-sine pulse of rotation angle theta_d about the equatorial
/// axis set by phi_d.
struct DynamicalPulse {
  double theta_d;
  double phi_d;
  double omega_max;  // peak amplitude Omega_m

  /// Consistency theta_d = 2 Omega_m tau / pi fixes the peak for a duration.
  static DynamicalPulse for_duration(double theta_d, double phi_d, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("DynamicalPulse: tau must be positive");
    return {theta_d, phi_d, pi * theta_d / (2.0 * tau)};
  }

  double duration() const { return pi * theta_d / (2.0 * omega_max); }
};

/// Control field of one dynamical pulse: Delta = 0, Omega = Omega_m sin(pi t/tau) e^{-i phi_d}.
inline ControlField dg_control(const DynamicalPulse& pulse, double tau) {
  if (!(pulse.omega_max > 0.0)) throw std::invalid_argument("dg_control: omega_max must be positive");
  if (std::abs(pulse.theta_d - 2.0 * pulse.omega_max * tau / pi) > 1e-10 * std::max(1.0, std::abs(pulse.theta_d)))
    throw std::invalid_argument("dg_control: theta_d inconsistent with omega_max and tau");
  ControlField c;
  c.tau = tau;
  const double om = pulse.omega_max;
  const cplx ph = std::exp(-im * pulse.phi_d);
  c.delta = [](double) { return 0.0; };
  c.omega = [=](double t) { return om * std::sin(pi * t / tau) * ph; };
  c.omega_dot = [=](double t) { return om * (pi / tau) * std::cos(pi * t / tau) * ph; };
  c.omega_bar = 2.0 * om / pi;
  return c;
}

/// Closed-form pulse operator [[cos(th/2), -i sin(th/2) e^{-i phi}],
///                             [-i sin(th/2) e^{i phi}, cos(th/2)]].
inline Mat2 dg_operator(const DynamicalPulse& pulse) {
  const double c = std::cos(pulse.theta_d / 2.0);
  const double s = std::sin(pulse.theta_d / 2.0);
  Mat2 u;
  u << c, -im * s * std::exp(-im * pulse.phi_d),
       -im * s * std::exp(im * pulse.phi_d), c;
  return u;
}

/// Dynamical-gate pulse trains in time order (first entry applied first).
/// The H gate is the printed two-pulse train. For T and S the printed
/// theta_z assignment fails validation against diag(1, e^{i pi/4}) /
/// diag(1, e^{i pi/2}); the swapped assignment (T: pi/4, S: pi/2) is used.
inline std::vector<std::pair<double, double>> dg_train(GateName g) {
  switch (g) {
    case GateName::H: return {{pi / 2.0, pi / 2.0}, {pi, pi}};
    case GateName::T: return {{pi / 2.0, 0.0}, {pi / 4.0, -pi / 2.0}, {pi / 2.0, pi}};
    case GateName::S: return {{pi / 2.0, 0.0}, {pi / 2.0, -pi / 2.0}, {pi / 2.0, pi}};
  }
  throw std::invalid_argument("unknown gate");
}

/// Composite control field over [0, tau_total]: segments share one peak
/// amplitude, so segment durations are proportional to their angles.
inline ControlField dg_composite_control(GateName g, double tau_total) {
  const auto train = dg_train(g);
  double total_angle = 0.0;
  for (const auto& seg : train) total_angle += seg.first;
  const double om = pi * total_angle / (2.0 * tau_total);

  struct Segment { double t0, t1, phi_d; };
  std::vector<Segment> segs;
  double t0 = 0.0;
  for (const auto& [th, ph] : train) {
    const double dt = th / total_angle * tau_total;
    segs.push_back({t0, t0 + dt, ph});
    t0 += dt;
  }
  segs.back().t1 = tau_total;

  ControlField c;
  c.tau = tau_total;
  c.delta = [](double) { return 0.0; };
  c.omega = [=](double t) -> cplx {
    for (const auto& s : segs) {
      if (t <= s.t1 || &s == &segs.back()) {
        if (t < s.t0) return 0.0;
        const double w = pi / (s.t1 - s.t0);
        return om * std::sin(w * (t - s.t0)) * std::exp(-im * s.phi_d);
      }
    }
    return 0.0;
  };
  c.omega_dot = [=](double t) -> cplx {
    for (const auto& s : segs) {
      if (t <= s.t1 || &s == &segs.back()) {
        if (t < s.t0) return 0.0;
        const double w = pi / (s.t1 - s.t0);
        return om * w * std::cos(w * (t - s.t0)) * std::exp(-im * s.phi_d);
      }
    }
    return 0.0;
  };
  c.omega_bar = total_angle / tau_total;  // average of |sin| envelope segments
  return c;
}

/// Product of the train's pulse operators (time order = right to left).
inline Mat2 dg_composite_operator(GateName g) {
  Mat2 u = Mat2::Identity();
  for (const auto& [th, ph] : dg_train(g)) {
    DynamicalPulse pulse{th, ph, 1.0};
    u = dg_operator(pulse) * u;
  }
  return u;
}

} // namespace npgqc
