#pragma once

// State and gate fidelities averaged over the real-amplitude initial-state
// families, and the decoherence / systematic-error sweep engines.

#include "npgqc/control_synthesis.hpp"
#include "npgqc/dynamics.hpp"
#include "npgqc/gate_algebra.hpp"
#include "npgqc/parallel.hpp"
#include "npgqc/types.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace npgqc {

/// <psi|rho|psi> for a unit-norm pure reference.
inline double state_fidelity(const VecX& psi_ideal, const MatX& rho) {
  if (psi_ideal.size() != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  return psi_ideal.dot(rho * psi_ideal).real();
}

inline double state_fidelity(const VecX& psi_ideal, const DensityMatrix& rho) {
  return state_fidelity(psi_ideal, rho.rho);
}

/// cos(Theta)|0> + sin(Theta)|1> embedded in dimension d (extra levels empty).
inline VecX theta_state(double theta, int d = 2) {
  VecX v = VecX::Zero(d);
  v(0) = std::cos(theta);
  v(1) = std::sin(theta);
  return v;
}

/// Channel: initial qubit-subspace state (embedded in the channel dimension)
/// -> final density matrix of the same dimension.
using QubitChannel = std::function<MatX(const VecX&)>;

/// Channel whose action is the precomputed vectorized Lindblad propagator.
inline QubitChannel superop_channel(MatX superop, int dim) {
  return [s = std::move(superop), dim](const VecX& psi0) -> MatX {
    if (psi0.size() != dim) throw std::invalid_argument("superop_channel: dimension mismatch");
    return apply_superop(s, MatX(psi0 * psi0.adjoint()));
  };
}

/// Gate fidelity averaged over Theta in [0, 2*pi] at `samples` equally spaced
/// points (endpoints included). The ideal final state is gate * psi(0) in the
/// qubit subspace, embedded in the channel dimension.
inline double gate_fidelity_F1(const Mat2& gate, const QubitChannel& channel, int dim = 2,
                               int samples = 1001) {
  if (samples < 2) throw std::invalid_argument("gate_fidelity_F1: samples must be >= 2");
  double acc = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double th = two_pi * k / (samples - 1);
    const VecX psi0 = theta_state(th, dim);
    const Vec2 tgt2 = gate * Vec2(psi0(0), psi0(1));
    VecX tgt = VecX::Zero(dim);
    tgt(0) = tgt2(0);
    tgt(1) = tgt2(1);
    acc += state_fidelity(tgt, channel(psi0));
  }
  return acc / samples;
}

/// Product state (cos T1, sin T1) x (cos T2, sin T2) in the 4-dim
/// computational ordering |q1 q2>.
inline Eigen::Vector4cd product_state(double t1, double t2) {
  Eigen::Vector4cd v;
  const double c1 = std::cos(t1), s1 = std::sin(t1);
  const double c2 = std::cos(t2), s2 = std::sin(t2);
  v << c1 * c2, c1 * s2, s1 * c2, s1 * s2;
  return v;
}

/// Sampling lattices for the two-qubit average. `tensor` is a full 101 x 101
/// product grid; `paper` is the 101 x 99 rectangular lattice plus the two
/// corners (0,0) and (2*pi,2*pi), totalling exactly 10001 points.
enum class F2Mode { tensor, paper };

inline std::vector<std::pair<double, double>> f2_lattice(F2Mode mode) {
  std::vector<std::pair<double, double>> pts;
  if (mode == F2Mode::tensor) {
    const int n = 101;
    pts.reserve(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pts.emplace_back(two_pi * i / (n - 1), two_pi * j / (n - 1));
  } else {
    const int n1 = 101, n2 = 99;
    pts.reserve(n1 * n2 + 2);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j)
        pts.emplace_back(two_pi * i / (n1 - 1), two_pi * j / (n2 - 1));
    pts.emplace_back(0.0, 0.0);
    pts.emplace_back(two_pi, two_pi);
  }
  return pts;
}

/// Two-qubit channel: 4-dim computational product state -> 4x4 density block
/// (leakage shows up as lost trace).
using TwoQubitChannel = std::function<Mat4(const Eigen::Vector4cd&)>;

/// Gate fidelity averaged over the product-state lattice.
inline double gate_fidelity_F2(const Mat4& gate, const TwoQubitChannel& channel,
                               F2Mode mode = F2Mode::tensor) {
  const auto pts = f2_lattice(mode);
  double acc = 0.0;
  for (const auto& [t1, t2] : pts) {
    const Eigen::Vector4cd psi0 = product_state(t1, t2);
    const Eigen::Vector4cd tgt = gate * psi0;
    const Mat4 rho = channel(psi0);
    acc += tgt.dot(rho * tgt).real();
  }
  return acc / static_cast<double>(pts.size());
}

enum class Scheme { NPGQC, DG };

inline std::string to_string(Scheme s) { return s == Scheme::NPGQC ? "NPGQC" : "DG"; }

/// A scheme's pulse realization of a named gate on the two-level system,
/// normalized to unit duration (the kappa axis is expressed in units of the
/// field's own average amplitude, so the timescale drops out).
struct GateRealization {
  ControlField field;
  Mat2 target;
};

inline GateRealization make_realization(Scheme scheme, GateName gate, double tau = 1.0) {
  if (scheme == Scheme::NPGQC) {
    const PathParams p = path_for_gate(gate, tau);
    return {synthesize_controls(p), evolution_operator_simplified(params_for_gate(gate))};
  }
  return {dg_composite_control(gate, tau), dg_composite_operator(gate)};
}

/// Two-level collapse pair: decay |0><1| and dephasing |0><0| - |1><1|.
inline std::vector<std::pair<MatX, double>> qubit_collapses(double kappa1, double kappa2) {
  MatX cm = MatX::Zero(2, 2);
  cm(0, 1) = 1.0;
  MatX cz = MatX::Zero(2, 2);
  cz(0, 0) = 1.0;
  cz(1, 1) = -1.0;
  return {{cm, kappa1}, {cz, kappa2}};
}

inline LindbladModel qubit_model(const ControlField& field, double kappa1, double kappa2) {
  LindbladModel m;
  m.dim = 2;
  m.hamiltonian = [field](double t) -> MatX { return hamiltonian_from_controls(field, t); };
  m.collapses = qubit_collapses(kappa1, kappa2);
  return m;
}

/// One fidelity sweep: named axes and a row-major result grid.
struct SweepGrid {
  std::string name;
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axis_values;
  std::vector<double> values;  // row-major over the axis product

  double& at(int i) { return values[i]; }
  double at(int i, int j) const { return values[i * axis_values[1].size() + j]; }

  void validate() const {
    size_t n = 1;
    for (const auto& a : axis_values) {
      if (a.size() < 2) throw std::invalid_argument("SweepGrid: axis needs >= 2 points");
      n *= a.size();
    }
    if (values.size() != n) throw std::invalid_argument("SweepGrid: unpopulated grid");
  }
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

/// F1 against kappa1 = kappa2 = x * omega_bar / 1e4 over the given x grid.
inline SweepGrid sweep_decoherence(Scheme scheme, GateName gate,
                                   const std::vector<double>& kappa_units, int steps = 20000,
                                   int jobs = 1, int f1_samples = 1001) {
  const GateRealization r = make_realization(scheme, gate);
  SweepGrid g;
  g.name = to_string(scheme) + "_" + to_string(gate) + "_decoherence";
  g.axis_names = {"kappa_over_obar_1e4"};
  g.axis_values = {kappa_units};
  g.values.assign(kappa_units.size(), 0.0);
  parallel_for(static_cast<int>(kappa_units.size()), jobs, [&](int i) {
    const double kap = kappa_units[i] * r.field.omega_bar / 1e4;
    const MatX sop = lindblad_superop_propagator(qubit_model(r.field, kap, kap), r.field.tau, steps);
    g.values[i] = gate_fidelity_F1(r.target, superop_channel(sop, 2), 2, f1_samples);
  });
  g.validate();
  return g;
}

/// F1 over a (delta, eps) systematic-error grid at fixed kappa1 = kappa2 =
/// kappa_units * omega_bar / 1e4. Grids must be symmetric about zero.
inline SweepGrid sweep_systematic(Scheme scheme, GateName gate,
                                  const std::vector<double>& delta_grid,
                                  const std::vector<double>& eps_grid, double kappa_units = 2.0,
                                  int steps = 20000, int jobs = 1, int f1_samples = 1001) {
  for (const auto* grid : {&delta_grid, &eps_grid}) {
    const double asym = std::abs(grid->front() + grid->back());
    if (asym > 1e-12) throw std::invalid_argument("sweep_systematic: grid not symmetric about 0");
  }
  const GateRealization r = make_realization(scheme, gate);
  const double kap = kappa_units * r.field.omega_bar / 1e4;
  SweepGrid g;
  g.name = to_string(scheme) + "_" + to_string(gate) + "_systematic";
  g.axis_names = {"delta_frac", "eps_frac"};
  g.axis_values = {delta_grid, eps_grid};
  const int nd = static_cast<int>(delta_grid.size());
  const int ne = static_cast<int>(eps_grid.size());
  g.values.assign(static_cast<size_t>(nd) * ne, 0.0);
  parallel_for(nd * ne, jobs, [&](int idx) {
    const int i = idx / ne, j = idx % ne;
    const ControlField f = inject_errors(r.field, {delta_grid[i], eps_grid[j]});
    const MatX sop = lindblad_superop_propagator(qubit_model(f, kap, kap), f.tau, steps);
    g.values[idx] = gate_fidelity_F1(r.target, superop_channel(sop, 2), 2, f1_samples);
  });
  g.validate();
  return g;
}

/// Fraction of grid points with fidelity >= threshold.
inline double area_fraction(const SweepGrid& g, double threshold = 0.999) {
  int n = 0;
  for (double v : g.values) n += (v >= threshold);
  return static_cast<double>(n) / g.values.size();
}

} // namespace npgqc
