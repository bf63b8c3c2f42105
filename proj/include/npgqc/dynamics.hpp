#pragma once

// Fixed-step RK4 propagation of Schrodinger and Lindblad dynamics for small
// dense systems, plus the vectorized-superoperator propagator that every
// fidelity average is built on.

#include "npgqc/types.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace npgqc {

using HamiltonianSampler = std::function<MatX(double)>;

/// Hamiltonian sampler plus weighted collapse operators. The dissipator uses
/// the convention L(rho) = sum_k rate_k (2 c rho c^dag - c^dag c rho - rho c^dag c),
/// i.e. a bare decay operator |0><1| at rate k empties the excited population
/// as exp(-2 k t).
struct LindbladModel {
  int dim = 2;
  HamiltonianSampler hamiltonian;
  std::vector<std::pair<MatX, double>> collapses;

  void validate(double t_probe = 0.0) const {
    if (dim < 2) throw std::invalid_argument("LindbladModel: dim must be >= 2");
    if (hamiltonian) {
      const MatX h = hamiltonian(t_probe);
      if (h.rows() != dim || h.cols() != dim)
        throw std::invalid_argument("LindbladModel: hamiltonian dimension mismatch");
      if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("LindbladModel: hamiltonian not Hermitian");
    }
    for (const auto& [c, rate] : collapses) {
      if (c.rows() != dim || c.cols() != dim)
        throw std::invalid_argument("LindbladModel: collapse dimension mismatch");
      if (rate < 0.0) throw std::invalid_argument("LindbladModel: negative rate");
    }
  }
};

/// Positive Hermitian unit-trace state.
struct DensityMatrix {
  MatX rho;

  int dim() const { return static_cast<int>(rho.rows()); }

  static DensityMatrix pure(const VecX& psi) {
    DensityMatrix d;
    d.rho = psi * psi.adjoint();
    return d;
  }

  static DensityMatrix from_matrix(const MatX& m) {
    DensityMatrix d;
    d.rho = m;
    d.validate();
    return d;
  }

  void validate() const {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("DensityMatrix: not square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
      throw std::invalid_argument("DensityMatrix: trace != 1");
    Eigen::SelfAdjointEigenSolver<MatX> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
};

namespace detail {

// One RK4 step of y' = f(t, y) with midpoint Hamiltonian sampling.
template <typename State, typename Rhs>
inline void rk4_step(State& y, double t, double h, Rhs&& f) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, State(y + 0.5 * h * k1));
  const State k3 = f(t + 0.5 * h, State(y + 0.5 * h * k2));
  const State k4 = f(t + h, State(y + h * k3));
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace detail

/// Propagate a pure state to time tau. Requires unit-norm input.
inline VecX propagate_state(const HamiltonianSampler& h, const VecX& psi0, double tau,
                            int steps) {
  if (steps < 1) throw std::invalid_argument("propagate_state: steps must be >= 1");
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("propagate_state: input state is not unit norm");
  VecX psi = psi0;
  const double dt = tau / steps;
  auto rhs = [&](double t, const VecX& y) -> VecX { return -im * (h(t) * y); };
  for (int k = 0; k < steps; ++k) detail::rk4_step(psi, k * dt, dt, rhs);
  return psi;
}

/// Time-ordered propagator by column-wise propagation of the identity.
inline MatX propagator(const HamiltonianSampler& h, int dim, double tau, int steps,
                       double t0 = 0.0) {
  if (steps < 1) throw std::invalid_argument("propagator: steps must be >= 1");
  MatX u = MatX::Identity(dim, dim);
  const double dt = tau / steps;
  auto rhs = [&](double t, const MatX& y) -> MatX { return -im * (h(t) * y); };
  for (int k = 0; k < steps; ++k) detail::rk4_step(u, t0 + k * dt, dt, rhs);
  return u;
}

namespace detail {

// Lindblad right-hand side with precomputed c^dag c products.
struct LindbladRhs {
  const LindbladModel* model;
  std::vector<MatX> cdc;  // c^dag c per channel

  explicit LindbladRhs(const LindbladModel& m) : model(&m) {
    cdc.reserve(m.collapses.size());
    for (const auto& [c, rate] : m.collapses) cdc.push_back(c.adjoint() * c);
  }

  MatX operator()(double t, const MatX& rho) const {
    MatX out;
    if (model->hamiltonian) {
      const MatX h = model->hamiltonian(t);
      out = -im * (h * rho - rho * h);
    } else {
      out = MatX::Zero(rho.rows(), rho.cols());
    }
    for (size_t k = 0; k < model->collapses.size(); ++k) {
      const auto& [c, rate] = model->collapses[k];
      if (rate == 0.0) continue;
      out.noalias() += rate * (2.0 * (c * rho * c.adjoint()) - cdc[k] * rho - rho * cdc[k]);
    }
    return out;
  }
};

} // namespace detail

/// Propagate a density matrix to time tau. Throws if the trace drifts by more
/// than 1e-6 (step count too small for the model's time scales).
inline DensityMatrix propagate_lindblad(const LindbladModel& m, const DensityMatrix& rho0,
                                        double tau, int steps) {
  if (steps < 1) throw std::invalid_argument("propagate_lindblad: steps must be >= 1");
  m.validate();
  detail::LindbladRhs rhs(m);
  MatX rho = rho0.rho;
  const double dt = tau / steps;
  for (int k = 0; k < steps; ++k) detail::rk4_step(rho, k * dt, dt, rhs);
  const double drift = std::abs(rho.trace().real() - rho0.rho.trace().real());
  if (!(drift <= 1e-6))
    throw std::runtime_error("propagate_lindblad: trace drift exceeds 1e-6, refine steps");
  DensityMatrix out;
  out.rho = std::move(rho);
  return out;
}

/// As above, sampling the trajectory at `samples` uniformly spaced times
/// (including t = 0 and t = tau). steps is rounded up to a multiple of the
/// sample interval count.
inline std::vector<std::pair<double, MatX>> propagate_lindblad_sampled(
    const LindbladModel& m, const DensityMatrix& rho0, double tau, int steps, int samples) {
  if (samples < 2) throw std::invalid_argument("propagate_lindblad_sampled: samples must be >= 2");
  m.validate();
  const int intervals = samples - 1;
  const int per = (steps + intervals - 1) / intervals;
  detail::LindbladRhs rhs(m);
  MatX rho = rho0.rho;
  const double dt = tau / (static_cast<double>(per) * intervals);
  std::vector<std::pair<double, MatX>> out;
  out.reserve(samples);
  out.emplace_back(0.0, rho);
  for (int s = 0; s < intervals; ++s) {
    for (int k = 0; k < per; ++k) {
      const double t = (static_cast<double>(s) * per + k) * dt;
      detail::rk4_step(rho, t, dt, rhs);
    }
    out.emplace_back((s + 1) * (tau / intervals), rho);
  }
  return out;
}

/// Row-major vectorization index: vec(rho)[i*d + j] = rho(i, j).
/// Superoperator of the full Lindblad map as a (d^2 x d^2) matrix acting on
/// vec(rho); the dissipator part is time independent and precomputed.
class LindbladSuperop {
 public:
  explicit LindbladSuperop(const LindbladModel& m) : model_(m), d_(m.dim) {
    m.validate();
    const int dd = d_ * d_;
    dissipator_ = MatX::Zero(dd, dd);
    const MatX id = MatX::Identity(d_, d_);
    for (const auto& [c, rate] : m.collapses) {
      if (rate == 0.0) continue;
      const MatX cdc = c.adjoint() * c;
      dissipator_ += rate * (2.0 * kron(c, c.conjugate()) - kron(cdc, id) - kron(id, cdc.transpose()));
    }
  }

  /// L(t) = -i (H \otimes I - I \otimes H^T) + dissipator.
  void build(double t, MatX& out) const {
    out = dissipator_;
    const MatX h = model_.hamiltonian ? model_.hamiltonian(t) : MatX::Zero(d_, d_);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        const cplx hij = h(i, j);
        if (hij == cplx(0.0, 0.0)) continue;
        for (int k = 0; k < d_; ++k) {
          out(i * d_ + k, j * d_ + k) -= im * hij;         // -i H rho
          out(k * d_ + j, k * d_ + i) += im * hij;         // +i rho H  (uses H^T entry (j,i))
        }
      }
  }

  int dim() const { return d_; }

  static MatX kron(const MatX& a, const MatX& b) {
    MatX out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  }

 private:
  LindbladModel model_;
  int d_;
  MatX dissipator_;
};

/// Propagator of the vectorized master equation over [0, tau]: columns
/// `col0..col0+ncols` of M' = L(t) M starting from the identity block.
/// Splitting the column range across threads is exact (columns evolve
/// independently).
inline MatX lindblad_superop_propagator_block(const LindbladSuperop& sop, double tau,
                                              int steps, int col0, int ncols) {
  const int dd = sop.dim() * sop.dim();
  MatX m = MatX::Zero(dd, ncols);
  for (int c = 0; c < ncols; ++c) m(col0 + c, c) = 1.0;
  MatX l1(dd, dd), l2(dd, dd), l3(dd, dd);
  MatX k1(dd, ncols), k2(dd, ncols), k3(dd, ncols), k4(dd, ncols);
  const double h = tau / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    sop.build(t, l1);
    sop.build(t + 0.5 * h, l2);
    sop.build(t + h, l3);
    k1.noalias() = l1 * m;
    k2.noalias() = l2 * (m + 0.5 * h * k1);
    k3.noalias() = l2 * (m + 0.5 * h * k2);
    k4.noalias() = l3 * (m + h * k3);
    m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return m;
}

/// Full superoperator propagator (single-threaded convenience; for parallel
/// use, dispatch blocks of columns to lindblad_superop_propagator_block).
inline MatX lindblad_superop_propagator(const LindbladModel& m, double tau, int steps) {
  LindbladSuperop sop(m);
  const int dd = m.dim * m.dim;
  return lindblad_superop_propagator_block(sop, tau, steps, 0, dd);
}

/// Apply a vectorized map to a density matrix.
inline MatX apply_superop(const MatX& superop_cols, const MatX& rho) {
  const int d = static_cast<int>(rho.rows());
  VecX v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  VecX w = superop_cols * v;
  MatX out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = w(i * d + j);
  return out;
}

} // namespace npgqc
