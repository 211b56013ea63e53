#include "juntalab/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace juntalab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDimCap = std::size_t{1} << 24;
}  // namespace

RegisterLayout::RegisterLayout(std::vector<std::pair<std::string, std::size_t>> regs)
    : regs_(std::move(regs)) {
  total_ = 1;
  for (const auto& [name, dim] : regs_) {
    if (dim == 0) throw std::invalid_argument("register dimension must be positive");
    for (const auto& [other, od] : regs_)
      if (&other != &name && other == name) throw std::invalid_argument("duplicate register name");
    if (total_ > kDimCap / dim) throw std::invalid_argument("layout exceeds the dimension cap");
    total_ *= dim;
  }
  strides_.resize(regs_.size());
  std::size_t stride = total_;
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    stride /= regs_[i].second;
    strides_[i] = stride;
  }
}

int RegisterLayout::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < regs_.size(); ++i)
    if (regs_[i].first == name) return static_cast<int>(i);
  throw std::invalid_argument("no register named " + name);
}

std::size_t RegisterLayout::dim(const std::string& name) const {
  return regs_[index_of(name)].second;
}

std::size_t RegisterLayout::stride(const std::string& name) const {
  return strides_[index_of(name)];
}

std::size_t RegisterLayout::value_of(std::size_t basis_index, const std::string& name) const {
  const int i = index_of(name);
  return (basis_index / strides_[i]) % regs_[i].second;
}

StateVector StateVector::basis(const RegisterLayout& layout, std::size_t index) {
  StateVector s{layout, Eigen::VectorXcd::Zero(layout.total_dim())};
  s.amps(index) = 1.0;
  return s;
}

UnitaryOp UnitaryOp::from_matrix(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("unitary must be square");
  UnitaryOp u;
  u.mat_ = std::move(m);
  return u;
}

UnitaryOp UnitaryOp::composition(std::vector<UnitaryOp> factors) {
  if (factors.empty()) throw std::invalid_argument("empty composition");
  Eigen::MatrixXcd m = factors.front().mat_;
  for (std::size_t i = 1; i < factors.size(); ++i) m = m * factors[i].mat_;
  return from_matrix(std::move(m));
}

UnitaryOp UnitaryOp::block_diagonal(std::vector<Eigen::MatrixXcd> blocks) {
  std::size_t dim = 0;
  for (const auto& b : blocks) dim += b.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return from_matrix(std::move(m));
}

std::size_t UnitaryOp::dim() const { return mat_.rows(); }

Eigen::VectorXcd UnitaryOp::apply(const Eigen::VectorXcd& v) const { return mat_ * v; }

UnitaryOp UnitaryOp::inverse() const { return from_matrix(mat_.adjoint()); }

UnitaryOp UnitaryOp::controlled() const {
  const std::size_t d = dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * d, 2 * d);
  m.block(d, d, d, d) = mat_;
  return from_matrix(std::move(m));
}

Eigen::MatrixXcd UnitaryOp::matrix() const { return mat_; }

double UnitaryOp::unitarity_residual() const {
  return (mat_.adjoint() * mat_ - Eigen::MatrixXcd::Identity(dim(), dim())).norm();
}

StateVector apply_block_oracle(const StateVector& state, const BlockOracle& oracle) {
  const std::size_t subsets = std::size_t{1} << oracle.n();
  const std::size_t wdim = oracle.workspace_dim();
  if (state.layout.dim("I") != subsets || state.layout.dim("W") != wdim)
    throw std::invalid_argument("state layout does not match the oracle");
  const std::size_t istride = state.layout.stride("I");
  const std::size_t wstride = state.layout.stride("W");
  if (istride != wdim || wstride != 1)
    throw std::invalid_argument("expected layout (I, W) with W fastest");
  StateVector out = state;
  Eigen::VectorXcd slice(wdim);
  for (mask_t s = 0; s < subsets; ++s) {
    for (std::size_t w = 0; w < wdim; ++w) slice(w) = state.amps(s * wdim + w);
    if (s == 0) {
      slice = -slice;  // reserved |0> = |empty set| branch
    } else {
      slice = oracle.block(s) * slice;
    }
    for (std::size_t w = 0; w < wdim; ++w) out.amps(s * wdim + w) = slice(w);
  }
  return out;
}

BlockOracle reflectionize(const BlockOracle& oracle) {
  const int d = oracle.workspace_dim();
  const int dp = d + 1;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(dp, dp);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Hadamard on the (|0>, |new>) plane: V|0> = (|0> + |new>)/sqrt(2).
  v(0, 0) = inv_sqrt2;
  v(0, d) = inv_sqrt2;
  v(d, 0) = inv_sqrt2;
  v(d, d) = -inv_sqrt2;
  Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(dp);
  plus(0) = inv_sqrt2;
  plus(d) = inv_sqrt2;
  const Eigen::MatrixXcd r_plus =
      2.0 * plus * plus.adjoint() - Eigen::MatrixXcd::Identity(dp, dp);

  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(std::size_t{1} << oracle.n());
  for (mask_t s = 0; s < (mask_t{1} << oracle.n()); ++s) {
    Eigen::MatrixXcd ext = Eigen::MatrixXcd::Identity(dp, dp);
    ext.topLeftCorner(d, d) = oracle.block(s);
    blocks.push_back(v.adjoint() * ext.adjoint() * r_plus * ext * v);
  }
  return BlockOracle(oracle.n(), dp, std::move(blocks), oracle.side(), oracle.hidden(),
                     oracle.k(), oracle.d());
}

double amplified_probability(double p, int rounds) {
  const double theta = std::asin(std::sqrt(std::clamp(p, 0.0, 1.0)));
  const double s = std::sin((2.0 * rounds + 1.0) * theta);
  return s * s;
}

AmplitudeAmplification amplitude_amplify(const UnitaryOp& prepare,
                                         const std::vector<bool>& marked, int rounds) {
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  const std::size_t d = prepare.dim();
  if (marked.size() != d) throw std::invalid_argument("marked predicate size mismatch");
  Eigen::MatrixXcd r0 = Eigen::MatrixXcd::Identity(d, d);
  r0(0, 0) = -1.0;  // flips |0>
  Eigen::MatrixXcd rm = Eigen::MatrixXcd::Identity(d, d);
  for (std::size_t i = 0; i < d; ++i)
    if (marked[i]) rm(i, i) = -1.0;
  const Eigen::MatrixXcd a = prepare.matrix();
  const Eigen::MatrixXcd q = -a * r0 * a.adjoint() * rm;
  Eigen::MatrixXcd total = a;
  for (int r = 0; r < rounds; ++r) total = q * total;

  Eigen::VectorXcd start = Eigen::VectorXcd::Zero(d);
  start(0) = 1.0;
  const Eigen::VectorXcd final = total * start;
  double prob = 0;
  for (std::size_t i = 0; i < d; ++i)
    if (marked[i]) prob += std::norm(final(i));
  return {UnitaryOp::from_matrix(std::move(total)), prob};
}

std::vector<std::pair<double, double>> spectral_measure(const Eigen::MatrixXcd& u,
                                                        const Eigen::VectorXcd& initial) {
  const std::size_t d = u.rows();
  const double residual = (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).norm();
  if (residual >= 1e-8) throw std::invalid_argument("operator is not unitary");
  // Schur of a normal matrix: T is diagonal up to roundoff and the Schur
  // basis is an orthonormal eigenbasis.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, /*computeU=*/true);
  const Eigen::MatrixXcd& q = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();
  std::vector<std::pair<double, double>> measure;
  measure.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    cd lam = t(i, i);
    double phi = std::arg(lam);  // snap to the unit circle by taking arg only
    if (phi < 0) phi += 2 * kPi;
    if (phi >= 2 * kPi) phi -= 2 * kPi;
    const cd amp = (q.col(i).adjoint() * initial)(0, 0);
    measure.emplace_back(phi, std::norm(amp));
  }
  return measure;
}

double phase_kernel(double theta, int ancilla_bits) {
  const double grid = std::pow(2.0, ancilla_bits);
  // Reduce to [-pi, pi] to keep the sines well conditioned.
  double t = std::remainder(theta, 2 * kPi);
  const double half = 0.5 * t;
  const double s = std::sin(half);
  if (std::abs(s) < 1e-15) return 1.0;
  const double num = std::sin(grid * half);
  return (num * num) / (grid * grid * s * s);
}

std::vector<double> phase_estimation(const UnitaryOp& u, const Eigen::VectorXcd& initial,
                                     int ancilla_bits) {
  if (ancilla_bits < 1) throw std::invalid_argument("need at least one ancilla bit");
  const auto measure = spectral_measure(u.matrix(), initial);
  const std::size_t outcomes = std::size_t{1} << ancilla_bits;
  std::vector<double> dist(outcomes, 0.0);
  for (const auto& [phi, weight] : measure) {
    if (weight == 0.0) continue;
    for (std::size_t j = 0; j < outcomes; ++j) {
      const double target = 2 * kPi * static_cast<double>(j) / static_cast<double>(outcomes);
      dist[j] += weight * phase_kernel(phi - target, ancilla_bits);
    }
  }
  return dist;
}

std::vector<double> phase_estimation_circuit(const UnitaryOp& u,
                                             const Eigen::VectorXcd& initial,
                                             int ancilla_bits) {
  const std::size_t sys = u.dim();
  const std::size_t anc = std::size_t{1} << ancilla_bits;
  const std::size_t total = anc * sys;  // ancilla register significant, system fast
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(total);
  for (std::size_t s = 0; s < sys; ++s) state(s) = initial(s) / std::sqrt(double(anc));
  for (std::size_t a = 1; a < anc; ++a)
    for (std::size_t s = 0; s < sys; ++s) state(a * sys + s) = state(s);

  // Controlled powers: ancilla value a applies U^a to the system.
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(sys, sys);
  std::vector<Eigen::MatrixXcd> powers(anc);
  for (std::size_t a = 0; a < anc; ++a) {
    powers[a] = power;
    power = u.matrix() * power;
  }
  Eigen::VectorXcd next = Eigen::VectorXcd::Zero(total);
  for (std::size_t a = 0; a < anc; ++a)
    next.segment(a * sys, sys) = powers[a] * state.segment(a * sys, sys);
  state = next;

  // Inverse Fourier transform on the ancilla register:
  // |a> -> (1/sqrt(N)) sum_j e^{-2 pi i a j / N} |j>.
  Eigen::MatrixXcd iqft(anc, anc);
  for (std::size_t j = 0; j < anc; ++j)
    for (std::size_t a = 0; a < anc; ++a)
      iqft(j, a) = std::exp(cd(0, -2 * kPi * double(a) * double(j) / double(anc))) /
                   std::sqrt(double(anc));
  next.setZero();
  for (std::size_t j = 0; j < anc; ++j)
    for (std::size_t a = 0; a < anc; ++a)
      next.segment(j * sys, sys) += iqft(j, a) * state.segment(a * sys, sys);

  std::vector<double> dist(anc, 0.0);
  for (std::size_t j = 0; j < anc; ++j) dist[j] = next.segment(j * sys, sys).squaredNorm();
  return dist;
}

double phase_distance(double phi) {
  double t = std::remainder(phi, 2 * kPi);
  return std::abs(t);
}

SpectralGapCheck spectral_gap_check(const Eigen::MatrixXcd& pi1, const Eigen::MatrixXcd& pi2,
                                    const Eigen::VectorXcd& w, double delta) {
  if (delta < 0) throw std::invalid_argument("delta must be >= 0");
  const auto check_projector = [](const Eigen::MatrixXcd& p) {
    const double res = (p * p - p).norm() + (p - p.adjoint()).norm();
    if (res > 1e-9) throw std::invalid_argument("input is not a projector");
  };
  check_projector(pi1);
  check_projector(pi2);
  if ((pi1 * w).norm() > 1e-9 * std::max(1.0, w.norm()))
    throw std::invalid_argument("w is not in the kernel of Pi1");

  const std::size_t d = pi1.rows();
  const Eigen::MatrixXcd r1 = 2.0 * pi1 - Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd r2 = 2.0 * pi2 - Eigen::MatrixXcd::Identity(d, d);
  const Eigen::VectorXcd target = pi2 * w;

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(r2 * r1, /*computeU=*/true);
  const Eigen::MatrixXcd& q = schur.matrixU();
  double lhs_sq = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const double phi = phase_distance(std::arg(schur.matrixT()(i, i)));
    if (phi <= delta + 1e-12) lhs_sq += std::norm((q.col(i).adjoint() * target)(0, 0));
  }
  const double lhs = std::sqrt(lhs_sq);
  const double rhs = 0.5 * delta * w.norm();
  return {lhs, rhs, lhs <= rhs + 1e-9};
}

}  // namespace juntalab
