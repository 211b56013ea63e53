#include "juntalab/instances.hpp"

#include <cmath>
#include <stdexcept>

#include "juntalab/rng.hpp"

namespace juntalab {

RelaxedOracle::RelaxedOracle(int n, int k, int d, Side side, mask_t a,
                             OverridePolicy policy, std::uint64_t seed)
    : n_(n), k_(k), d_(d), side_(side), a_(a), policy_(policy), seed_(seed) {
  if (n < 1 || n > 64) throw std::invalid_argument("universe size out of range");
  if (k < 1 || d < 1) throw std::invalid_argument("k, d must be >= 1");
  if ((a & ~full_mask(n)) != 0) throw std::invalid_argument("A not within [n]");
  const int expected = side == Side::small ? k : k + d;
  if (popcount(a) != expected)
    throw std::invalid_argument("|A| does not match the declared side");
}

bool RelaxedOracle::answer_is_forced(mask_t s) const {
  return side_ == Side::small ? !intersects(s, a_) : intersects(s, a_);
}

int RelaxedOracle::override_value(mask_t s) const {
  switch (policy_) {
    case OverridePolicy::zeros:
      return 0;
    case OverridePolicy::ones:
      return 1;
    case OverridePolicy::seeded_random:
      return static_cast<int>(mix64(seed_, s) & 1);
    case OverridePolicy::exact:
      return intersects(s, a_) ? 1 : 0;
  }
  return 0;
}

int RelaxedOracle::value_nocount(mask_t s) const {
  if (side_ == Side::small && !intersects(s, a_)) return 0;
  if (side_ == Side::large && intersects(s, a_)) return 1;
  return override_value(s);
}

int RelaxedOracle::operator()(mask_t s) const {
  ++queries_;
  return value_nocount(s);
}

RelaxedOracle RelaxedOracle::clone() const {
  return RelaxedOracle(n_, k_, d_, side_, a_, policy_, seed_);
}

RelaxedOracle make_relaxed_oracle(int n, int k, int d, Side side, mask_t a,
                                  OverridePolicy policy, std::uint64_t seed) {
  return RelaxedOracle(n, k, d, side, a, policy, seed);
}

Eigen::MatrixXcd haar_unitary(int dim, std::uint64_t seed) {
  auto rng = make_stream(seed, 0x68616172ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase correction makes the distribution Haar rather than QR-convention.
  for (int j = 0; j < dim; ++j) {
    std::complex<double> rj = r(j, j);
    q.col(j) *= rj / std::abs(rj);
  }
  return q;
}

Eigen::MatrixXcd haar_reflection(int dim, std::uint64_t seed) {
  auto rng = make_stream(seed, 0x7265666cULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
  v.normalize();
  return Eigen::MatrixXcd::Identity(dim, dim) - 2.0 * v * v.adjoint();
}

BlockOracle::BlockOracle(const RelaxedOracle& relaxed, IrrelevantMode mode,
                         std::uint64_t seed, int workspace_dim)
    : n_(relaxed.n()),
      dim_(workspace_dim),
      side_(relaxed.side()),
      a_(relaxed.hidden()),
      k_(relaxed.k()),
      d_(relaxed.d()) {
  if (n_ > 20) throw std::invalid_argument("block oracle universe too large for dense blocks");
  const std::size_t count = std::size_t{1} << n_;
  blocks_.reserve(count);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim_, dim_);
  for (mask_t s = 0; s < count; ++s) {
    if (relaxed.answer_is_forced(s)) {
      blocks_.push_back(relaxed.side() == Side::small ? id : Eigen::MatrixXcd(-id));
      continue;
    }
    switch (mode) {
      case IrrelevantMode::phase_faithful:
        blocks_.push_back(relaxed.value_nocount(s) ? Eigen::MatrixXcd(-id) : id);
        break;
      case IrrelevantMode::random_reflection:
        blocks_.push_back(haar_reflection(dim_, mix64(seed, s)));
        break;
      case IrrelevantMode::random_unitary:
        blocks_.push_back(haar_unitary(dim_, mix64(seed, s)));
        break;
    }
  }
}

BlockOracle::BlockOracle(int n, int workspace_dim, std::vector<Eigen::MatrixXcd> blocks,
                         std::optional<Side> side, mask_t a, int k, int d)
    : n_(n), dim_(workspace_dim), side_(side), a_(a), k_(k), d_(d), blocks_(std::move(blocks)) {
  if (blocks_.size() != (std::size_t{1} << n)) throw std::invalid_argument("need one block per subset");
}

const Eigen::MatrixXcd& BlockOracle::block(mask_t s) const { return blocks_[s]; }

double BlockOracle::max_unitarity_residual() const {
  double worst = 0;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim_, dim_);
  for (const auto& b : blocks_) worst = std::max(worst, (b.adjoint() * b - id).norm());
  return worst;
}

double BlockOracle::max_promise_residual() const {
  if (!side_) return 0.0;
  double worst = 0;
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(dim_);
  zero(0) = 1.0;
  for (mask_t s = 0; s < blocks_.size(); ++s) {
    const bool small_forced = *side_ == Side::small && !intersects(s, a_);
    const bool large_forced = *side_ == Side::large && intersects(s, a_);
    if (!small_forced && !large_forced) continue;
    const double sign = small_forced ? 1.0 : -1.0;
    worst = std::max(worst, (blocks_[s] * zero - sign * zero).norm());
  }
  return worst;
}

bool BlockOracle::is_reflection(double tol) const {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim_, dim_);
  for (const auto& b : blocks_)
    if ((b * b - id).norm() > tol) return false;
  return true;
}

BlockOracle BlockOracle::padded(int n_new) const {
  if (n_new < n_) throw std::invalid_argument("padding cannot shrink the universe");
  if (n_new == n_) return *this;
  if (n_new > 20) throw std::invalid_argument("padded universe too large");
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(std::size_t{1} << n_new);
  const mask_t orig = full_mask(n_);
  for (mask_t s = 0; s < (mask_t{1} << n_new); ++s) blocks.push_back(blocks_[s & orig]);
  return BlockOracle(n_new, dim_, std::move(blocks), side_, a_, k_, d_);
}

BlockOracle make_block_oracle(const RelaxedOracle& relaxed, IrrelevantMode mode,
                              std::uint64_t seed, int workspace_dim) {
  return BlockOracle(relaxed, mode, seed, workspace_dim);
}

BooleanFunction addressing_function(int n_addr, const std::vector<int>& g) {
  const std::size_t m = g.size();
  if (m == 0 || (m & (m - 1)) != 0) throw std::invalid_argument("domain size must be a power of 2");
  int logm = 0;
  while ((std::size_t{1} << logm) < m) ++logm;
  for (int v : g)
    if (v < 1 || v > n_addr) throw std::invalid_argument("g image out of range");
  const int n = n_addr + logm;
  std::vector<int8_t> t(std::size_t{1} << n);
  for (mask_t x = 0; x < t.size(); ++x) {
    const mask_t y = x & full_mask(n_addr);
    const std::size_t z = x >> n_addr;
    t[x] = contains(y, g[z]) ? -1 : 1;
  }
  return BooleanFunction(n, std::move(t));
}

BooleanFunction random_k_junta(int n, const BooleanFunction& core,
                               const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != core.n())
    throw std::invalid_argument("positions/core arity mismatch");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 1 || positions[i] > n) throw std::invalid_argument("position out of range");
    if (i > 0 && positions[i] <= positions[i - 1])
      throw std::invalid_argument("positions must be strictly ascending");
  }
  std::vector<int8_t> t(std::size_t{1} << n);
  for (mask_t x = 0; x < t.size(); ++x) {
    mask_t restricted = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
      if (contains(x, positions[i])) restricted |= mask_t{1} << i;
    t[x] = static_cast<int8_t>(core(restricted));
  }
  return BooleanFunction(n, std::move(t));
}

}  // namespace juntalab
