#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "juntalab/bits.hpp"
#include "juntalab/boolfn.hpp"

namespace juntalab {

enum class Side { small, large };
enum class OverridePolicy { zeros, ones, seeded_random, exact };
enum class IrrelevantMode { phase_faithful, random_reflection, random_unitary };

// Intersects_A with a query counter.
class IntersectionOracle {
 public:
  IntersectionOracle(int n, mask_t a) : n_(n), a_(a) {}
  int operator()(mask_t s) const {
    ++queries_;
    return intersects(s, a_) ? 1 : 0;
  }
  int n() const { return n_; }
  mask_t hidden() const { return a_; }
  std::uint64_t queries() const { return queries_; }
  void reset_counter() { queries_ = 0; }

 private:
  int n_;
  mask_t a_;
  mutable std::uint64_t queries_ = 0;
};

// Gap-group-testing oracle with one-sided constraints. On the small side
// S cap A = empty forces answer 0; on the large side S cap A != empty forces
// answer 1. Everything else comes from the override, fixed at construction
// (a deterministic function of the seed), so the oracle is a single function
// rather than a fresh coin per query.
class RelaxedOracle {
 public:
  RelaxedOracle(int n, int k, int d, Side side, mask_t a, OverridePolicy policy,
                std::uint64_t seed);

  int operator()(mask_t s) const;
  int n() const { return n_; }
  int k() const { return k_; }
  int d() const { return d_; }
  Side side() const { return side_; }
  mask_t hidden() const { return a_; }
  OverridePolicy policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t queries() const { return queries_; }
  void reset_counter() { queries_ = 0; }
  // Same function, fresh counter.
  RelaxedOracle clone() const;

  bool answer_is_forced(mask_t s) const;
  int value_nocount(mask_t s) const;

 private:
  int override_value(mask_t s) const;
  int n_, k_, d_;
  Side side_;
  mask_t a_;
  OverridePolicy policy_;
  std::uint64_t seed_;
  mutable std::uint64_t queries_ = 0;
};

RelaxedOracle make_relaxed_oracle(int n, int k, int d, Side side, mask_t a,
                                  OverridePolicy policy, std::uint64_t seed);

// Per-subset unitary blocks on a workspace, following the quantum promise:
// small side fixes |0> on S cap A = empty, large side negates |0> on
// S cap A != empty; irrelevant blocks are drawn per the mode. Blocks are
// generated deterministically from (seed, S) and cached.
class BlockOracle {
 public:
  BlockOracle(const RelaxedOracle& relaxed, IrrelevantMode mode, std::uint64_t seed,
              int workspace_dim = 2);
  // Wrap an explicit block family (used by reflectionize and the junta module).
  BlockOracle(int n, int workspace_dim, std::vector<Eigen::MatrixXcd> blocks,
              std::optional<Side> side, mask_t a, int k, int d);

  const Eigen::MatrixXcd& block(mask_t s) const;
  int n() const { return n_; }
  int workspace_dim() const { return dim_; }
  std::optional<Side> side() const { return side_; }
  mask_t hidden() const { return a_; }
  int k() const { return k_; }
  int d() const { return d_; }

  // Max deviation from unitarity / the promise over all 2^n blocks.
  double max_unitarity_residual() const;
  double max_promise_residual() const;
  bool is_reflection(double tol = 1e-9) const;

  // Universe extension by dummy elements never in A: the block of a padded
  // subset is the block of its restriction to the original universe.
  BlockOracle padded(int n_new) const;

 private:
  int n_;
  int dim_;
  std::optional<Side> side_;
  mask_t a_ = 0;
  int k_ = 0, d_ = 0;
  std::vector<Eigen::MatrixXcd> blocks_;
};

BlockOracle make_block_oracle(const RelaxedOracle& relaxed, IrrelevantMode mode,
                              std::uint64_t seed, int workspace_dim = 2);

// Haar sampling: QR of a Gaussian matrix with phase correction; reflections
// as I - 2 v v* for a Haar-random unit v.
Eigen::MatrixXcd haar_unitary(int dim, std::uint64_t seed);
Eigen::MatrixXcd haar_reflection(int dim, std::uint64_t seed);

// f(yz) = (-1)^{y_{g(z)}}: addressed bits y occupy the low indices
// 1..n_addr, address bits z the high indices. g is 1-based with values in
// [n_addr]; its domain size m = g.size() must be a power of two.
BooleanFunction addressing_function(int n_addr, const std::vector<int>& g);

// f(x) = core(x restricted to positions); positions ascending.
BooleanFunction random_k_junta(int n, const BooleanFunction& core,
                               const std::vector<int>& positions);

}  // namespace juntalab
