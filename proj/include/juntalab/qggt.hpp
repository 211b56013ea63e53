#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "juntalab/adversary.hpp"
#include "juntalab/instances.hpp"
#include "juntalab/symqft.hpp"

namespace juntalab {

// Coefficient sequence of the projector onto span{psi_T : |T| = n-k} with
// psi_T = sum_l alpha[l] sum_{B subset T, |B| = l} |B>. The algorithm's
// instantiation has alpha[0] = 1 and alpha[s] = gamma * (adversary alpha_s)
// up to s = n-k-d+1, zero beyond.
struct LambdaSpec {
  int n = 0;
  int k = 0;
  Eigen::VectorXd alpha;  // length n+1; entries beyond n-k must be zero

  bool operator==(const LambdaSpec& o) const {
    return n == o.n && k == o.k && alpha == o.alpha;
  }
};

LambdaSpec algorithm_lambda_spec(const GgtSolution& sol, double c1);

// The per-block weight vector over l = t..n-t (index l-t):
// w_t[l] = alpha[l] C(n-l-t, k-t) sqrt(C(n-2t, l-t)) for l <= n-k, 0 above.
struct WVectors {
  Eigen::VectorXd w;             // raw
  Eigen::VectorXd w_normalized;  // zero vector stays zero
  double norm = 0;
};
WVectors build_w(const LambdaSpec& spec, int t);
// Same normalized vector from the walk's ratio recurrence for the
// coefficient register, rather than direct binomials.
WVectors build_w_walk(const LambdaSpec& spec, int t);

// psi_T expressed over the 2^n subset basis.
Eigen::VectorXd lambda_statement_vector(const LambdaSpec& spec, mask_t t_set);
// Orthonormalizes {psi_T} and returns the projector; n <= 12.
Eigen::MatrixXd lambda_bruteforce(const LambdaSpec& spec);
// Orthonormal basis of the image straight from the block decomposition.
Eigen::MatrixXd lambda_image_basis(const LambdaSpec& spec);

enum class ReflectMode { direct, walk };
// Applies 2 Lambda - I to a state over the subset basis by conjugating the
// per-(t, x) rank-1 reflection on the copy index with the streaming
// transform.
Eigen::VectorXcd reflect_lambda(const Eigen::VectorXcd& state, const LambdaSpec& spec,
                                ReflectMode mode);

struct QggtConfig {
  double c1 = 8.0;
  double c = 64.0;
  int ancilla = 0;  // 0: ceil(log2(2 pi c W)) + 3
};

struct QggtResult {
  bool accept = false;             // accept <=> declared small side
  double acceptance_probability = 0;
  double w_objective = 0;
  double delta = 0;
  int ancilla_bits = 0;
  int padded_n = 0;
  std::uint64_t oracle_queries = 0;  // controlled powers of phase estimation
};

// Phase estimation of O_f R_Lambda from the reserved |empty> state; accepts
// iff the estimate's phase distance from 0 exceeds delta = 1/(c W). The
// oracle must consist of reflections (reflectionize first if needed); the
// universe is padded with dummy elements up to n > 2k and n >= k+d.
QggtResult qggt_run(const BlockOracle& oracle, int k, int d, const QggtConfig& cfg = {});

// Spectral measure of the initial state under U = O_f R_Lambda, computed
// blockwise from the two-reflection structure: (phase, weight) pairs.
std::vector<std::pair<double, double>> qggt_spectral_measure(const BlockOracle& oracle,
                                                             const LambdaSpec& spec);

// U applied to a dense state over (I, W); for witness checks and the dense
// cross-check of the blockwise measure.
Eigen::VectorXcd qggt_apply_u(const BlockOracle& oracle, const LambdaSpec& spec,
                              const Eigen::VectorXcd& state, ReflectMode mode = ReflectMode::direct);

// The large-side eigenvector gamma |empty> - sum beta_s sum_{|S cap B| = 1} |S>,
// tensored with the workspace zero state.
Eigen::VectorXcd qggt_witness(const GgtSolution& sol, double c1, mask_t b_set,
                              int workspace_dim);

// Effective padded universe size used by qggt_run.
int qggt_padded_n(int n, int k, int d);

}  // namespace juntalab
