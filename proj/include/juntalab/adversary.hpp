#pragma once

#include <Eigen/Dense>
#include <vector>

#include "juntalab/bits.hpp"

namespace juntalab {

// Rank-1 dual-adversary solution for exact gapped group testing, kept in
// factored form: one (alpha_s, beta_s) pair per query size s = 1..n-k-d+1.
// alpha_s beta_s = 1/((n-k) C(n-k-1, s-1)) and the two diagonal sums are
// balanced, which fixes both parameters.
struct GgtSolution {
  int n = 0, k = 0, d = 0;
  std::vector<double> alpha;  // index s-1
  std::vector<double> beta;
  double w_objective = 0;

  int s_max() const { return n - k - d + 1; }
};

GgtSolution build_ggt_solution(int n, int k, int d);

// max over |B \ A| of |sum_S X_S[A,B] - 1|, via the closed-form count of
// query sets avoiding A and meeting B exactly once.
double feasibility_residual(const GgtSolution& sol);
// Literal summation over all 2^n query sets and all (A, B) pairs.
double feasibility_residual_literal(const GgtSolution& sol);

// T(a,b) = 1 + a/b + a(a-1)/(b(b-1)) + ... = (b+1)/(b-a+1).
double t_series(int a, int b);

// Generic solution on an explicit domain: one PSD matrix per input variable.
struct GenericSolution {
  int arity = 0;                    // variables per input
  std::vector<mask_t> domain;       // input bitstrings
  std::vector<int> values;          // F on the domain
  std::vector<Eigen::MatrixXd> x;   // arity matrices, domain x domain

  double objective() const;                  // max_z sum_j X_j[z,z]
  double feasibility_residual() const;       // over pairs with F(x) != F(y)
  double min_eigenvalue() const;
  // Variable j is irrelevant for row z iff X_j[z,z] = 0.
  bool irrelevant(int row, int var, double tol = 1e-12) const;
};

// The AND function on inputs of weight >= n-1, with the rank-1 solution whose
// objective is exactly sqrt(n).
GenericSolution and_example_solution(int n);

// Materializes the group-testing solution as a GenericSolution over the
// 2^n subset variables (inputs are the Intersects_A bit vectors, so n <= 6).
GenericSolution ggt_generic_solution(const GgtSolution& sol);

// Smallest eigenvalue over all materialized X_S (rank-1, so ~0 up to
// roundoff); dense sweep for n <= 12.
double ggt_min_eigenvalue(const GgtSolution& sol);

// Hadamard preprocessing: after it, pairs with F(x) != F(y) have
// X_j[x,y] = 0 whenever x_j = y_j. PSD and the diagonal are preserved.
GenericSolution normalize_condition(const GenericSolution& sol, double tol = 1e-9);

// Composed solution for F(G_1, ..., G_arity) on the irrelevant-variable
// composition domain; f_sol must already satisfy the normalized condition.
// Inner variable (j, i) maps to X_j[z,t] * X^{(j)}_i[x_j, y_j].
struct ComposedSolution {
  GenericSolution solution;
  std::vector<mask_t> certificates;  // chosen z per composed row
  std::vector<int> inner_offsets;    // bit offset of each inner block
};
ComposedSolution compose_solutions(const GenericSolution& f_sol,
                                   const std::vector<GenericSolution>& g_sols);

// The 1-bit identity with X = all-ones (objective 1).
GenericSolution identity_bit_solution();

// Unweighted adversary statistic sqrt(m m' / (l l')) of an explicit relation:
// m, m' are min degrees, l, l' max per-coordinate degrees.
struct Relation {
  int arity = 0;
  std::vector<mask_t> ones;   // inputs with F = 1
  std::vector<mask_t> zeros;  // inputs with F = 0
  std::vector<std::pair<int, int>> pairs;  // (index into ones, index into zeros)
};
double unweighted_adversary_value(const Relation& r);

// The relation putting Intersects_[n] against every Intersects_A, |A| = k,
// n = k + d; inputs are length-2^n bit vectors of oracle answers.
Relation search_relation(int n, int k);

}  // namespace juntalab
