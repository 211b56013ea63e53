#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "juntalab/bits.hpp"

namespace juntalab {

// Index of a Fourier-basis element e_l(t, x) of the subset module: t labels
// the irreducible block (two-row shape), l the copy (subset size), and x a
// length-n branching string with exactly t ones whose every length-m prefix
// has at most floor(m/2) ones. Bit m-1 of x records the branching choice at
// stage m (1 = the t-increment branch); the transform consumes x from the
// last bit down.
struct GtIndex {
  int t;
  int l;
  mask_t x;
  bool operator==(const GtIndex& o) const { return t == o.t && l == o.l && x == o.x; }
};

bool valid_gt_string(int n, int t, mask_t x);
std::vector<mask_t> valid_gt_strings(int n, int t);
std::uint64_t count_valid_gt_strings(int n, int t);

// Enumeration order for matrices: lexicographic by t, then l, then x as an
// integer. Covers all (t, l, x) with x valid and t <= l <= n-t; the count
// equals 2^n.
std::vector<GtIndex> fourier_basis_indices(int n);

// v_l(t,a,b): the sign tensor over the pairs (a_i, b_i), completed by the
// sum of all (l-t)-subsets of the remaining elements. Norm
// sqrt(2^t C(n-2t, l-t)).
Eigen::VectorXd specht_vector(int n, int l, int t, const std::vector<int>& a,
                              const std::vector<int>& b);
double specht_vector_norm(int n, int l, int t);

// All v_l(t,a,b) with a_i < b_i and a strictly increasing; spans the same
// subspace as the unrestricted family.
std::vector<Eigen::VectorXd> specht_spanning_family(int n, int l, int t);

// Explicit orthonormal basis built by the two-term branching recursion from
// the single-element base case. Test oracle for the streaming transform.
struct GtBasis {
  int n = 0;
  std::vector<GtIndex> indices;   // enumeration order
  Eigen::MatrixXd columns;        // 2^n x 2^n, column i = vector of indices[i]
  int column_of(const GtIndex& idx) const;

 private:
  friend GtBasis gt_basis(int n);
  std::unordered_map<std::uint64_t, int> lookup_;
};
GtBasis gt_basis(int n);

using cd = std::complex<double>;
// Sparse state over (t, l, x) triples.
using TlxState = std::unordered_map<std::uint64_t, cd>;

std::uint64_t pack_tlx(int t, int l, mask_t x);
GtIndex unpack_tlx(std::uint64_t key);

// Streaming transform: n stages of subtract / two-level rotation / swap,
// keeping at most 2^n live branches. Forward maps (t, l, x) amplitudes to
// subset amplitudes; inverse is the exact reverse.
Eigen::VectorXcd qft_forward(const TlxState& in, int n);
TlxState qft_inverse(const Eigen::VectorXcd& subset_state, int n);

// Dense matrix of the streaming transform, columns in enumeration order.
Eigen::MatrixXd qft_matrix(int n);

}  // namespace juntalab
