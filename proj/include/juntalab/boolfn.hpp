#pragma once

#include <string>
#include <vector>

#include "juntalab/bits.hpp"
#include "juntalab/rational.hpp"

namespace juntalab {

// Truth table of f: {0,1}^n -> {+1,-1}. Entry i is f at the point x with
// x_j = bit j-1 of i. Dense tables are capped at n = 24.
class BooleanFunction {
 public:
  BooleanFunction(int n, std::vector<int8_t> table);

  static BooleanFunction constant(int n, int sign);
  // Character chi_S in the shared bitmask encoding.
  static BooleanFunction parity(int n, mask_t s);
  static BooleanFunction random(int n, std::uint64_t seed);

  int n() const { return n_; }
  std::size_t size() const { return table_.size(); }
  int operator()(mask_t x) const { return table_[x]; }
  const std::vector<int8_t>& table() const { return table_; }

  // File format: line 1 "n=<int>", line 2 a string of 2^n characters in
  // {0,1}; character i = b means f(x_i) = (-1)^b. Bit-exact round trip.
  static BooleanFunction read_table(const std::string& path);
  void write_table(const std::string& path) const;
  static BooleanFunction parse_table(const std::string& text);
  std::string format_table() const;

 private:
  int n_;
  std::vector<int8_t> table_;
};

// Fourier coefficients indexed by subset bitmask.
struct FourierSpectrum {
  int n = 0;
  std::vector<double> coeffs;  // size 2^n, entry S = \hat f(S)

  double parseval_sum() const;
  BooleanFunction inverse() const;  // signs of the reconstructed table
  // Max per-entry deviation between the reconstructed real table and the
  // source; exact Boolean sources give ~1e-16.
  double round_trip_error(const BooleanFunction& f) const;
};

FourierSpectrum fourier_transform(const BooleanFunction& f);

// Inf_S(f) = sum of squared coefficients over sets meeting S.
double influence(const BooleanFunction& f, mask_t s);
double influence(const FourierSpectrum& spec, mask_t s);

// All 2^n subset influences at once (zeta transform over the complement).
std::vector<double> all_subset_influences(const FourierSpectrum& spec);

// Twice the probability that resampling the S-coordinates flips f,
// by exhaustive enumeration of (x, resample) pairs. Test oracle.
double influence_resampling_bruteforce(const BooleanFunction& f, mask_t s);

// Truncated influence: variables are ranked by `order` (a permutation of
// 1..n, most influential first); the first `cut` ranks contribute zero, and
// rank j > cut collects the Fourier mass of sets whose first-ranked element
// past the cut is exactly j. Additive over disjoint S by construction.
double sub_influence_cut(const BooleanFunction& f, mask_t s, int cut,
                         const std::vector<int>& order);
// The tester's instantiation: cut = 200*k, k >= 1.
double sub_influence(const BooleanFunction& f, mask_t s, int k,
                     const std::vector<int>& order);

// Variables sorted by non-increasing influence, ties broken by index.
std::vector<int> influence_order(const BooleanFunction& f);

// Exact normalized Hamming distance to the nearest k-junta, as a rational
// with denominator 2^n. Work is C(n,k)*2^n coset counts; guarded at 1e8.
BigRational distance_to_k_junta(const BooleanFunction& f, int k);

mask_t relevant_variables(const BooleanFunction& f);
// Flip-test characterization { j : exists x, f(x) != f(x^j) }. Test oracle.
mask_t relevant_variables_bruteforce(const BooleanFunction& f);

}  // namespace juntalab
