#pragma once

#include <cstdint>
#include <utility>

#include "juntalab/instances.hpp"
#include "juntalab/rational.hpp"

namespace juntalab {

struct TesterReport {
  Side decision = Side::small;
  std::uint64_t queries = 0;
  std::uint64_t trials = 0;     // repetitions (sampling) or split attempts used
  std::uint64_t seed = 0;
};

// Repetition count O(1 + (k/d)^2); the constant 48 is calibrated so the
// empirical error stays under 1/3 on the acceptance grid.
std::uint64_t sampling_tester_default_repetitions(int k, int d);

// Inclusion probability per element; 1/k, with the k=1 degenerate case
// guarded to 1/2 so the two closed-form thresholds stay separated.
double sampling_inclusion_probability(int k);

// Decision thresholds 1-(1-p)^k and 1-(1-p)^{k+d} and their midpoint.
std::pair<double, double> sampling_tester_bounds(int k, int d);

TesterReport sampling_tester(const RelaxedOracle& oracle, int k, int d,
                             std::uint64_t repetitions, std::uint64_t seed);

// Split budget per active set; the k=1 case uses the k=2 budget.
int partition_split_budget(int k);
// 2k steps x split budget x 2 queries + 1 initial query.
std::uint64_t partition_query_budget(int k);

TesterReport partition_tester(const RelaxedOracle& oracle, int k, std::uint64_t seed);

// Exact total variation distance between the hypergeometric distributions
// H_n(k, m) and H_n(k+d, m), via big-integer binomials.
BigRational hypergeom_tv(int n, int k, int d, int m);

// TV and Kolmogorov distances between B(k, p) and B(k+d, p); the
// monotone-likelihood-ratio identity makes the two agree.
struct BinomDistances {
  double tv;
  double kolmogorov;
};
BinomDistances binom_tv_kolmogorov(int k, int d, double p);

}  // namespace juntalab
