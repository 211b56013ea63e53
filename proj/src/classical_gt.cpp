#include "juntalab/classical_gt.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include "juntalab/rng.hpp"

namespace juntalab {

std::uint64_t sampling_tester_default_repetitions(int k, int d) {
  const double ratio = static_cast<double>(k) / d;
  return static_cast<std::uint64_t>(std::ceil(48.0 * (1.0 + ratio * ratio)));
}

double sampling_inclusion_probability(int k) {
  return 1.0 / std::max(k, 2);
}

std::pair<double, double> sampling_tester_bounds(int k, int d) {
  const double p = sampling_inclusion_probability(k);
  const double small_bound = 1.0 - std::pow(1.0 - p, k);
  const double large_bound = 1.0 - std::pow(1.0 - p, k + d);
  return {small_bound, large_bound};
}

TesterReport sampling_tester(const RelaxedOracle& oracle, int k, int d,
                             std::uint64_t repetitions, std::uint64_t seed) {
  if (k < 1 || d < 1 || repetitions < 1) throw std::invalid_argument("bad tester parameters");
  const int n = oracle.n();
  const double p = sampling_inclusion_probability(k);
  auto [small_bound, large_bound] = sampling_tester_bounds(k, d);
  const double midpoint = 0.5 * (small_bound + large_bound);

  std::uint64_t positives = 0;
  for (std::uint64_t trial = 0; trial < repetitions; ++trial) {
    auto rng = make_stream(seed, trial);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    mask_t s = 0;
    for (int j = 1; j <= n; ++j)
      if (unit(rng) < p) s = with_element(s, j);
    positives += oracle(s);
  }
  TesterReport rep;
  rep.decision = (static_cast<double>(positives) / repetitions > midpoint) ? Side::large
                                                                           : Side::small;
  rep.queries = repetitions;
  rep.trials = repetitions;
  rep.seed = seed;
  return rep;
}

int partition_split_budget(int k) {
  return static_cast<int>(std::ceil(10.0 * std::log2(std::max(k, 2))));
}

std::uint64_t partition_query_budget(int k) {
  return 2ULL * k * partition_split_budget(k) * 2ULL + 1ULL;
}

TesterReport partition_tester(const RelaxedOracle& oracle, int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const int n = oracle.n();
  const int budget = partition_split_budget(k);
  auto rng = make_stream(seed, 0x706172ULL);
  std::uniform_int_distribution<int> coin(0, 1);

  TesterReport rep;
  rep.seed = seed;
  std::uint64_t queries = 0;
  auto query = [&](mask_t s) {
    ++queries;
    return oracle(s);
  };

  if (query(full_mask(n)) == 0) {
    rep.decision = Side::small;
    rep.queries = queries;
    return rep;
  }

  // Invariant: f answers 1 on every set in the partition.
  std::deque<mask_t> active{full_mask(n)};
  std::size_t inactive = 0;
  std::size_t total_sets = 1;
  while (true) {
    if (total_sets >= static_cast<std::size_t>(k) + 1) {
      rep.decision = Side::large;
      break;
    }
    if (active.empty()) {
      rep.decision = Side::small;
      break;
    }
    mask_t s = active.front();
    active.pop_front();
    bool split_done = false;
    for (int attempt = 0; attempt < budget && !split_done; ++attempt) {
      mask_t s1 = 0;
      for (int j = 1; j <= n; ++j)
        if (contains(s, j) && coin(rng)) s1 = with_element(s1, j);
      mask_t s2 = s & ~s1;
      if (query(s1) == 1 && query(s2) == 1) {
        active.push_back(s1);
        active.push_back(s2);
        ++total_sets;  // replaced one set by two
        split_done = true;
      }
    }
    if (!split_done) ++inactive;
  }
  rep.queries = queries;
  rep.trials = inactive;
  return rep;
}

namespace {

std::vector<BigRational> hypergeom_pmf(int n, int big_k, int m) {
  // |A cap [big_k]| for a uniform m-subset A of [n].
  const BigInt total = big_binomial(n, m);
  std::vector<BigRational> pmf(std::min(big_k, m) + 1);
  for (int i = 0; i <= std::min(big_k, m); ++i) {
    BigInt ways = big_binomial(big_k, i) * big_binomial(n - big_k, m - i);
    pmf[i] = BigRational(ways, total);
  }
  return pmf;
}

}  // namespace

BigRational hypergeom_tv(int n, int k, int d, int m) {
  if (k + d > n || m > n || k < 0 || d < 0 || m < 0) throw std::invalid_argument("bad parameters");
  auto p1 = hypergeom_pmf(n, k, m);
  auto p2 = hypergeom_pmf(n, k + d, m);
  const std::size_t len = std::max(p1.size(), p2.size());
  p1.resize(len);
  p2.resize(len);
  BigRational sum = 0;
  for (std::size_t i = 0; i < len; ++i) {
    BigRational diff = p1[i] - p2[i];
    if (diff < 0) diff = -diff;
    sum += diff;
  }
  return sum / 2;
}

BinomDistances binom_tv_kolmogorov(int k, int d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  if (k < 1 || d < 1) throw std::invalid_argument("k, d must be >= 1");
  const int hi = k + d;
  auto pmf = [&](int trials, int i) {
    if (i < 0 || i > trials) return 0.0;
    return binomial_d(trials, i) * std::pow(p, i) * std::pow(1.0 - p, trials - i);
  };
  double tv = 0;
  for (int i = 0; i <= hi; ++i) tv += std::abs(pmf(k, i) - pmf(hi, i));
  tv /= 2;

  double kol = 0;
  double tail_small = 1.0, tail_large = 1.0;  // P[X >= ell], ell = 0
  for (int ell = 0; ell <= hi + 1; ++ell) {
    kol = std::max(kol, std::abs(tail_large - tail_small));
    tail_small -= pmf(k, ell);
    tail_large -= pmf(hi, ell);
  }
  return {tv, kol};
}

}  // namespace juntalab
