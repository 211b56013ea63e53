#include "juntalab/junta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "juntalab/rng.hpp"

namespace juntalab {

namespace {
constexpr double kPi = std::numbers::pi;
}

int influence_tester_rounds(double delta) {
  if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("delta must lie in (0,1]");
  const double theta = std::asin(std::sqrt(delta / 2));
  return static_cast<int>(std::max(0.0, std::round(kPi / (4 * theta) - 0.5)));
}

double influence_tester_acceptance(double influence, double delta) {
  const int r = influence_tester_rounds(delta);
  return amplified_probability(influence / 2, r);
}

int influence_tester_round_range(double delta) {
  const double theta_delta = std::asin(std::sqrt(delta / 2));
  return static_cast<int>(std::ceil(1.0 / std::sin(2 * theta_delta)));
}

double influence_tester_robust_acceptance(double influence, double delta, int stages) {
  if (influence <= 0) return 0.0;
  const double theta = std::asin(std::sqrt(std::min(1.0, influence) / 2));
  const int range = influence_tester_round_range(delta);
  // Mean of sin^2((2r+1) theta) over r uniform in {0, ..., range-1}.
  const double mean =
      0.5 - std::sin(4.0 * range * theta) / (4.0 * range * std::sin(2 * theta));
  return 1.0 - std::pow(1.0 - mean, stages);
}

InfluenceTesterResult influence_tester(const BooleanFunction& f, mask_t v, double delta,
                                       bool build_circuit) {
  InfluenceTesterResult res;
  res.influence = influence(f, v);
  res.pre_amplification_probability = res.influence / 2;
  res.rounds = influence_tester_rounds(delta);
  res.acceptance_probability = amplified_probability(res.pre_amplification_probability, res.rounds);
  const int vbits = popcount(v);
  if (build_circuit && f.n() + vbits <= 12) {
    // Registers: the input x (2^n) and the resample word r (2^|V|); the
    // prepare step is a full Hadamard layer, and marked states are the
    // pairs with f(x) != f(y) for y = x off V, refreshed on V.
    const std::size_t dim = std::size_t{1} << (f.n() + vbits);
    Eigen::MatrixXcd had = Eigen::MatrixXcd::Constant(1, 1, 1.0);
    for (int b = 0; b < f.n() + vbits; ++b) {
      Eigen::MatrixXcd next(2 * had.rows(), 2 * had.cols());
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      next << had * inv_sqrt2, had * inv_sqrt2, had * inv_sqrt2, -had * inv_sqrt2;
      had = std::move(next);
    }
    std::vector<int> vpos;
    for (int j = 1; j <= f.n(); ++j)
      if (contains(v, j)) vpos.push_back(j - 1);
    std::vector<bool> marked(dim, false);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const mask_t x = idx >> vbits;
      const mask_t r = idx & full_mask(vbits);
      mask_t y = x & ~v;
      for (int b = 0; b < vbits; ++b)
        if ((r >> b) & 1) y |= mask_t{1} << vpos[b];
      marked[idx] = f(x) != f(y);
    }
    auto amp = amplitude_amplify(UnitaryOp::from_matrix(std::move(had)), marked, res.rounds);
    res.circuit = std::move(amp.op);
  }
  return res;
}

double first_kind_delta(int k, double eps, int ell) {
  return eps / (std::pow(2.0, ell + 3) * std::log2(400.0 * k));
}

int first_kind_levels(int k) {
  return static_cast<int>(std::floor(std::log2(200.0 * k))) + 1;
}

BlockOracle ideal_influence_oracle(const BooleanFunction& f, double delta, std::uint64_t seed) {
  const int n = f.n();
  const auto influences = all_subset_influences(fourier_transform(f));
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(std::size_t{1} << n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
    if (influences[s] <= 0.0)
      blocks.push_back(id);
    else if (influences[s] >= delta)
      blocks.push_back(-id);
    else
      blocks.push_back(haar_reflection(2, mix64(seed, s)));
  }
  return BlockOracle(n, 2, std::move(blocks), std::nullopt, 0, 0, 0);
}

double majority_probability(double p, int copies) {
  if (copies % 2 == 0) throw std::invalid_argument("majority copies must be odd");
  double total = 0;
  for (int j = copies / 2 + 1; j <= copies; ++j)
    total += binomial_d(copies, j) * std::pow(p, j) * std::pow(1.0 - p, copies - j);
  return std::clamp(total, 0.0, 1.0);
}

BlockOracle compressed_influence_oracle(const BooleanFunction& f, int k, double eps,
                                        double delta, const JuntaConfig& cfg) {
  const int n = f.n();
  int copies = cfg.error_reduction_copies;
  if (copies <= 0) copies = static_cast<int>(std::ceil(10.0 * std::log(k / eps)));
  copies = std::max(copies, 1) | 1;  // odd
  const auto influences = all_subset_influences(fourier_transform(f));
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(std::size_t{1} << n);
  for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
    const double single = influence_tester_robust_acceptance(influences[s], delta,
                                                             cfg.robust_stages);
    const double acc = majority_probability(single, copies);
    // Phase oracle compute--flag--uncompute: a reflection whose action on
    // |0> is determined by the acceptance probability alone. On the
    // invariant plane span{|0>, O|0>} it reads
    //   [ 1-2a   2 sqrt(a(1-a)) ; 2 sqrt(a(1-a))   2a-1 ].
    const double c = 1.0 - 2.0 * acc;
    const double s_off = 2.0 * std::sqrt(std::max(0.0, acc * (1.0 - acc)));
    Eigen::MatrixXcd block(2, 2);
    block << c, s_off, s_off, -c;
    blocks.push_back(block);
  }
  return BlockOracle(n, 2, std::move(blocks), std::nullopt, 0, 0, 0);
}

FirstKindResult first_kind_tester(const BooleanFunction& f, int k, double eps, int ell,
                                  const JuntaConfig& cfg) {
  if (ell < 0 || ell >= first_kind_levels(k)) throw std::invalid_argument("ell out of range");
  FirstKindResult res;
  res.ell = ell;
  res.d = 1 << ell;
  res.delta = first_kind_delta(k, eps, ell);
  if (k + res.d > f.n()) {
    // No function on this arity can have k + 2^ell variables above the
    // threshold, so the reject promise is empty; accept outright.
    res.promise_void = true;
    res.acceptance_probability = 1.0;
    res.accept = true;
    return res;
  }
  const std::uint64_t seed = mix64(cfg.seed, 0x666b00ULL + ell);
  const BlockOracle oracle =
      cfg.mode == JuntaMode::ideal
          ? ideal_influence_oracle(f, res.delta, seed)
          : compressed_influence_oracle(f, k, eps, res.delta, cfg);
  res.qggt = qggt_run(oracle, k, res.d, cfg.qggt);
  res.acceptance_probability = res.qggt->acceptance_probability;
  res.accept = res.qggt->accept;
  res.block_queries = res.qggt->oracle_queries;
  if (cfg.mode == JuntaMode::compressed_circuit) {
    int copies = cfg.error_reduction_copies;
    if (copies <= 0) copies = static_cast<int>(std::ceil(10.0 * std::log(k / eps)));
    copies = std::max(copies, 1) | 1;
    // per block call: majority copies x stages x mean rounds, computed and
    // then uncomputed
    const std::uint64_t per_call = std::uint64_t(copies) * cfg.robust_stages *
                                   influence_tester_round_range(res.delta) * 2;
    res.f_queries = res.block_queries * per_call;
  }
  return res;
}

double second_kind_inner_probability(const BooleanFunction& f, int k, double eps,
                                     const JuntaConfig& cfg) {
  const int n = f.n();
  const double delta = eps / (4.0 * k);
  const auto influences = all_subset_influences(fourier_transform(f));
  const double p_in = 1.0 / k;
  double expectation = 0;
  for (mask_t v = 0; v < (mask_t{1} << n); ++v) {
    const int bits = popcount(v);
    const double weight = std::pow(p_in, bits) * std::pow(1.0 - p_in, n - bits);
    if (influences[v] > 0)
      expectation += weight *
                     influence_tester_robust_acceptance(influences[v], delta, cfg.robust_stages);
  }
  return expectation;
}

SecondKindResult second_kind_tester(const BooleanFunction& f, int k, double eps,
                                    const JuntaConfig& cfg) {
  if (k < 2) throw std::invalid_argument("second-kind tester needs k >= 2");
  SecondKindResult res;
  if (f.n() <= 20) {
    res.inner_probability = second_kind_inner_probability(f, k, eps, cfg);
    res.exact = true;
  } else {
    const double delta = eps / (4.0 * k);
    auto rng = make_stream(cfg.seed, 0x32ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double sum = 0;
    for (int trial = 0; trial < cfg.second_kind_trials; ++trial) {
      mask_t v = 0;
      for (int j = 1; j <= f.n(); ++j)
        if (unit(rng) < 1.0 / k) v = with_element(v, j);
      sum += influence_tester_robust_acceptance(influence(f, v), delta, cfg.robust_stages);
    }
    res.inner_probability = sum / cfg.second_kind_trials;
    res.exact = false;
  }
  res.accept = res.inner_probability <= 0.8;
  // what the estimate costs when sampled rather than enumerated
  res.f_queries = std::uint64_t(cfg.second_kind_trials) * cfg.robust_stages *
                  influence_tester_round_range(eps / (4.0 * k)) * 2;
  return res;
}

JuntaVerdict junta_test(const BooleanFunction& f, int k, double eps, const JuntaConfig& cfg) {
  if (k < 2 || !(eps > 0 && eps < 1)) throw std::invalid_argument("need k >= 2, eps in (0,1)");
  JuntaVerdict verdict;
  double product = 1.0;
  for (int ell = 0; ell < first_kind_levels(k); ++ell) {
    auto fk = first_kind_tester(f, k, eps, ell, cfg);
    const double maj = majority_probability(fk.acceptance_probability, cfg.subtester_repetitions);
    verdict.subtester_majority.push_back(maj);
    product *= maj;
    verdict.first_kind.push_back(std::move(fk));
  }
  verdict.second_kind = second_kind_tester(f, k, eps, cfg);
  const double second = verdict.second_kind.accept ? 1.0 : 0.0;
  verdict.subtester_majority.push_back(second);
  product *= second;
  verdict.accept_probability = product;
  verdict.decision_junta = product >= 0.5;
  for (const auto& fk : verdict.first_kind)
    verdict.total_f_queries += fk.f_queries * cfg.subtester_repetitions;
  verdict.total_f_queries += verdict.second_kind.f_queries;
  return verdict;
}

NonJuntaCases classify_nonjunta(const BooleanFunction& f, int k, double eps) {
  NonJuntaCases cases;
  const auto spec = fourier_transform(f);
  std::vector<double> inf(f.n());
  for (int j = 1; j <= f.n(); ++j) inf[j - 1] = influence(spec, mask_t{1} << (j - 1));
  std::sort(inf.begin(), inf.end(), std::greater<double>());

  for (int ell = 0; ell < first_kind_levels(k); ++ell) {
    const double threshold = first_kind_delta(k, eps, ell);
    int count = 0;
    for (double v : inf)
      if (v >= threshold) ++count;
    if (count >= k + (1 << ell)) cases.first_kind_ells.push_back(ell);
  }

  double mid_mass = 0;
  const long long hi = std::min<long long>(200LL * k, f.n());
  for (long long j = k + 1; j <= hi; ++j) mid_mass += inf[j - 1];
  cases.second_kind = mid_mass <= eps / 2;
  return cases;
}

}  // namespace juntalab
