#pragma once

#include <optional>
#include <vector>

#include "juntalab/boolfn.hpp"
#include "juntalab/qcore.hpp"
#include "juntalab/qggt.hpp"

namespace juntalab {

// Rounds that place (2r+1) asin(sqrt(delta/2)) as close to pi/2 as possible,
// so the closed-form acceptance at influence exactly delta stays >= 0.9 for
// delta <= 1/2.
int influence_tester_rounds(double delta);

// sin^2((2r+1) asin(sqrt(influence/2))) with the calibrated round count.
double influence_tester_acceptance(double influence, double delta);

// Acceptance of the staged tester: each stage draws its round count
// uniformly from {0, ..., R-1} with R = ceil(1 / sin(2 asin sqrt(delta/2)))
// and the stages are OR-combined. At least 0.9 for every influence >= delta
// and exactly 0 at influence 0.
double influence_tester_robust_acceptance(double influence, double delta, int stages = 9);
// The R of the staged tester; its per-stage query cost in calls to f.
int influence_tester_round_range(double delta);

struct InfluenceTesterResult {
  double influence = 0;
  double pre_amplification_probability = 0;  // influence / 2
  int rounds = 0;
  double acceptance_probability = 0;  // closed form at the calibrated rounds
  // The literal amplified circuit over (input, resample) registers; only
  // materialized when the dense dimension stays small.
  std::optional<UnitaryOp> circuit;
};
InfluenceTesterResult influence_tester(const BooleanFunction& f, mask_t v, double delta,
                                       bool build_circuit = false);

enum class JuntaMode { ideal, compressed_circuit };

struct JuntaConfig {
  JuntaMode mode = JuntaMode::ideal;
  QggtConfig qggt;
  int subtester_repetitions = 3;   // odd majority count per subtester
  int error_reduction_copies = 0;  // 0: ceil(10 ln(k/eps)), rounded up to odd
  int robust_stages = 9;
  std::uint64_t seed = 1;
  int second_kind_trials = 200;    // Monte-Carlo fallback beyond n = 20
};

// delta for the level-ell subtester: eps / (2^{ell+3} log2(400 k)).
double first_kind_delta(int k, double eps, int ell);
// Number of first-kind levels: floor(log2(200 k)) + 1.
int first_kind_levels(int k);

// Per-subset oracle with -I on influence >= delta, +I on influence zero and
// a seeded Haar reflection in between.
BlockOracle ideal_influence_oracle(const BooleanFunction& f, double delta, std::uint64_t seed);
// Blocks of the error-reduced staged influence tester with uncompute: the
// two-dimensional reflection determined by the per-subset acceptance.
BlockOracle compressed_influence_oracle(const BooleanFunction& f, int k, double eps,
                                        double delta, const JuntaConfig& cfg);

struct FirstKindResult {
  int ell = 0;
  int d = 0;
  double delta = 0;
  bool promise_void = false;  // k + 2^ell exceeds the arity: nothing to reject
  double acceptance_probability = 1.0;
  bool accept = true;
  std::optional<QggtResult> qggt;
  std::uint64_t block_queries = 0;  // oracle-block applications
  std::uint64_t f_queries = 0;      // function evaluations behind them
};
FirstKindResult first_kind_tester(const BooleanFunction& f, int k, double eps, int ell,
                                  const JuntaConfig& cfg);

struct SecondKindResult {
  double inner_probability = 0;
  bool exact = true;
  bool accept = true;       // inner probability <= 0.8
  std::uint64_t f_queries = 0;  // sampling budget in calls to f
};
SecondKindResult second_kind_tester(const BooleanFunction& f, int k, double eps,
                                    const JuntaConfig& cfg);
// The exact expectation over the random subset V of the staged tester's
// acceptance, V including each variable with probability 1/k.
double second_kind_inner_probability(const BooleanFunction& f, int k, double eps,
                                     const JuntaConfig& cfg);

struct JuntaVerdict {
  bool decision_junta = false;
  double accept_probability = 0;  // exact, after per-subtester majority
  std::vector<FirstKindResult> first_kind;
  SecondKindResult second_kind;
  std::vector<double> subtester_majority;  // post-majority acceptance per level
  std::uint64_t total_f_queries = 0;
};
JuntaVerdict junta_test(const BooleanFunction& f, int k, double eps, const JuntaConfig& cfg);

struct NonJuntaCases {
  std::vector<int> first_kind_ells;
  bool second_kind = false;
  bool any() const { return second_kind || !first_kind_ells.empty(); }
};
// Which certified-far cases hold: level ell needs k + 2^ell variables of
// influence >= the level threshold; the second kind needs the influence
// mass at sorted positions k+1..200k to be at most eps/2.
NonJuntaCases classify_nonjunta(const BooleanFunction& f, int k, double eps);

// Exact majority-of-m acceptance for per-run acceptance p (m odd).
double majority_probability(double p, int copies);

}  // namespace juntalab
