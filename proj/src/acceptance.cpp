#include "juntalab/acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "juntalab/adversary.hpp"
#include "juntalab/boolfn.hpp"
#include "juntalab/classical_gt.hpp"
#include "juntalab/instances.hpp"
#include "juntalab/junta.hpp"
#include "juntalab/parallel.hpp"
#include "juntalab/qcore.hpp"
#include "juntalab/qggt.hpp"
#include "juntalab/rng.hpp"
#include "juntalab/symqft.hpp"

namespace juntalab {

namespace {

struct Checker {
  bool pass = true;
  double worst = 0;
  std::string first_failure;

  void bound(double value, double limit, const std::string& label) {
    worst = std::max(worst, value);
    if (value > limit && pass) {
      pass = false;
      first_failure = label + " = " + std::to_string(value);
    }
  }
  void require(bool ok, const std::string& label) {
    if (!ok && pass) {
      pass = false;
      first_failure = label;
    }
  }
  std::string detail(const std::string& ok_text) const {
    return pass ? ok_text : first_failure;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

Eigen::VectorXcd random_unit(std::size_t dim, std::uint64_t seed) {
  auto rng = make_stream(seed, 0xacce97);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = cd(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

// Orthonormal basis of the span of a vector family, grown until the target
// rank is reached (two-pass Gram-Schmidt).
Eigen::MatrixXd span_basis(const std::vector<Eigen::VectorXd>& family, int target_rank) {
  if (family.empty() || target_rank == 0) return Eigen::MatrixXd::Zero(0, 0);
  Eigen::MatrixXd q(family.front().size(), target_rank);
  int rank = 0;
  for (const auto& raw : family) {
    if (rank == target_rank) break;
    Eigen::VectorXd v = raw;
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < rank; ++i) v -= q.col(i).dot(v) * q.col(i);
    if (v.norm() > 1e-8 * raw.norm()) {
      q.col(rank++) = v / v.norm();
    }
  }
  return q.leftCols(rank);
}

// ---------------------------------------------------------------- criterion 1
CriterionResult criterion_qft() {
  Checker c;
  // branching identities at every level up to 8
  GtBasis prev = gt_basis(1);
  for (int n = 2; n <= 8; ++n) {
    GtBasis cur = gt_basis(n);
    const std::size_t half = std::size_t{1} << (n - 1);
    for (const auto& idx : cur.indices) {
      const int branch = contains(idx.x, n) ? 1 : 0;
      const mask_t xp = idx.x & ~(mask_t{1} << (n - 1));
      const int tp = idx.t - branch;
      const double stay = std::sqrt(double(n - idx.l - tp) / (n - 2 * tp));
      const double move = std::sqrt(double(idx.l - tp) / (n - 2 * tp));
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(std::size_t{1} << n);
      const double c_low = branch == 0 ? stay : move;
      const double c_high = branch == 0 ? move : -stay;
      if (c_low != 0.0)
        rhs.head(half) += c_low * prev.columns.col(prev.column_of({tp, idx.l, xp}));
      if (c_high != 0.0)
        rhs.segment(half, half) +=
            c_high * prev.columns.col(prev.column_of({tp, idx.l - 1, xp}));
      c.bound((cur.columns.col(cur.column_of(idx)) - rhs).norm(), 1e-10,
              "branching identity n=" + std::to_string(n));
    }
    prev = std::move(cur);
  }

  // unitarity and irreducible-span membership of the streaming matrix
  for (int n = 1; n <= 10; ++n) {
    const Eigen::MatrixXd f = qft_matrix(n);
    const std::size_t dim = std::size_t{1} << n;
    c.bound((f.transpose() * f - Eigen::MatrixXd::Identity(dim, dim)).norm(), 1e-9,
            "unitarity n=" + std::to_string(n));
    const auto indices = fourier_basis_indices(n);
    for (int t = 0; 2 * t <= n; ++t) {
      const int span_dim =
          static_cast<int>(binomial_u64(n, t) - binomial_u64(n, t - 1));
      for (int l = t; l <= n - t; ++l) {
        const auto family = specht_spanning_family(n, l, t);
        const Eigen::MatrixXd q = span_basis(family, span_dim);
        c.require(q.cols() == span_dim,
                  "span rank n=" + std::to_string(n) + " t=" + std::to_string(t));
        for (std::size_t i = 0; i < indices.size(); ++i) {
          if (indices[i].t != t || indices[i].l != l) continue;
          const Eigen::VectorXd col = f.col(i);
          c.bound((col - q * (q.transpose() * col)).norm(), 1e-9,
                  "span residual n=" + std::to_string(n));
        }
      }
    }
  }
  return {1, "qft identities, unitarity, spans", c.pass,
          c.detail("worst residual " + fmt(c.worst)), 0};
}

// ---------------------------------------------------------------- criterion 2
CriterionResult criterion_counts() {
  Checker c;
  for (int n = 1; n <= 14; ++n) {
    std::uint64_t total = 0;
    for (int t = 0; 2 * t <= n; ++t) {
      const std::uint64_t expected = binomial_u64(n, t) - binomial_u64(n, t - 1);
      c.require(count_valid_gt_strings(n, t) == expected,
                "count n=" + std::to_string(n) + " t=" + std::to_string(t));
      total += expected * (n - 2 * t + 1);
    }
    c.require(total == (std::uint64_t{1} << n), "dimension sum n=" + std::to_string(n));
  }
  return {2, "branching-string counts", c.pass, c.detail("all counts match"), 0};
}

// ---------------------------------------------------------------- criterion 3
CriterionResult criterion_lambda_blocks() {
  Checker c;
  for (int n = 3; n <= 10; ++n) {
    const Eigen::MatrixXd f = qft_matrix(n);
    const auto indices = fourier_basis_indices(n);
    for (int k = 1; k <= std::min(4, n - 1); ++k) {
      for (int draw = 0; draw < 20; ++draw) {
        LambdaSpec spec;
        spec.n = n;
        spec.k = k;
        spec.alpha = Eigen::VectorXd::Zero(n + 1);
        auto rng = make_stream(0xb10c, n * 1000 + k * 100 + draw);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int l = 0; l <= n - k; ++l) spec.alpha(l) = gauss(rng);

        const Eigen::MatrixXd lam = lambda_bruteforce(spec);
        const Eigen::MatrixXd conjugated = f.transpose() * lam * f;
        Eigen::MatrixXd expected =
            Eigen::MatrixXd::Zero(conjugated.rows(), conjugated.cols());
        std::vector<WVectors> wt;
        for (int t = 0; t <= std::min(k, n / 2); ++t) wt.push_back(build_w(spec, t));
        for (std::size_t i = 0; i < indices.size(); ++i) {
          const int t = indices[i].t;
          if (t > std::min(k, n / 2)) continue;
          for (std::size_t j = 0; j < indices.size(); ++j) {
            if (indices[j].t != t || indices[j].x != indices[i].x) continue;
            expected(i, j) = wt[t].w_normalized(indices[i].l - t) *
                             wt[t].w_normalized(indices[j].l - t);
          }
        }
        c.bound((conjugated - expected).norm(), 1e-9,
                "block law n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
  }
  return {3, "projector block decomposition", c.pass,
          c.detail("worst deviation " + fmt(c.worst)), 0};
}

// ---------------------------------------------------------------- criterion 4
CriterionResult criterion_adversary() {
  Checker c;
  double worst_ratio = 0;
  for (int n = 2; n <= 16; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int d = 1; k + d <= n; ++d) {
        const auto sol = build_ggt_solution(n, k, d);
        c.bound(feasibility_residual(sol), 1e-9,
                "feasibility n=" + std::to_string(n) + " k=" + std::to_string(k) +
                    " d=" + std::to_string(d));
        const double ratio = sol.w_objective / std::sqrt(1.0 + double(k) / d);
        worst_ratio = std::max(worst_ratio, ratio);
        c.require(ratio <= 10.0, "objective ratio " + fmt(ratio));
      }
    }
  }
  for (int n = 1; n <= 8; ++n) {
    const auto sol = and_example_solution(n);
    for (std::size_t r = 0; r < sol.domain.size(); ++r) {
      double diag = 0;
      for (const auto& x : sol.x) diag += x(r, r);
      c.bound(std::abs(diag - std::sqrt(double(n))), 1e-12,
              "conjunction diagonal n=" + std::to_string(n));
    }
  }
  return {4, "dual solution feasibility + objective", c.pass,
          c.detail("max W/sqrt(1+k/d) = " + fmt(worst_ratio)), 0};
}

// ---------------------------------------------------------------- criterion 5
CriterionResult criterion_quantum_grid() {
  Checker c;
  const QggtConfig cfg;  // calibrated defaults C1 = 8, C = 64, a = auto + 3
  double worst_margin = 1.0;
  int instances = 0;
  for (int n = 4; n <= 10; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (int d = 1; d <= 3; ++d) {
        if (k + d > n) continue;
        for (Side side : {Side::small, Side::large}) {
          const int size = side == Side::small ? k : k + d;
          std::vector<mask_t> hidden_sets;
          if (n <= 6) {
            hidden_sets = subsets_of_size(full_mask(n), size);
          } else {
            hidden_sets.push_back(full_mask(size));
            auto rng = make_stream(0x5eed, n * 100 + k * 10 + d);
            std::vector<int> elems(n);
            std::iota(elems.begin(), elems.end(), 1);
            std::shuffle(elems.begin(), elems.end(), rng);
            mask_t a = 0;
            for (int i = 0; i < size; ++i) a = with_element(a, elems[i]);
            if (a != hidden_sets.front()) hidden_sets.push_back(a);
          }
          for (auto mode : {IrrelevantMode::phase_faithful, IrrelevantMode::random_reflection,
                            IrrelevantMode::random_unitary}) {
            for (std::size_t ai = 0; ai < hidden_sets.size(); ++ai) {
              const mask_t a = hidden_sets[ai];
              RelaxedOracle relaxed(n, k, d, side, a, OverridePolicy::seeded_random,
                                    mix64(n * 31 + k * 7 + d, a));
              BlockOracle oracle = make_block_oracle(relaxed, mode, mix64(a, 0xcafe));
              if (!oracle.is_reflection(1e-9)) oracle = reflectionize(oracle);
              const auto res = qggt_run(oracle, k, d, cfg);
              const double correct = side == Side::small ? res.acceptance_probability
                                                         : 1.0 - res.acceptance_probability;
              worst_margin = std::min(worst_margin, correct);
              ++instances;
              c.require(correct >= 2.0 / 3.0,
                        "side margin " + fmt(correct) + " at n=" + std::to_string(n) +
                            " k=" + std::to_string(k) + " d=" + std::to_string(d));
              c.require(res.accept == (side == Side::small), "decision flipped");

              if (side == Side::large && ai == 0) {
                // eigenvector witness on the padded universe
                const BlockOracle padded = oracle.padded(res.padded_n);
                const auto sol = build_ggt_solution(res.padded_n, k, d);
                const auto spec = algorithm_lambda_spec(sol, cfg.c1);
                const auto u = qggt_witness(sol, cfg.c1, a, padded.workspace_dim());
                const auto applied = qggt_apply_u(padded, spec, u);
                c.bound((applied - u).norm() / u.norm(), 1e-9, "witness residual");
              }
            }
          }
        }
      }
    }
  }
  return {5, "quantum tester exact grid (C1=8, C=64)", c.pass,
          c.detail(std::to_string(instances) + " instances, min margin " + fmt(worst_margin)),
          0};
}

// ---------------------------------------------------------------- criterion 6
CriterionResult criterion_walk_direct() {
  Checker c;
  for (int n = 4; n <= 10; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const int k = 1 + rep % std::max(1, std::min(4, (n - 1) / 2));
      LambdaSpec spec;
      spec.n = n;
      spec.k = k;
      spec.alpha = Eigen::VectorXd::Zero(n + 1);
      auto rng = make_stream(0x3a1c, n * 1000 + rep);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int l = 0; l <= n - k; ++l) spec.alpha(l) = gauss(rng);
      const auto state = random_unit(std::size_t{1} << n, n * 7919 + rep);
      const auto direct = reflect_lambda(state, spec, ReflectMode::direct);
      const auto walk = reflect_lambda(state, spec, ReflectMode::walk);
      c.bound((direct - walk).norm(), 1e-8, "walk vs direct n=" + std::to_string(n));
    }
  }
  return {6, "walk/direct reflection equivalence", c.pass,
          c.detail("worst distance " + fmt(c.worst)), 0};
}

// ---------------------------------------------------------------- criterion 7
CriterionResult criterion_classical() {
  Checker c;
  // one-sidedness: the partition tester never outputs large on the small side
  std::vector<std::uint8_t> small_ok(2000);
  std::vector<std::uint8_t> budget_ok(2000);
  parallel_for(small_ok.size(), [&](std::size_t trial) {
    auto rng = make_stream(0x01e5, trial);
    const int n = 32 + static_cast<int>(rng() % 33);  // 32..64
    const int k = 1 + static_cast<int>(rng() % 6);
    std::vector<int> elems(n);
    std::iota(elems.begin(), elems.end(), 1);
    std::shuffle(elems.begin(), elems.end(), rng);
    mask_t a = 0;
    for (int i = 0; i < k; ++i) a = with_element(a, elems[i]);
    const OverridePolicy policy =
        trial % 2 ? OverridePolicy::ones : OverridePolicy::seeded_random;
    RelaxedOracle oracle(n, k, 1, Side::small, a, policy, trial);
    const auto rep = partition_tester(oracle, k, mix64(0x70, trial));
    small_ok[trial] = rep.decision == Side::small;
    budget_ok[trial] = rep.queries <= partition_query_budget(k);
  });
  int small_errors = 0;
  for (std::size_t i = 0; i < small_ok.size(); ++i) {
    if (!small_ok[i]) ++small_errors;
    c.require(budget_ok[i] != 0, "partition budget");
  }
  c.require(small_errors == 0, "small-side errors: " + std::to_string(small_errors));

  // large-side error rates for both testers across the grid
  double worst_error = 0;
  const int n = 64, seeds = 1000;
  for (int k : {2, 4, 8}) {
    for (int d : {1, k / 2, k}) {
      if (d < 1) continue;
      const auto reps = sampling_tester_default_repetitions(k, d);
      std::vector<std::uint8_t> part_ok(seeds), samp_ok(seeds), budgets(seeds);
      parallel_for(seeds, [&](std::size_t trial) {
        auto rng = make_stream(0x1a59, trial * 100 + k * 10 + d);
        std::vector<int> elems(n);
        std::iota(elems.begin(), elems.end(), 1);
        std::shuffle(elems.begin(), elems.end(), rng);
        mask_t b = 0;
        for (int i = 0; i < k + d; ++i) b = with_element(b, elems[i]);
        RelaxedOracle oracle(n, k, d, Side::large, b, OverridePolicy::zeros, trial);
        const auto rp = partition_tester(oracle, k, mix64(0x71, trial));
        const auto rs = sampling_tester(oracle, k, d, reps, mix64(0x72, trial));
        part_ok[trial] = rp.decision == Side::large;
        samp_ok[trial] = rs.decision == Side::large;
        budgets[trial] = rp.queries <= partition_query_budget(k) && rs.queries == reps;
      });
      int errors_partition = 0, errors_sampling = 0;
      for (int trial = 0; trial < seeds; ++trial) {
        if (!part_ok[trial]) ++errors_partition;
        if (!samp_ok[trial]) ++errors_sampling;
        c.require(budgets[trial] != 0, "query budget");
      }
      worst_error = std::max({worst_error, double(errors_partition) / seeds,
                              double(errors_sampling) / seeds});
    }
  }
  // sampling tester on the small side with the adversarial all-ones override
  {
    const int k = 8;
    const auto reps = sampling_tester_default_repetitions(k, k);
    std::vector<std::uint8_t> ok(seeds);
    parallel_for(seeds, [&](std::size_t trial) {
      auto rng = make_stream(0x1a5a, trial);
      std::vector<int> elems(n);
      std::iota(elems.begin(), elems.end(), 1);
      std::shuffle(elems.begin(), elems.end(), rng);
      mask_t a = 0;
      for (int i = 0; i < k; ++i) a = with_element(a, elems[i]);
      RelaxedOracle oracle(n, k, k, Side::small, a, OverridePolicy::ones, trial);
      ok[trial] =
          sampling_tester(oracle, k, k, reps, mix64(0x73, trial)).decision == Side::small;
    });
    int errors = 0;
    for (int trial = 0; trial < seeds; ++trial)
      if (!ok[trial]) ++errors;
    worst_error = std::max(worst_error, double(errors) / seeds);
  }
  c.require(worst_error <= 1.0 / 3.0, "error rate " + fmt(worst_error));
  return {7, "classical testers: one-sidedness, error, budget", c.pass,
          c.detail("worst error rate " + fmt(worst_error)), 0};
}

// ---------------------------------------------------------------- criterion 8
CriterionResult criterion_distances() {
  Checker c;
  c.require(hypergeom_tv(4, 1, 1, 2) == BigRational(1, 3), "exact 1/3 value");

  int grid_points = 0;
  for (int k = 1; k <= 10 && grid_points < 50; ++k)
    for (int d = 1; d <= k && grid_points < 50; d += 2)
      for (double p : {0.1, 0.35, 0.7}) {
        if (grid_points >= 50) break;
        const auto bd = binom_tv_kolmogorov(k, d, p);
        c.bound(std::abs(bd.tv - bd.kolmogorov), 1e-12, "tv vs kolmogorov");
        ++grid_points;
      }
  c.require(grid_points >= 50, "grid size");

  // the lower-bound grid: m = min(n/4, n(k+d)/d^2) with n in the claim's
  // large-universe regime (n >= 4(k+d)), capped at 60
  double worst_tv = 0;
  for (int k = 1; k <= 10; ++k) {
    for (int d = 1; d <= k; ++d) {
      for (int n : {4 * (k + d), 6 * (k + d), 60}) {
        if (n > 60 || n < 4 * (k + d)) continue;
        const long long m_raw =
            std::min<long long>(n / 4, (long long)n * (k + d) / ((long long)d * d));
        const int m = static_cast<int>(std::min<long long>(m_raw, n));
        const double tv = hypergeom_tv(n, k, d, m).convert_to<double>();
        worst_tv = std::max(worst_tv, tv);
        c.require(tv <= 0.95, "tv " + fmt(tv) + " at n=" + std::to_string(n) +
                                  " k=" + std::to_string(k) + " d=" + std::to_string(d));
      }
    }
  }
  return {8, "distribution distance identities", c.pass,
          c.detail("max grid tv " + fmt(worst_tv)), 0};
}

// ---------------------------------------------------------------- criterion 9
CriterionResult criterion_junta() {
  Checker c;
  JuntaConfig cfg;
  cfg.seed = 0x9a;

  // (a) exact accept/reject margins
  double worst_margin = 1.0;
  for (int n = 5; n <= 8; ++n) {
    for (int k = 2; k <= 3; ++k) {
      std::vector<int> positions;
      for (int i = 0; i < k; ++i) positions.push_back(i + 2);
      const auto junta =
          random_k_junta(n, BooleanFunction::parity(k, full_mask(k)), positions);
      const auto verdict = junta_test(junta, k, 0.2, cfg);
      worst_margin = std::min(worst_margin, verdict.accept_probability);
      c.require(verdict.accept_probability >= 2.0 / 3.0,
                "junta accept " + fmt(verdict.accept_probability) + " n=" +
                    std::to_string(n) + " k=" + std::to_string(k));

      const auto parity = BooleanFunction::parity(n, full_mask(k + 1));
      const auto far = junta_test(parity, k, 0.2, cfg);
      worst_margin = std::min(worst_margin, 1.0 - far.accept_probability);
      c.require(1.0 - far.accept_probability >= 2.0 / 3.0,
                "parity reject " + fmt(1.0 - far.accept_probability));
    }
  }

  // (b) compressed-circuit decisions match ideal on the clean grid
  JuntaConfig comp = cfg;
  comp.mode = JuntaMode::compressed_circuit;
  for (int n = 4; n <= 6; ++n) {
    const int k = 2;
    std::vector<BooleanFunction> grid;
    grid.push_back(random_k_junta(n, BooleanFunction::parity(k, full_mask(k)), {1, n}));
    grid.push_back(BooleanFunction::parity(n, full_mask(std::min(n, k + 1))));
    grid.push_back(BooleanFunction::constant(n, 1));
    if (n >= k + 2) grid.push_back(BooleanFunction::parity(n, full_mask(k + 2)));
    for (const auto& f : grid) {
      for (int ell = 0; ell <= 1; ++ell) {
        if (k + (1 << ell) > n) continue;
        const auto a = first_kind_tester(f, k, 0.25, ell, cfg);
        const auto b = first_kind_tester(f, k, 0.25, ell, comp);
        c.require(a.accept == b.accept, "mode mismatch n=" + std::to_string(n) +
                                            " ell=" + std::to_string(ell));
      }
    }
  }

  // (c) sampled far functions always satisfy a case
  int certified = 0, sampled = 0;
  for (int trial = 0; certified < 1000 && trial < 4000; ++trial) {
    const int n = 4 + trial % 2;
    const int k = 1 + trial % 2;
    const auto f = BooleanFunction::random(n, mix64(0xfa2, trial));
    ++sampled;
    const double eps = 1.0 / 16.0;
    if (distance_to_k_junta(f, k).convert_to<double>() < eps) continue;
    ++certified;
    c.require(classify_nonjunta(f, k, eps).any(), "uncovered far function");
  }
  c.require(certified >= 1000, "only certified " + std::to_string(certified));

  // (d) second-kind junta bound, plus the component bound in closed form
  for (int k = 2; k <= 4; ++k) {
    for (int n : {8, 10, 12}) {
      std::vector<int> positions;
      for (int i = 0; i < k; ++i) positions.push_back(1 + i * 2);
      const auto junta = random_k_junta(n, BooleanFunction::random(k, 0x77 + k), positions);
      const auto res = second_kind_tester(junta, k, 0.25, cfg);
      c.require(res.exact, "expected the exact expectation path");
      c.bound(res.inner_probability, 0.75, "second-kind inner probability");
    }
  }
  for (int i = 1; i <= 12; ++i) {
    const double delta = std::pow(2.0, -i);
    for (double factor : {1.0, 1.7, 4.0, 1.0 / delta}) {
      const double inf = std::min(1.0, delta * factor);
      c.require(influence_tester_robust_acceptance(inf, delta) >= 0.9,
                "component bound at delta=2^-" + std::to_string(i));
    }
  }
  return {9, "junta tester: margins, modes, coverage", c.pass,
          c.detail("min margin " + fmt(worst_margin) + ", " + std::to_string(certified) +
                   " far samples"),
          0};
}

// --------------------------------------------------------------- criterion 10
CriterionResult criterion_composition() {
  Checker c;
  {
    const auto outer = normalize_condition(and_example_solution(2));
    const auto comp =
        compose_solutions(outer, {identity_bit_solution(), identity_bit_solution()});
    c.bound(comp.solution.feasibility_residual(), 1e-9, "conjunction composition residual");
    c.require(comp.solution.min_eigenvalue() >= -1e-10, "conjunction composition psd");
  }
  {
    const auto outer = normalize_condition(and_example_solution(3));
    std::vector<GenericSolution> inners(3, identity_bit_solution());
    const auto comp = compose_solutions(outer, inners);
    c.bound(comp.solution.feasibility_residual(), 1e-9, "3-way conjunction residual");
    c.require(comp.solution.min_eigenvalue() >= -1e-10, "3-way conjunction psd");
  }
  {
    const auto outer = normalize_condition(ggt_generic_solution(build_ggt_solution(3, 1, 1)));
    std::vector<GenericSolution> inners(outer.arity, identity_bit_solution());
    const auto comp = compose_solutions(outer, inners);
    c.bound(comp.solution.feasibility_residual(), 1e-9, "group-testing composition residual");
    c.require(comp.solution.min_eigenvalue() >= -1e-10, "group-testing composition psd");
    c.require(comp.solution.objective() <= outer.objective() + 1e-9,
              "composition objective bound");
  }
  return {10, "composed solutions: feasible and psd", c.pass,
          c.detail("all compositions pass"), 0};
}

// --------------------------------------------------------------- criterion 11
CriterionResult criterion_gap_bound() {
  Checker c;
  int done = 0;
  for (int trial = 0; done < 200 && trial < 400; ++trial) {
    auto rng = make_stream(0x9a9, trial);
    const int dim = 4 + static_cast<int>(rng() % 61);  // up to 64
    const int r1 = 1 + static_cast<int>(rng() % (dim - 1));
    const int r2 = 1 + static_cast<int>(rng() % (dim - 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto projector = [&](int rank, std::uint64_t salt) {
      Eigen::MatrixXcd g(dim, rank);
      auto prng = make_stream(salt, trial);
      std::normal_distribution<double> pg(0.0, 1.0);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = cd(pg(prng), pg(prng));
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
      Eigen::MatrixXcd q = Eigen::MatrixXcd(qr.householderQ()).leftCols(rank);
      return Eigen::MatrixXcd(q * q.adjoint());
    };
    const auto p1 = projector(r1, 0xaa);
    const auto p2 = projector(r2, 0xbb);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cd(gauss(rng), gauss(rng));
    const Eigen::VectorXcd w = v - p1 * v;
    if (w.norm() < 1e-8) continue;
    const double delta = 0.02 + 0.9 * double(trial % 10) / 10.0;
    const auto res = spectral_gap_check(p1, p2, w, delta);
    c.require(res.pass, "gap bound trial " + std::to_string(trial));
    ++done;
  }
  c.require(done >= 200, "trial count");
  return {11, "effective spectral gap, randomized", c.pass, c.detail("200 trials pass"), 0};
}

// --------------------------------------------------------------- criterion 12
CriterionResult criterion_scaling() {
  Checker c;
  std::vector<double> xs, ys;
  for (int n = 6; n <= 12; ++n) {
    const int k = 2;
    const auto sol = build_ggt_solution(n, k, 1);
    const auto spec = algorithm_lambda_spec(sol, 8.0);
    const auto state = random_unit(std::size_t{1} << n, 0x5ca1e + n);
    volatile double sink = 0;
    auto time_once = [&] {
      const auto t0 = std::chrono::steady_clock::now();
      const auto out = reflect_lambda(state, spec, ReflectMode::walk);
      sink += out(0).real();
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    time_once();  // warm up
    double best = 1e9;
    const int reps = n <= 9 ? 40 : 8;
    for (int rep = 0; rep < reps; ++rep) best = std::min(best, time_once());
    xs.push_back(std::log(double(n) * std::pow(2.0, n)));
    ys.push_back(std::log(best));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = num / den;
  c.require(slope >= 0.9 && slope <= 1.3, "slope " + fmt(slope));
  return {12, "reflection cost scales near-linearly", c.pass,
          c.detail("slope " + fmt(slope)), 0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const std::vector<int>& only) {
  using Runner = CriterionResult (*)();
  const std::vector<Runner> runners = {
      criterion_qft,         criterion_counts,     criterion_lambda_blocks,
      criterion_adversary,   criterion_quantum_grid, criterion_walk_direct,
      criterion_classical,   criterion_distances,  criterion_junta,
      criterion_composition, criterion_gap_bound,  criterion_scaling};
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < runners.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = runners[i]();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace juntalab
