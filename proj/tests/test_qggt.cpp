#include <doctest.h>

#include <cmath>
#include <numbers>

#include "juntalab/qcore.hpp"
#include "juntalab/qggt.hpp"
#include "juntalab/rng.hpp"

using namespace juntalab;

namespace {
constexpr double kPi = std::numbers::pi;

LambdaSpec random_spec(int n, int k, std::uint64_t seed, bool truncate = false) {
  LambdaSpec spec;
  spec.n = n;
  spec.k = k;
  spec.alpha = Eigen::VectorXd::Zero(n + 1);
  auto rng = make_stream(seed, 0xa1fa);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int top = truncate ? n - k - 1 : n - k;
  for (int l = 0; l <= top; ++l) spec.alpha(l) = gauss(rng);
  return spec;
}

Eigen::VectorXcd random_state(std::size_t dim, std::uint64_t seed) {
  auto rng = make_stream(seed, 0x57a7e);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = cd(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

// Aggregate kernel acceptance from a spectral measure, for cross-checks.
double acceptance_from_measure(const std::vector<std::pair<double, double>>& measure,
                               double delta, int a) {
  const std::size_t grid = std::size_t{1} << a;
  double reject = 0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double est = 2 * kPi * double(j) / double(grid);
    if (phase_distance(est) > delta) continue;
    for (const auto& [phi, w] : measure) reject += w * phase_kernel(phi - est, a);
  }
  return 1.0 - reject;
}

}  // namespace

TEST_CASE("block weight vectors from the coefficient law") {
  LambdaSpec spec;
  spec.n = 4;
  spec.k = 1;
  spec.alpha = Eigen::VectorXd::Ones(5);
  spec.alpha(4) = 0;  // entries beyond n-k stay zero
  const auto w0 = build_w(spec, 0);
  CHECK(w0.w.size() == 5);
  CHECK(w0.w(0) == doctest::Approx(4.0));
  CHECK(w0.w(1) == doctest::Approx(6.0));
  CHECK(w0.w(2) == doctest::Approx(2.0 * std::sqrt(6.0)));
  CHECK(w0.w(3) == doctest::Approx(2.0));
  CHECK(w0.w(4) == 0.0);

  // t = k: binomial factor collapses to 1
  const auto wk = build_w(spec, 1);
  for (int l = 1; l <= 3; ++l)
    CHECK(wk.w(l - 1) == doctest::Approx(std::sqrt(binomial_d(2, l - 1))));

  LambdaSpec zero = spec;
  zero.alpha.setZero();
  CHECK(build_w(zero, 0).norm == 0.0);
  CHECK(build_w(zero, 0).w_normalized.norm() == 0.0);
  CHECK_THROWS(build_w(spec, 2));

  // the walk route reproduces the direct normalization
  for (int n = 4; n <= 9; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      const auto rspec = random_spec(n, k, 17 * n + k);
      for (int t = 0; t <= k; ++t) {
        const auto direct = build_w(rspec, t);
        const auto walk = build_w_walk(rspec, t);
        CHECK((direct.w_normalized - walk.w_normalized).norm() < 1e-10);
      }
    }
}

TEST_CASE("brute-force projector: rank counts") {
  LambdaSpec only0;
  only0.n = 5;
  only0.k = 2;
  only0.alpha = Eigen::VectorXd::Zero(6);
  only0.alpha(0) = 1.0;
  const auto lam0 = lambda_bruteforce(only0);
  CHECK(lam0.rows() == 32);
  CHECK(std::abs(lam0.trace() - 1.0) < 1e-9);  // rank one

  const auto spec = random_spec(6, 2, 2);
  const auto lam = lambda_bruteforce(spec);
  CHECK(std::abs(lam.trace() - binomial_d(6, 2)) < 1e-8);
  CHECK((lam * lam - lam).norm() < 1e-9);
}

TEST_CASE("projector equals the direct-sum block law in the Fourier basis") {
  for (int n = 5; n <= 7; ++n) {
    for (int k = 1; 2 * k < n; ++k) {
      const auto spec = random_spec(n, k, 100 * n + k);
      const auto lam = lambda_bruteforce(spec);
      const Eigen::MatrixXd f = qft_matrix(n);
      const Eigen::MatrixXd conjugated = f.transpose() * lam * f;
      Eigen::MatrixXd expected =
          Eigen::MatrixXd::Zero(conjugated.rows(), conjugated.cols());
      const auto indices = fourier_basis_indices(n);
      std::vector<WVectors> wt;
      for (int t = 0; t <= k; ++t) wt.push_back(build_w(spec, t));
      for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = 0; j < indices.size(); ++j) {
          if (indices[i].t != indices[j].t || indices[i].x != indices[j].x) continue;
          const int t = indices[i].t;
          if (t > k) continue;
          expected(i, j) = wt[t].w_normalized(indices[i].l - t) *
                           wt[t].w_normalized(indices[j].l - t);
        }
      CHECK((conjugated - expected).norm() < 1e-9);
    }
  }
}

TEST_CASE("statement map carries irreducible vectors to the weighted sum") {
  const int n = 6, k = 2;
  const auto spec = random_spec(n, k, 5);
  for (int t = 0; t <= k; ++t) {
    std::vector<int> a, b;
    for (int i = 0; i < t; ++i) {
      a.push_back(2 * i + 1);
      b.push_back(2 * i + 2);
    }
    const auto v_top = specht_vector(n, n - k, t, a, b);
    // apply T |-> psi_T linearly
    Eigen::VectorXd mapped = Eigen::VectorXd::Zero(std::size_t{1} << n);
    for (mask_t tset : subsets_of_size(full_mask(n), n - k))
      if (v_top(tset) != 0.0) mapped += v_top(tset) * lambda_statement_vector(spec, tset);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(std::size_t{1} << n);
    for (int l = t; l <= n - k; ++l)
      expected += spec.alpha(l) * binomial_d(n - l - t, k - t) * specht_vector(n, l, t, a, b);
    CHECK((mapped - expected).norm() < 1e-9);
  }
}

TEST_CASE("reflection fixes statement vectors and negates the witness") {
  const int n = 6, k = 2, d = 1;
  const auto sol = build_ggt_solution(n, k, d);
  const auto spec = algorithm_lambda_spec(sol, 8.0);

  for (mask_t tset : {mask_t{0b001111}, mask_t{0b111100}}) {
    Eigen::VectorXcd psi = lambda_statement_vector(spec, tset).cast<cd>();
    const auto reflected = reflect_lambda(psi, spec, ReflectMode::direct);
    CHECK((reflected - psi).norm() < 1e-8 * psi.norm());
  }

  // the witness of the large side lies in the kernel
  const mask_t b_set = 0b000111;
  const Eigen::VectorXcd u = qggt_witness(sol, 8.0, b_set, 1);
  const auto reflected = reflect_lambda(u, spec, ReflectMode::direct);
  CHECK((reflected + u).norm() < 1e-8 * u.norm());

  // reflections square to the identity
  const auto state = random_state(std::size_t{1} << n, 44);
  for (auto mode : {ReflectMode::direct, ReflectMode::walk}) {
    const auto twice = reflect_lambda(reflect_lambda(state, spec, mode), spec, mode);
    CHECK((twice - state).norm() < 1e-9);
  }
}

TEST_CASE("walk and direct reflections agree; both match the dense projector") {
  for (int n = 5; n <= 7; ++n) {
    const int k = 2;
    const auto spec = random_spec(n, k, 7 * n, /*truncate=*/true);
    const Eigen::MatrixXd lam = lambda_bruteforce(spec);
    const std::size_t dim = std::size_t{1} << n;
    const Eigen::MatrixXd dense_reflection = 2.0 * lam - Eigen::MatrixXd::Identity(dim, dim);
    for (int trial = 0; trial < 5; ++trial) {
      const auto state = random_state(dim, 900 + 10 * n + trial);
      const auto direct = reflect_lambda(state, spec, ReflectMode::direct);
      const auto walk = reflect_lambda(state, spec, ReflectMode::walk);
      CHECK((direct - walk).norm() < 1e-8);
      CHECK((dense_reflection.cast<cd>() * state - direct).norm() < 1e-8);
    }
  }
}

TEST_CASE("blockwise spectral measure matches the dense operator") {
  const int n = 4, k = 1, d = 1;
  const auto sol = build_ggt_solution(n, k, d);
  const auto spec = algorithm_lambda_spec(sol, 8.0);
  for (Side side : {Side::small, Side::large}) {
    for (auto mode : {IrrelevantMode::phase_faithful, IrrelevantMode::random_reflection}) {
      const mask_t a = side == Side::small ? 0b0001 : 0b0011;
      RelaxedOracle relaxed(n, k, d, side, a, OverridePolicy::seeded_random, 77);
      const BlockOracle oracle = make_block_oracle(relaxed, mode, 42);

      const auto measure = qggt_spectral_measure(oracle, spec);
      double total = 0;
      for (const auto& [phi, w] : measure) total += w;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

      // dense route: build U column by column and take the Schur measure
      const int dw = oracle.workspace_dim();
      const std::size_t dim = (std::size_t{1} << n) * dw;
      Eigen::MatrixXcd u(dim, dim);
      for (std::size_t c = 0; c < dim; ++c) {
        Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(dim);
        basis(c) = 1.0;
        u.col(c) = qggt_apply_u(oracle, spec, basis);
      }
      Eigen::VectorXcd init = Eigen::VectorXcd::Zero(dim);
      init(0) = 1.0;
      const auto dense = spectral_measure(u, init);

      const double delta = 1.0 / (64.0 * sol.w_objective);
      for (int a_bits : {6, 9}) {
        CHECK(acceptance_from_measure(measure, delta, a_bits) ==
              doctest::Approx(acceptance_from_measure(dense, delta, a_bits)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("the large-side witness is a fixed point of the walk operator") {
  const int n = 6, k = 1, d = 2;
  const auto sol = build_ggt_solution(n, k, d);
  const auto spec = algorithm_lambda_spec(sol, 8.0);
  const mask_t b_set = 0b000111;
  RelaxedOracle relaxed(n, k, d, Side::large, b_set, OverridePolicy::seeded_random, 3);
  const BlockOracle oracle = make_block_oracle(relaxed, IrrelevantMode::random_reflection, 9);

  const Eigen::VectorXcd u = qggt_witness(sol, 8.0, b_set, oracle.workspace_dim());
  const Eigen::VectorXcd applied = qggt_apply_u(oracle, spec, u);
  CHECK((applied - u).norm() < 1e-9 * u.norm());

  // overlap of the normalized witness with the start state
  const double overlap = std::abs(u(0)) / u.norm();
  CHECK(overlap >= 1.0 / std::sqrt(1.0 + 1.0 / 64.0) - 1e-12);
}

TEST_CASE("small-side amplitude near phase zero obeys the gap bound") {
  const int n = 5, k = 1, d = 1;
  const auto sol = build_ggt_solution(n, k, d);
  const auto spec = algorithm_lambda_spec(sol, 8.0);
  RelaxedOracle relaxed(n, k, d, Side::small, 0b00001, OverridePolicy::seeded_random, 11);
  const BlockOracle oracle = make_block_oracle(relaxed, IrrelevantMode::random_reflection, 5);
  const int dw = oracle.workspace_dim();
  const std::size_t subsets = std::size_t{1} << n;
  const std::size_t dim = subsets * dw;

  // Pi1 = I - Lambda (x) I, Pi2 = (I - O_f)/2, w = psi_A (x) |0>
  const Eigen::MatrixXd lam_small = lambda_bruteforce(spec);
  Eigen::MatrixXcd pi1 = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t s = 0; s < subsets; ++s)
    for (std::size_t s2 = 0; s2 < subsets; ++s2)
      for (int w = 0; w < dw; ++w)
        pi1(s * dw + w, s2 * dw + w) = (s == s2 ? 1.0 : 0.0) - lam_small(s, s2);
  Eigen::MatrixXcd of = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t s = 0; s < subsets; ++s) {
    const Eigen::MatrixXcd block =
        s == 0 ? Eigen::MatrixXcd(-Eigen::MatrixXcd::Identity(dw, dw)) : oracle.block(s);
    for (int w1 = 0; w1 < dw; ++w1)
      for (int w2 = 0; w2 < dw; ++w2) of(s * dw + w1, s * dw + w2) = block(w1, w2);
  }
  const Eigen::MatrixXcd pi2 = 0.5 * (Eigen::MatrixXcd::Identity(dim, dim) - of);

  const Eigen::VectorXd psi_small = lambda_statement_vector(spec, full_mask(n) & ~mask_t{0b00001});
  Eigen::VectorXcd w_vec = Eigen::VectorXcd::Zero(dim);
  for (std::size_t s = 0; s < subsets; ++s) w_vec(s * dw) = psi_small(s);

  const double delta = 1.0 / (64.0 * sol.w_objective);
  const auto check = spectral_gap_check(pi1, pi2, w_vec, 2.0 * delta);
  CHECK(check.pass);
  CHECK(check.lhs <= delta * std::sqrt(1.0 + 64.0 * sol.w_objective * sol.w_objective) + 1e-9);
}

TEST_CASE("end-to-end decisions on a small grid, all oracle modes") {
  for (int n : {4, 6}) {
    for (int k = 1; k <= 2; ++k) {
      for (int d = 1; d <= 2; ++d) {
        if (k + d > n) continue;
        for (Side side : {Side::small, Side::large}) {
          for (auto mode : {IrrelevantMode::phase_faithful, IrrelevantMode::random_reflection,
                            IrrelevantMode::random_unitary}) {
            const int size = side == Side::small ? k : k + d;
            const mask_t a = full_mask(size);
            RelaxedOracle relaxed(n, k, d, side, a, OverridePolicy::seeded_random,
                                  1000 + n + 10 * k + d);
            BlockOracle oracle = make_block_oracle(relaxed, mode, 555);
            if (!oracle.is_reflection(1e-9)) oracle = reflectionize(oracle);
            const auto res = qggt_run(oracle, k, d);
            CHECK(res.accept == (side == Side::small));
            const double correct_prob = side == Side::small
                                            ? res.acceptance_probability
                                            : 1.0 - res.acceptance_probability;
            CHECK(correct_prob >= 2.0 / 3.0);
            CHECK(res.oracle_queries == (std::uint64_t{1} << res.ancilla_bits) - 1);
          }
        }
      }
    }
  }
}

TEST_CASE("padding handles universes at or below twice the hidden size") {
  const int n = 3, k = 2, d = 1;  // n <= 2k, forces dummy elements
  RelaxedOracle relaxed(n, k, d, Side::large, 0b111, OverridePolicy::exact, 2);
  const BlockOracle oracle = make_block_oracle(relaxed, IrrelevantMode::phase_faithful, 0);
  const auto res = qggt_run(oracle, k, d);
  CHECK(res.padded_n == 5);
  CHECK_FALSE(res.accept);
  CHECK(1.0 - res.acceptance_probability >= 2.0 / 3.0);
}
