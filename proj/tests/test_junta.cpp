#include <doctest.h>

#include <cmath>
#include <numbers>

#include "juntalab/instances.hpp"
#include "juntalab/junta.hpp"
#include "juntalab/rng.hpp"

using namespace juntalab;

TEST_CASE("influence tester: certainty at zero, closed form at the threshold") {
  const auto f = BooleanFunction::parity(3, 0b011);
  // V disjoint from the relevant pair: zero influence, zero acceptance
  for (double delta : {0.5, 0.1, 0.01}) {
    const auto res = influence_tester(f, 0b100, delta);
    CHECK(res.influence == 0.0);
    CHECK(res.acceptance_probability == 0.0);
  }
  for (int rounds = 0; rounds < 12; ++rounds) CHECK(amplified_probability(0.0, rounds) == 0.0);

  // parity on two bits: pre-amplification probability is exactly 1/2
  const auto parity2 = BooleanFunction::parity(2, 0b11);
  const auto res = influence_tester(parity2, 0b01, 0.25);
  CHECK(res.pre_amplification_probability == doctest::Approx(0.5));

  // acceptance at influence exactly delta stays >= 0.9 down the dyadic grid
  for (int i = 1; i <= 10; ++i) {
    const double delta = std::pow(2.0, -i);
    CHECK(influence_tester_acceptance(delta, delta) >= 0.9);
  }
}

TEST_CASE("influence tester circuit matches the closed form") {
  const auto f = BooleanFunction::random(3, 555);
  for (mask_t v : {mask_t{0b001}, mask_t{0b011}, mask_t{0b111}}) {
    const auto res = influence_tester(f, v, 0.25, /*build_circuit=*/true);
    REQUIRE(res.circuit.has_value());
    Eigen::VectorXcd start = Eigen::VectorXcd::Zero(res.circuit->dim());
    start(0) = 1.0;
    const Eigen::VectorXcd final = res.circuit->apply(start);
    // marked mass = pairs with f(x) != f(y)
    double prob = 0;
    const int vbits = popcount(v);
    std::vector<int> vpos;
    for (int j = 1; j <= f.n(); ++j)
      if (contains(v, j)) vpos.push_back(j - 1);
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(final.size()); ++idx) {
      const mask_t x = idx >> vbits;
      mask_t y = x & ~v;
      for (int b = 0; b < vbits; ++b)
        if ((idx >> b) & 1) y |= mask_t{1} << vpos[b];
      if (f(x) != f(y)) prob += std::norm(final(idx));
    }
    CHECK(prob == doctest::Approx(res.acceptance_probability).epsilon(1e-10));
  }
}

TEST_CASE("staged acceptance: at least 0.9 above the threshold, zero at zero") {
  for (double delta : {0.5, 0.1, 0.03, 1.0 / 128}) {
    CHECK(influence_tester_robust_acceptance(0.0, delta) == 0.0);
    for (double factor : {1.0, 1.3, 2.0, 5.0, 17.0}) {
      const double inf = std::min(1.0, delta * factor);
      CHECK(influence_tester_robust_acceptance(inf, delta) >= 0.9);
    }
    CHECK(influence_tester_robust_acceptance(1.0, delta) >= 0.9);
  }
}

TEST_CASE("compressed blocks equal the literal compute-flag-uncompute reflection") {
  const auto f = BooleanFunction::random(3, 99);
  const double delta = 0.2;
  for (mask_t v : {mask_t{0b001}, mask_t{0b110}}) {
    const auto res = influence_tester(f, v, delta, /*build_circuit=*/true);
    REQUIRE(res.circuit.has_value());
    // literal reflection: conjugate the marked-phase flip by the circuit
    const Eigen::MatrixXcd c = res.circuit->matrix();
    const std::size_t dim = c.rows();
    Eigen::MatrixXcd zmarked = Eigen::MatrixXcd::Identity(dim, dim);
    const int vbits = popcount(v);
    std::vector<int> vpos;
    for (int j = 1; j <= f.n(); ++j)
      if (contains(v, j)) vpos.push_back(j - 1);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const mask_t x = idx >> vbits;
      mask_t y = x & ~v;
      for (int b = 0; b < vbits; ++b)
        if ((idx >> b) & 1) y |= mask_t{1} << vpos[b];
      if (f(x) != f(y)) zmarked(idx, idx) = -1.0;
    }
    const Eigen::MatrixXcd refl = c.adjoint() * zmarked * c;
    CHECK((refl * refl - Eigen::MatrixXcd::Identity(dim, dim)).norm() < 1e-10);
    // action on |0>: overlap is 1 - 2 * acceptance
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(dim);
    zero(0) = 1.0;
    const cd c00 = (zero.adjoint() * refl * zero)(0, 0);
    CHECK(c00.real() ==
          doctest::Approx(1.0 - 2.0 * res.acceptance_probability).epsilon(1e-10));
    CHECK(std::abs(c00.imag()) < 1e-12);
  }
}

TEST_CASE("full-space circuit oracle and its two-dimensional compression agree") {
  // Per subset the plane span{|0>, O|0>} is invariant and the compressed
  // block reproduces the action on it exactly. Across subsets the reflection
  // about the statement span can hand one branch another branch's workspace
  // vector, which the compression identifies; that transfer is weak, so the
  // acceptance probabilities agree to ~1e-7 here while decisions coincide.
  const int n = 3, k = 1, d = 1;
  const auto f = BooleanFunction::random(n, 4711);
  const double delta = 0.3;
  const int rounds = influence_tester_rounds(delta);

  Eigen::MatrixXcd had = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  for (int b = 0; b < 2 * n; ++b) {
    Eigen::MatrixXcd next(2 * had.rows(), 2 * had.cols());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    next << had * inv_sqrt2, had * inv_sqrt2, had * inv_sqrt2, -had * inv_sqrt2;
    had = std::move(next);
  }
  const std::size_t dim = std::size_t{1} << (2 * n);

  std::vector<Eigen::MatrixXcd> full_blocks, small_blocks;
  for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
    std::vector<int> vpos;
    for (int j = 1; j <= n; ++j)
      if (contains(s, j)) vpos.push_back(j - 1);
    std::vector<bool> marked(dim, false);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const mask_t x = idx >> n;
      const mask_t r = idx & full_mask(n);
      mask_t y = x & ~s;
      for (std::size_t b = 0; b < vpos.size(); ++b)
        if ((r >> b) & 1) y |= mask_t{1} << vpos[b];
      marked[idx] = f(x) != f(y);
    }
    const auto amp = amplitude_amplify(UnitaryOp::from_matrix(had), marked, rounds);
    Eigen::MatrixXcd zmarked = Eigen::MatrixXcd::Identity(dim, dim);
    for (std::size_t idx = 0; idx < dim; ++idx)
      if (marked[idx]) zmarked(idx, idx) = -1.0;
    const Eigen::MatrixXcd circuit = amp.op.matrix();
    full_blocks.push_back(circuit.adjoint() * zmarked * circuit);

    const double acc = amplified_probability(influence(f, s) / 2, rounds);
    const double c = 1.0 - 2.0 * acc;
    const double off = 2.0 * std::sqrt(std::max(0.0, acc * (1.0 - acc)));
    Eigen::MatrixXcd block(2, 2);
    block << c, off, off, -c;
    small_blocks.push_back(block);
  }
  const BlockOracle full(n, static_cast<int>(dim), std::move(full_blocks), std::nullopt, 0, 0, 0);
  const BlockOracle compressed(n, 2, std::move(small_blocks), std::nullopt, 0, 0, 0);
  REQUIRE(full.is_reflection(1e-9));

  const auto res_small = qggt_run(compressed, k, d);

  // full-space reference: dense operator, Schur measure, same grid window
  const auto sol = build_ggt_solution(n, k, d);
  const auto spec = algorithm_lambda_spec(sol, 8.0);
  const std::size_t total = (std::size_t{1} << n) * dim;
  Eigen::MatrixXcd u_dense(total, total);
  for (std::size_t col = 0; col < total; ++col) {
    Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(total);
    basis(col) = 1.0;
    u_dense.col(col) = qggt_apply_u(full, spec, basis);
  }
  Eigen::VectorXcd init = Eigen::VectorXcd::Zero(total);
  init(0) = 1.0;
  const auto measure = spectral_measure(u_dense, init);
  const std::size_t grid = std::size_t{1} << res_small.ancilla_bits;
  double reject = 0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double est = 2 * std::numbers::pi * double(j) / double(grid);
    if (phase_distance(est) > res_small.delta) continue;
    for (const auto& [phi, w] : measure)
      reject += w * phase_kernel(phi - est, res_small.ancilla_bits);
  }
  const double full_accept = 1.0 - reject;
  CHECK(std::abs(full_accept - res_small.acceptance_probability) < 1e-6);
  CHECK((full_accept >= 0.5) == (res_small.acceptance_probability >= 0.5));
}

TEST_CASE("first kind accepts clean juntas and rejects wide parities") {
  JuntaConfig cfg;
  cfg.seed = 5;

  // k-junta with every relevant influence well above the threshold
  const auto junta = random_k_junta(6, BooleanFunction::parity(2, 0b11), {2, 5});
  for (int ell : {0, 1}) {
    const auto res = first_kind_tester(junta, 2, 0.2, ell, cfg);
    REQUIRE_FALSE(res.promise_void);
    CHECK(res.acceptance_probability >= 2.0 / 3.0);
  }

  // parity on k + 2^ell variables: a legal large-side instance
  const auto parity = BooleanFunction::parity(6, 0b000111);
  const auto rej = first_kind_tester(parity, 2, 0.2, 0, cfg);
  CHECK(1.0 - rej.acceptance_probability >= 2.0 / 3.0);

  // beyond the arity the promise is void and the subtester accepts
  const auto void_res = first_kind_tester(junta, 2, 0.2, 3, cfg);
  CHECK(void_res.promise_void);
  CHECK(void_res.acceptance_probability == 1.0);
}

TEST_CASE("compressed-circuit mode matches ideal decisions on a clean grid") {
  JuntaConfig ideal_cfg;
  ideal_cfg.seed = 6;
  JuntaConfig comp_cfg = ideal_cfg;
  comp_cfg.mode = JuntaMode::compressed_circuit;

  std::vector<BooleanFunction> functions;
  functions.push_back(random_k_junta(5, BooleanFunction::parity(2, 0b11), {1, 4}));
  functions.push_back(BooleanFunction::parity(5, 0b00111));
  functions.push_back(BooleanFunction::parity(6, 0b001111));
  functions.push_back(BooleanFunction::constant(5, 1));
  for (const auto& f : functions) {
    for (int ell : {0, 1}) {
      const int k = 2;
      if (k + (1 << ell) > f.n()) continue;
      const auto a = first_kind_tester(f, k, 0.25, ell, ideal_cfg);
      const auto b = first_kind_tester(f, k, 0.25, ell, comp_cfg);
      CHECK(a.accept == b.accept);
    }
  }
}

TEST_CASE("second kind: juntas stay at or below 3/4, constants at zero") {
  JuntaConfig cfg;
  for (int k = 2; k <= 3; ++k) {
    const auto junta =
        random_k_junta(8, BooleanFunction::random(k, 31 + k), [&] {
          std::vector<int> pos;
          for (int i = 1; i <= k; ++i) pos.push_back(2 * i);
          return pos;
        }());
    const auto res = second_kind_tester(junta, k, 0.2, cfg);
    CHECK(res.exact);
    CHECK(res.inner_probability <= 0.75 + 1e-12);
    CHECK(res.accept);
  }

  const auto res = second_kind_tester(BooleanFunction::constant(6, -1), 2, 0.3, cfg);
  CHECK(res.inner_probability == 0.0);
  CHECK(res.accept);
  CHECK_THROWS(second_kind_tester(BooleanFunction::constant(4, 1), 1, 0.3, cfg));
}

TEST_CASE("whole tester: juntas in, wide parities out") {
  JuntaConfig cfg;
  cfg.seed = 11;
  const int k = 2;
  const double eps = 0.2;

  const auto junta = random_k_junta(6, BooleanFunction::parity(2, 0b11), {3, 6});
  const auto verdict = junta_test(junta, k, eps, cfg);
  CHECK(verdict.accept_probability >= 2.0 / 3.0);
  CHECK(verdict.decision_junta);

  const auto parity = BooleanFunction::parity(3, 0b111);  // k+1 relevant variables
  const auto far = junta_test(parity, k, eps, cfg);
  CHECK(1.0 - far.accept_probability >= 2.0 / 3.0);
  CHECK_FALSE(far.decision_junta);

  const auto constant = junta_test(BooleanFunction::constant(5, 1), k, eps, cfg);
  CHECK(constant.decision_junta);
  CHECK(constant.accept_probability >= 2.0 / 3.0);
}

TEST_CASE("non-junta case classification") {
  // parity on all n > k variables: the ell = 0 case holds
  const auto parity = BooleanFunction::parity(4, 0b1111);
  const auto cases = classify_nonjunta(parity, 2, 0.25);
  CHECK(cases.any());
  CHECK(!cases.first_kind_ells.empty());
  CHECK(cases.first_kind_ells.front() == 0);

  // sampled certified-far functions always land in some case
  int certified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + trial % 2;
    const int k = 1 + trial % 2;
    if (k < 2) continue;  // classification in the tester's regime
    const auto f = BooleanFunction::random(n, 700 + trial);
    const double dist = distance_to_k_junta(f, k).convert_to<double>();
    const double eps = 0.08;
    if (dist < eps) continue;
    ++certified;
    CHECK(classify_nonjunta(f, k, eps).any());
  }
  CHECK(certified > 5);
}
