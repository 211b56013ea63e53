#include <doctest.h>

#include <cmath>

#include "juntalab/adversary.hpp"

using namespace juntalab;

TEST_CASE("solution parameters satisfy the pairing and balancing identities") {
  for (int n = 3; n <= 10; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int d = 1; k + d <= n; ++d) {
        const auto sol = build_ggt_solution(n, k, d);
        double small_sum = 0, large_sum = 0;
        for (int s = 1; s <= sol.s_max(); ++s) {
          const double product = sol.alpha[s - 1] * sol.beta[s - 1];
          const double expected = 1.0 / ((n - k) * binomial_d(n - k - 1, s - 1));
          CHECK(std::abs(product - expected) < 1e-12);
          const double a_side = binomial_d(n - k, s) * sol.alpha[s - 1] * sol.alpha[s - 1];
          const double b_side =
              (k + d) * binomial_d(n - k - d, s - 1) * sol.beta[s - 1] * sol.beta[s - 1];
          CHECK(std::abs(a_side - b_side) < 1e-12);
          small_sum += a_side;
          large_sum += b_side;
        }
        CHECK(small_sum == doctest::Approx(sol.w_objective).epsilon(1e-12));
        CHECK(large_sum == doctest::Approx(sol.w_objective).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS(build_ggt_solution(3, 2, 2));
}

TEST_CASE("telescoping series closed form") {
  CHECK(t_series(2, 3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(t_series(0, 5) == doctest::Approx(1.0));
  for (int b = 1; b <= 12; ++b)
    for (int a = 0; a <= b; ++a)
      CHECK(t_series(a, b) == doctest::Approx(double(b + 1) / (b - a + 1)).epsilon(1e-12));
}

TEST_CASE("objective scales like the square root of 1 + k/d") {
  const auto sol = build_ggt_solution(8, 2, 2);
  CHECK(sol.w_objective / std::sqrt(1.0 + 2.0 / 2.0) <= 10.0);
}

TEST_CASE("feasibility: closed-form count against literal summation") {
  const auto s411 = build_ggt_solution(4, 1, 1);
  CHECK(feasibility_residual(s411) < 1e-12);
  CHECK(feasibility_residual_literal(s411) < 1e-12);

  // the single-large-input case n = k + d
  const auto s422 = build_ggt_solution(4, 2, 2);
  CHECK(feasibility_residual(s422) < 1e-12);
  CHECK(feasibility_residual_literal(s422) < 1e-12);
  CHECK(s422.s_max() == 1);  // degenerate query-size range

  for (int n = 4; n <= 9; ++n)
    for (int k = 1; k + 1 <= n; ++k)
      for (int d = 1; k + d <= n; d += 2)
        CHECK(feasibility_residual(build_ggt_solution(n, k, d)) < 1e-9);
}

TEST_CASE("diagonal sums agree across inputs and sides") {
  const auto sol = build_ggt_solution(6, 2, 1);
  const auto generic = ggt_generic_solution(sol);
  double reference = -1;
  for (std::size_t r = 0; r < generic.domain.size(); ++r) {
    double diag = 0;
    for (const auto& x : generic.x) diag += x(r, r);
    if (reference < 0) reference = diag;
    CHECK(diag == doctest::Approx(reference).epsilon(1e-12));
  }
  CHECK(reference == doctest::Approx(sol.w_objective).epsilon(1e-12));
  CHECK(generic.feasibility_residual() < 1e-9);
  CHECK(generic.min_eigenvalue() >= -1e-10);
  CHECK(ggt_min_eigenvalue(sol) >= -1e-12);
}

TEST_CASE("query sets touching the hidden set are irrelevant on the small side") {
  const auto sol = build_ggt_solution(4, 1, 1);
  const auto generic = ggt_generic_solution(sol);
  const auto smalls = subsets_of_size(full_mask(4), 1);
  const auto larges = subsets_of_size(full_mask(4), 2);
  for (std::size_t r = 0; r < generic.domain.size(); ++r) {
    const bool is_small = generic.values[r] == 0;
    const mask_t hidden = is_small ? smalls[r] : larges[r - smalls.size()];
    for (mask_t s = 1; s < 16; ++s) {
      const bool irrelevant = is_small ? intersects(s, hidden) : popcount(s & hidden) != 1;
      CHECK(generic.irrelevant(static_cast<int>(r), static_cast<int>(s)) == irrelevant);
    }
  }
}

TEST_CASE("the weight-(n-1) conjunction example") {
  const auto sol = and_example_solution(4);
  // diagonal exactly sqrt(n) on every input
  for (std::size_t r = 0; r < sol.domain.size(); ++r) {
    double diag = 0;
    for (const auto& x : sol.x) diag += x(r, r);
    CHECK(diag == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK(sol.feasibility_residual() < 1e-12);
  CHECK(sol.min_eigenvalue() >= -1e-12);
  CHECK(sol.objective() == doctest::Approx(std::sqrt(4.0)));
  // variables set to one on a weight-(n-1) input are irrelevant there
  for (std::size_t r = 1; r < sol.domain.size(); ++r)
    for (int j = 0; j < 4; ++j)
      CHECK(sol.irrelevant(static_cast<int>(r), j) == (((sol.domain[r] >> j) & 1) != 0));
}

TEST_CASE("consistency: differing pairs share a mutually relevant variable") {
  for (const auto& sol :
       {and_example_solution(3), ggt_generic_solution(build_ggt_solution(4, 1, 1))}) {
    for (std::size_t i = 0; i < sol.domain.size(); ++i)
      for (std::size_t j = 0; j < sol.domain.size(); ++j) {
        if (sol.values[i] == sol.values[j]) continue;
        bool found = false;
        for (int v = 0; v < sol.arity && !found; ++v)
          found = !sol.irrelevant(static_cast<int>(i), v) &&
                  !sol.irrelevant(static_cast<int>(j), v) &&
                  (((sol.domain[i] ^ sol.domain[j]) >> v) & 1) != 0;
        CHECK(found);
      }
  }
}

TEST_CASE("hadamard preprocessing: conforming solutions pass through") {
  const auto ggt = ggt_generic_solution(build_ggt_solution(3, 1, 1));
  const auto fixed = normalize_condition(ggt);
  for (int v = 0; v < ggt.arity; ++v) CHECK((fixed.x[v] - ggt.x[v]).norm() < 1e-12);

  const auto anded = normalize_condition(and_example_solution(2));
  for (std::size_t i = 0; i < anded.domain.size(); ++i)
    for (std::size_t j = 0; j < anded.domain.size(); ++j) {
      if (anded.values[i] == anded.values[j]) continue;
      for (int v = 0; v < anded.arity; ++v)
        if ((((anded.domain[i] ^ anded.domain[j]) >> v) & 1) == 0)
          CHECK(anded.x[v](i, j) == 0.0);
    }
  CHECK(anded.feasibility_residual() < 1e-12);
  CHECK(anded.min_eigenvalue() >= -1e-10);
  // diagonal unchanged
  const auto raw = and_example_solution(2);
  for (int v = 0; v < 2; ++v)
    for (int r = 0; r < 3; ++r) CHECK(anded.x[v](r, r) == doctest::Approx(raw.x[v](r, r)));
}

TEST_CASE("composition with identity bits reproduces the outer solution") {
  const auto outer = normalize_condition(and_example_solution(2));
  const auto comp = compose_solutions(outer, {identity_bit_solution(), identity_bit_solution()});
  CHECK(comp.solution.feasibility_residual() < 1e-9);
  CHECK(comp.solution.min_eigenvalue() >= -1e-10);
  CHECK(comp.solution.objective() ==
        doctest::Approx(std::sqrt(2.0) * 1.0).epsilon(1e-9));
  // rows present in the outer domain keep their entries; the irrelevant
  // variable rule may add rows outside the outer promise
  CHECK(comp.solution.domain.size() >= outer.domain.size());
  for (std::size_t a = 0; a < outer.domain.size(); ++a) {
    for (std::size_t b = 0; b < outer.domain.size(); ++b) {
      std::size_t ca = 0, cb = 0;
      for (std::size_t r = 0; r < comp.solution.domain.size(); ++r) {
        if (comp.solution.domain[r] == outer.domain[a]) ca = r;
        if (comp.solution.domain[r] == outer.domain[b]) cb = r;
      }
      for (int v = 0; v < outer.arity; ++v)
        CHECK(comp.solution.x[v](ca, cb) == doctest::Approx(outer.x[v](a, b)).epsilon(1e-12));
    }
  }
}

TEST_CASE("composition of the group-testing solution with identity bits") {
  const auto outer = normalize_condition(ggt_generic_solution(build_ggt_solution(3, 1, 1)));
  std::vector<GenericSolution> inners(outer.arity, identity_bit_solution());
  const auto comp = compose_solutions(outer, inners);
  CHECK(comp.solution.feasibility_residual() < 1e-9);
  CHECK(comp.solution.min_eigenvalue() >= -1e-10);
  // composed domain covers the relaxed families, beyond the exact rows
  CHECK(comp.solution.domain.size() > outer.domain.size());
  CHECK(comp.solution.objective() <= outer.objective() * 1.0 + 1e-9);
}

TEST_CASE("unweighted adversary statistic") {
  const auto r31 = search_relation(3, 1);
  CHECK(unweighted_adversary_value(r31) == doctest::Approx(std::sqrt(3.0 / 2.0)).epsilon(1e-12));

  Relation singleton;
  singleton.arity = 2;
  singleton.ones = {0b01};
  singleton.zeros = {0b10};
  singleton.pairs = {{0, 0}};
  CHECK(unweighted_adversary_value(singleton) == doctest::Approx(1.0));

  const auto r42 = search_relation(4, 2);
  CHECK(unweighted_adversary_value(r42) ==
        doctest::Approx(std::sqrt(binomial_d(4, 2) / binomial_d(3, 2))).epsilon(1e-12));
  CHECK_THROWS(unweighted_adversary_value(Relation{}));
}
