#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "juntalab/boolfn.hpp"
#include "juntalab/instances.hpp"
#include "juntalab/rng.hpp"

using namespace juntalab;

namespace {

// Independent oracle: coefficient by direct summation over all inputs.
double fourier_bruteforce(const BooleanFunction& f, mask_t s) {
  double sum = 0;
  for (mask_t x = 0; x < f.size(); ++x)
    sum += f(x) * ((popcount(x & s) & 1) ? -1.0 : 1.0);
  return sum / static_cast<double>(f.size());
}

BooleanFunction and2() {
  // -1 exactly on x = 11.
  return BooleanFunction(2, {1, 1, 1, -1});
}

}  // namespace

TEST_CASE("fourier transform matches hand values and brute force") {
  const auto constant = fourier_transform(BooleanFunction::constant(3, +1));
  CHECK(constant.coeffs[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (mask_t s = 1; s < 8; ++s) CHECK(std::abs(constant.coeffs[s]) < 1e-14);

  const auto parity = fourier_transform(BooleanFunction::parity(3, 0b111));
  CHECK(parity.coeffs[0b111] == doctest::Approx(1.0).epsilon(1e-14));
  for (mask_t s = 0; s < 8; ++s)
    if (s != 0b111) CHECK(std::abs(parity.coeffs[s]) < 1e-14);

  const auto spec = fourier_transform(and2());
  CHECK(spec.coeffs[0b00] == doctest::Approx(0.5));
  CHECK(spec.coeffs[0b01] == doctest::Approx(0.5));
  CHECK(spec.coeffs[0b10] == doctest::Approx(0.5));
  CHECK(spec.coeffs[0b11] == doctest::Approx(-0.5));

  for (int n = 1; n <= 5; ++n) {
    const auto f = BooleanFunction::random(n, 17 + n);
    const auto fs = fourier_transform(f);
    for (mask_t s = 0; s < f.size(); ++s)
      CHECK(fs.coeffs[s] == doctest::Approx(fourier_bruteforce(f, s)).epsilon(1e-12));
  }
}

TEST_CASE("parseval and round trip") {
  for (int n = 1; n <= 6; ++n) {
    const auto f = BooleanFunction::random(n, 100 + n);
    const auto spec = fourier_transform(f);
    CHECK(std::abs(spec.parseval_sum() - 1.0) < 1e-12);
    CHECK(spec.round_trip_error(f) < 1e-12);
  }
}

TEST_CASE("influence examples and resampling cross-check") {
  CHECK(influence(BooleanFunction::parity(3, 0b111), 0b001) == doctest::Approx(1.0));
  CHECK(influence(BooleanFunction::random(4, 5), 0) == doctest::Approx(0.0));
  CHECK(influence(and2(), 0b01) == doctest::Approx(0.5));

  for (int n = 2; n <= 4; ++n) {
    const auto f = BooleanFunction::random(n, 200 + n);
    for (mask_t s = 0; s < f.size(); ++s)
      CHECK(influence(f, s) ==
            doctest::Approx(influence_resampling_bruteforce(f, s)).epsilon(1e-12));
  }
}

TEST_CASE("influence monotonicity and subadditivity") {
  for (int n = 3; n <= 6; n += 3) {
    const auto f = BooleanFunction::random(n, 31 + n);
    const auto spec = fourier_transform(f);
    const auto all = all_subset_influences(spec);
    for (mask_t s = 0; s < f.size(); ++s) {
      CHECK(all[s] == doctest::Approx(influence(spec, s)).epsilon(1e-12));
      // nested pairs: supersets of s
      for (mask_t t = s;; t = (t + 1) | s) {
        if (t >= f.size()) break;
        CHECK(all[s] <= all[t] + 1e-12);
      }
    }
    for (mask_t s = 0; s < f.size(); ++s)
      for (mask_t t = 0; t < f.size(); ++t)
        CHECK(all[s | t] <= all[s] + all[t] + 1e-12);
  }
}

TEST_CASE("far functions carry influence outside every small window") {
  int far_found = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + (trial % 2);
    const int k = 1 + (trial % 2);
    const auto f = BooleanFunction::random(n, 900 + trial);
    const BigRational dist = distance_to_k_junta(f, k);
    const double eps = dist.convert_to<double>();
    if (eps <= 0) continue;
    ++far_found;
    for (mask_t w : subsets_of_size(full_mask(n), k))
      CHECK(influence(f, full_mask(n) & ~w) >= eps - 1e-12);
  }
  CHECK(far_found > 10);
}

TEST_CASE("sub-influence: zero prefix, empty set, partition oracle") {
  const auto f = BooleanFunction::random(4, 77);
  const auto order = influence_order(f);
  CHECK(sub_influence(f, full_mask(4), 1, order) == 0.0);  // 200k covers everything
  CHECK(sub_influence_cut(f, 0, 0, order) == 0.0);

  // cut = 0 with the reversed order: mass of each Fourier set lands on its
  // largest element.
  const auto g = BooleanFunction::random(6, 78);
  const auto gs = fourier_transform(g);
  std::vector<int> reversed{6, 5, 4, 3, 2, 1};
  double expected = 0;
  for (mask_t t = 1; t < g.size(); ++t) expected += gs.coeffs[t] * gs.coeffs[t];
  CHECK(sub_influence_cut(g, full_mask(6), 0, reversed) == doctest::Approx(expected).epsilon(1e-12));
  for (int j = 1; j <= 6; ++j) {
    double by_max = 0;
    for (mask_t t = 1; t < g.size(); ++t) {
      int max_elem = 0;
      for (int e = 1; e <= 6; ++e)
        if (contains(t, e)) max_elem = e;
      if (max_elem == j) by_max += gs.coeffs[t] * gs.coeffs[t];
    }
    CHECK(sub_influence_cut(g, mask_t{1} << (j - 1), 0, reversed) ==
          doctest::Approx(by_max).epsilon(1e-12));
  }

  // dominance and exact disjoint additivity
  const auto order6 = influence_order(g);
  for (int cut : {0, 1, 3}) {
    for (mask_t s = 0; s < 64; s += 7) {
      const double sub = sub_influence_cut(g, s, cut, order6);
      CHECK(sub >= -1e-15);
      CHECK(sub <= influence(g, s) + 1e-12);
    }
    const mask_t a = 0b010110, b = 0b101001;
    CHECK(sub_influence_cut(g, a | b, cut, order6) ==
          doctest::Approx(sub_influence_cut(g, a, cut, order6) +
                          sub_influence_cut(g, b, cut, order6))
              .epsilon(1e-14));
  }
  CHECK_THROWS(sub_influence(f, 1, 0, order));
}

TEST_CASE("distance to k-junta") {
  const auto parity3 = BooleanFunction::parity(3, 0b111);
  CHECK(distance_to_k_junta(parity3, 3) == BigRational(0));
  CHECK(distance_to_k_junta(parity3, 2) == BigRational(1, 2));

  // AND on bits 1,2 embedded in four variables
  const auto embedded = random_k_junta(4, and2(), {1, 2});
  CHECK(distance_to_k_junta(embedded, 2) == BigRational(0));

  for (int trial = 0; trial < 5; ++trial) {
    const auto core = BooleanFunction::random(2, 300 + trial);
    const auto junta = random_k_junta(5, core, {2, 4});
    CHECK(distance_to_k_junta(junta, 2) == BigRational(0));
  }
  CHECK_THROWS(distance_to_k_junta(parity3, 4));
}

TEST_CASE("relevant variables") {
  CHECK(relevant_variables(BooleanFunction::constant(3, -1)) == 0);
  CHECK(relevant_variables(BooleanFunction::parity(3, 0b010)) == 0b010);
  const auto addr = addressing_function(2, {1, 2});
  CHECK(relevant_variables(addr) == 0b111);
  for (int n = 2; n <= 5; ++n) {
    const auto f = BooleanFunction::random(n, 400 + n);
    CHECK(relevant_variables(f) == relevant_variables_bruteforce(f));
  }
}

TEST_CASE("truth table files are bit-exact") {
  const auto f = BooleanFunction::random(5, 4242);
  const auto path = std::filesystem::temp_directory_path() / "juntalab_table_test.txt";
  f.write_table(path.string());
  const auto g = BooleanFunction::read_table(path.string());
  CHECK(f.table() == g.table());
  const std::string text = f.format_table();
  CHECK(BooleanFunction::parse_table(text).format_table() == text);
  std::filesystem::remove(path);

  CHECK_THROWS(BooleanFunction::parse_table("n=2\n01"));
  CHECK_THROWS(BooleanFunction::parse_table("n=2\n01x0"));
}
