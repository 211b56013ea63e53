#include "juntalab/boolfn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "juntalab/rng.hpp"

namespace juntalab {

namespace {
constexpr int kMaxArity = 24;
}

std::vector<mask_t> subsets_of_size(mask_t universe, int size) {
  std::vector<int> elems;
  for (int j = 1; j <= 64; ++j)
    if (contains(universe, j)) elems.push_back(j);
  std::vector<mask_t> out;
  if (size < 0 || size > static_cast<int>(elems.size())) return out;
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    mask_t m = 0;
    for (int i : idx) m = with_element(m, elems[i]);
    out.push_back(m);
    int pos = size - 1;
    while (pos >= 0 && idx[pos] == static_cast<int>(elems.size()) - size + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double binomial_d(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt big_binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BooleanFunction::BooleanFunction(int n, std::vector<int8_t> table)
    : n_(n), table_(std::move(table)) {
  if (n < 0 || n > kMaxArity) throw std::invalid_argument("arity out of range");
  if (table_.size() != (std::size_t{1} << n)) throw std::invalid_argument("table size != 2^n");
  for (int8_t v : table_)
    if (v != 1 && v != -1) throw std::invalid_argument("table entries must be +-1");
}

BooleanFunction BooleanFunction::constant(int n, int sign) {
  return BooleanFunction(n, std::vector<int8_t>(std::size_t{1} << n, sign > 0 ? 1 : -1));
}

BooleanFunction BooleanFunction::parity(int n, mask_t s) {
  std::vector<int8_t> t(std::size_t{1} << n);
  for (mask_t x = 0; x < t.size(); ++x) t[x] = (popcount(x & s) & 1) ? -1 : 1;
  return BooleanFunction(n, std::move(t));
}

BooleanFunction BooleanFunction::random(int n, std::uint64_t seed) {
  auto rng = make_stream(seed, 0x626f6f6cULL);
  std::vector<int8_t> t(std::size_t{1} << n);
  for (auto& v : t) v = (rng() & 1) ? -1 : 1;
  return BooleanFunction(n, std::move(t));
}

BooleanFunction BooleanFunction::parse_table(const std::string& text) {
  std::istringstream in(text);
  std::string line1, line2;
  if (!std::getline(in, line1) || !std::getline(in, line2))
    throw std::invalid_argument("truth table: expected two lines");
  if (line1.rfind("n=", 0) != 0) throw std::invalid_argument("truth table: missing n=");
  int n = std::stoi(line1.substr(2));
  if (n < 0 || n > kMaxArity) throw std::invalid_argument("truth table: arity out of range");
  if (line2.size() != (std::size_t{1} << n))
    throw std::invalid_argument("truth table: wrong number of characters");
  std::vector<int8_t> t(line2.size());
  for (std::size_t i = 0; i < line2.size(); ++i) {
    if (line2[i] == '0')
      t[i] = 1;
    else if (line2[i] == '1')
      t[i] = -1;
    else
      throw std::invalid_argument("truth table: characters must be 0/1");
  }
  return BooleanFunction(n, std::move(t));
}

std::string BooleanFunction::format_table() const {
  std::string out = "n=" + std::to_string(n_) + "\n";
  for (int8_t v : table_) out += (v == 1) ? '0' : '1';
  out += '\n';
  return out;
}

BooleanFunction BooleanFunction::read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

void BooleanFunction::write_table(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << format_table();
}

FourierSpectrum fourier_transform(const BooleanFunction& f) {
  const std::size_t size = f.size();
  FourierSpectrum spec;
  spec.n = f.n();
  spec.coeffs.resize(size);
  for (std::size_t i = 0; i < size; ++i) spec.coeffs[i] = f(i);
  // In-place fast Walsh-Hadamard, O(n 2^n).
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        double a = spec.coeffs[j];
        double b = spec.coeffs[j + h];
        spec.coeffs[j] = a + b;
        spec.coeffs[j + h] = a - b;
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(size);
  for (auto& c : spec.coeffs) c *= scale;
  return spec;
}

double FourierSpectrum::parseval_sum() const {
  double s = 0;
  for (double c : coeffs) s += c * c;
  return s;
}

BooleanFunction FourierSpectrum::inverse() const {
  std::vector<double> vals = coeffs;
  const std::size_t size = vals.size();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        double a = vals[j];
        double b = vals[j + h];
        vals[j] = a + b;
        vals[j + h] = a - b;
      }
    }
  }
  std::vector<int8_t> t(size);
  for (std::size_t i = 0; i < size; ++i) t[i] = vals[i] >= 0 ? 1 : -1;
  return BooleanFunction(n, std::move(t));
}

double FourierSpectrum::round_trip_error(const BooleanFunction& f) const {
  std::vector<double> vals = coeffs;
  const std::size_t size = vals.size();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        double a = vals[j];
        double b = vals[j + h];
        vals[j] = a + b;
        vals[j + h] = a - b;
      }
    }
  }
  double err = 0;
  for (std::size_t i = 0; i < size; ++i) err = std::max(err, std::abs(vals[i] - f(i)));
  return err;
}

double influence(const FourierSpectrum& spec, mask_t s) {
  double inside = 0, total = 0;
  for (std::size_t t = 0; t < spec.coeffs.size(); ++t) {
    double c2 = spec.coeffs[t] * spec.coeffs[t];
    total += c2;
    if ((t & s) == 0) inside += c2;
  }
  return total - inside;
}

double influence(const BooleanFunction& f, mask_t s) {
  return influence(fourier_transform(f), s);
}

std::vector<double> all_subset_influences(const FourierSpectrum& spec) {
  const std::size_t size = spec.coeffs.size();
  std::vector<double> g(size);
  double total = 0;
  for (std::size_t t = 0; t < size; ++t) {
    g[t] = spec.coeffs[t] * spec.coeffs[t];
    total += g[t];
  }
  // subset-sum (zeta) transform: g[W] = sum_{T subseteq W} coeff(T)^2
  for (int j = 0; j < spec.n; ++j) {
    const mask_t bit = mask_t{1} << j;
    for (std::size_t w = 0; w < size; ++w)
      if (w & bit) g[w] += g[w ^ bit];
  }
  std::vector<double> inf(size);
  const mask_t full = size - 1;
  for (std::size_t s = 0; s < size; ++s) inf[s] = total - g[(~s) & full];
  return inf;
}

double influence_resampling_bruteforce(const BooleanFunction& f, mask_t s) {
  const std::size_t size = f.size();
  const int sbits = popcount(s);
  // y = x off S, free on S; enumerate the free part via subset expansion.
  std::vector<mask_t> sub;
  sub.reserve(std::size_t{1} << sbits);
  mask_t m = 0;
  do {
    sub.push_back(m);
    m = (m - s) & s;
  } while (m != 0);
  std::uint64_t flips = 0;
  for (mask_t x = 0; x < size; ++x)
    for (mask_t r : sub)
      if (f(x) != f((x & ~s) | r)) ++flips;
  double prob = static_cast<double>(flips) / (static_cast<double>(size) * sub.size());
  return 2.0 * prob;
}

std::vector<int> influence_order(const BooleanFunction& f) {
  auto spec = fourier_transform(f);
  std::vector<double> inf(f.n());
  for (int j = 1; j <= f.n(); ++j) inf[j - 1] = influence(spec, mask_t{1} << (j - 1));
  std::vector<int> order(f.n());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return inf[a - 1] > inf[b - 1]; });
  return order;
}

double sub_influence_cut(const BooleanFunction& f, mask_t s, int cut,
                         const std::vector<int>& order) {
  if (cut < 0) throw std::invalid_argument("cut must be >= 0");
  if (static_cast<int>(order.size()) != f.n())
    throw std::invalid_argument("order must be a permutation of [n]");
  std::vector<int> rank(f.n() + 1, 0);
  {
    std::vector<bool> seen(f.n() + 1, false);
    for (int pos = 0; pos < f.n(); ++pos) {
      int j = order[pos];
      if (j < 1 || j > f.n() || seen[j]) throw std::invalid_argument("order is not a permutation");
      seen[j] = true;
      rank[j] = pos + 1;  // 1-based rank in the influence order
    }
  }
  auto spec = fourier_transform(f);
  double total = 0;
  for (std::size_t t = 1; t < spec.coeffs.size(); ++t) {
    // First-ranked element of T past the cut, if any.
    int best_rank = f.n() + 1, best_j = 0;
    for (int j = 1; j <= f.n(); ++j) {
      if (!contains(t, j) || rank[j] <= cut) continue;
      if (rank[j] < best_rank) {
        best_rank = rank[j];
        best_j = j;
      }
    }
    if (best_j != 0 && contains(s, best_j)) total += spec.coeffs[t] * spec.coeffs[t];
  }
  return total;
}

double sub_influence(const BooleanFunction& f, mask_t s, int k,
                     const std::vector<int>& order) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  long long cut = 200LL * k;
  if (cut > f.n()) cut = f.n();
  return sub_influence_cut(f, s, static_cast<int>(cut), order);
}

BigRational distance_to_k_junta(const BooleanFunction& f, int k) {
  const int n = f.n();
  if (k < 0 || k > n) throw std::invalid_argument("k out of range");
  const double work = binomial_d(n, k) * std::pow(2.0, n);
  if (work > 1e8) throw std::invalid_argument("distance_to_k_junta work guard exceeded");
  const std::size_t size = f.size();
  std::uint64_t best = size;  // mismatches, at most 2^n
  for (mask_t w : subsets_of_size(full_mask(n), k)) {
    // For each assignment of the window bits, the optimal junta takes the
    // majority sign over the coset of free coordinates (ties to +1).
    std::vector<std::int32_t> sum(std::size_t{1} << k, 0);
    std::vector<int> wbits;
    for (int j = 1; j <= n; ++j)
      if (contains(w, j)) wbits.push_back(j - 1);
    std::uint64_t mismatches = 0;
    std::vector<std::int32_t> count(std::size_t{1} << k, 0);
    for (mask_t x = 0; x < size; ++x) {
      std::size_t key = 0;
      for (std::size_t b = 0; b < wbits.size(); ++b) key |= ((x >> wbits[b]) & 1) << b;
      sum[key] += f(x);
      ++count[key];
    }
    for (std::size_t key = 0; key < sum.size(); ++key) {
      int plus = (count[key] + sum[key]) / 2;
      mismatches += std::min(plus, count[key] - plus);
    }
    best = std::min(best, mismatches);
    if (best == 0) break;
  }
  return BigRational(BigInt(best), BigInt(1) << n);
}

mask_t relevant_variables(const BooleanFunction& f) {
  auto spec = fourier_transform(f);
  mask_t rel = 0;
  for (std::size_t t = 0; t < spec.coeffs.size(); ++t)
    if (spec.coeffs[t] != 0.0) rel |= t;
  return rel;
}

mask_t relevant_variables_bruteforce(const BooleanFunction& f) {
  mask_t rel = 0;
  for (int j = 1; j <= f.n(); ++j) {
    const mask_t bit = mask_t{1} << (j - 1);
    for (mask_t x = 0; x < f.size(); ++x) {
      if (f(x) != f(x ^ bit)) {
        rel |= bit;
        break;
      }
    }
  }
  return rel;
}

}  // namespace juntalab
