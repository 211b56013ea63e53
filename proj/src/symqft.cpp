#include "juntalab/symqft.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace juntalab {

namespace {

constexpr int kMatrixCap = 12;

inline double rot_coeff_stay(int m, int t, int l) {
  return std::sqrt(static_cast<double>(m - l - t) / (m - 2 * t));
}
inline double rot_coeff_move(int m, int t, int l) {
  return std::sqrt(static_cast<double>(l - t) / (m - 2 * t));
}

}  // namespace

bool valid_gt_string(int n, int t, mask_t x) {
  if (t < 0 || 2 * t > n) return false;
  if ((x & ~full_mask(n)) != 0) return false;
  int ones = 0;
  for (int m = 1; m <= n; ++m) {
    ones += (x >> (m - 1)) & 1;
    if (2 * ones > m) return false;
  }
  return ones == t;
}

std::vector<mask_t> valid_gt_strings(int n, int t) {
  std::vector<mask_t> out;
  if (t < 0 || 2 * t > n) return out;
  // Grow prefixes, keeping the ballot condition; masks come out sorted.
  std::vector<std::pair<mask_t, int>> frontier{{0, 0}};
  for (int m = 1; m <= n; ++m) {
    std::vector<std::pair<mask_t, int>> next;
    next.reserve(frontier.size() * 2);
    for (auto [x, ones] : frontier) {
      next.push_back({x, ones});
      if (2 * (ones + 1) <= m && ones + 1 <= t)
        next.push_back({x | (mask_t{1} << (m - 1)), ones + 1});
    }
    frontier = std::move(next);
  }
  for (auto [x, ones] : frontier)
    if (ones == t) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_valid_gt_strings(int n, int t) {
  if (t < 0 || 2 * t > n) return 0;
  // DP over (prefix length, ones so far).
  std::vector<std::uint64_t> cur(t + 1, 0);
  cur[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(t + 1, 0);
    for (int ones = 0; ones <= t; ++ones) {
      if (cur[ones] == 0) continue;
      next[ones] += cur[ones];
      if (ones + 1 <= t && 2 * (ones + 1) <= m) next[ones + 1] += cur[ones];
    }
    cur = std::move(next);
  }
  return cur[t];
}

std::vector<GtIndex> fourier_basis_indices(int n) {
  // Lexicographic by t, then l, then x as an integer.
  std::vector<GtIndex> out;
  for (int t = 0; 2 * t <= n; ++t) {
    const auto strings = valid_gt_strings(n, t);
    for (int l = t; l <= n - t; ++l)
      for (mask_t x : strings) out.push_back({t, l, x});
  }
  return out;
}

double specht_vector_norm(int n, int l, int t) {
  return std::sqrt(std::pow(2.0, t) * binomial_d(n - 2 * t, l - t));
}

Eigen::VectorXd specht_vector(int n, int l, int t, const std::vector<int>& a,
                              const std::vector<int>& b) {
  if (static_cast<int>(a.size()) != t || static_cast<int>(b.size()) != t)
    throw std::invalid_argument("need t elements in each of a and b");
  mask_t used = 0;
  for (int v : a) {
    if (v < 1 || v > n || contains(used, v)) throw std::invalid_argument("a/b overlap");
    used = with_element(used, v);
  }
  for (int v : b) {
    if (v < 1 || v > n || contains(used, v)) throw std::invalid_argument("a/b overlap");
    used = with_element(used, v);
  }
  const int lp = std::min(l, n - l);
  if (t > lp || l < t || l > n - t) throw std::invalid_argument("parameters out of range");

  Eigen::VectorXd vec = Eigen::VectorXd::Zero(std::size_t{1} << n);
  const mask_t rest = full_mask(n) & ~used;
  const auto fills = subsets_of_size(rest, l - t);
  // 2^t sign choices: bit i picks b_i (sign -1) over a_i.
  for (mask_t pick = 0; pick < (mask_t{1} << t); ++pick) {
    mask_t base = 0;
    int sign = 1;
    for (int i = 0; i < t; ++i) {
      if ((pick >> i) & 1) {
        base = with_element(base, b[i]);
        sign = -sign;
      } else {
        base = with_element(base, a[i]);
      }
    }
    for (mask_t fill : fills) vec(base | fill) += sign;
  }
  return vec;
}

std::vector<Eigen::VectorXd> specht_spanning_family(int n, int l, int t) {
  std::vector<Eigen::VectorXd> fam;
  std::vector<int> a(t), b(t);
  // Enumerate pairings with a_i < b_i and a strictly increasing.
  std::function<void(mask_t, int)> rec = [&](mask_t used, int depth) {
    if (depth == t) {
      fam.push_back(specht_vector(n, l, t, a, b));
      return;
    }
    int first = 0;
    for (int j = 1; j <= n; ++j)
      if (!contains(used, j)) {
        first = j;
        break;
      }
    if (first == 0) return;
    // a_depth is the smallest unused element; pair it with any larger one.
    a[depth] = first;
    for (int j = first + 1; j <= n; ++j) {
      if (contains(used, j)) continue;
      b[depth] = j;
      rec(with_element(with_element(used, first), j), depth + 1);
    }
  };
  if (t == 0) {
    fam.push_back(specht_vector(n, l, 0, {}, {}));
  } else {
    rec(0, 0);
  }
  return fam;
}

int GtBasis::column_of(const GtIndex& idx) const {
  auto it = lookup_.find(pack_tlx(idx.t, idx.l, idx.x));
  if (it == lookup_.end()) throw std::invalid_argument("no such basis index");
  return it->second;
}

GtBasis gt_basis(int n) {
  if (n < 1 || n > kMatrixCap) throw std::invalid_argument("gt_basis arity out of range");
  // Level-by-level recursion; level m holds every e^m_l(t, x) as a dense
  // vector over subsets of [m].
  std::unordered_map<std::uint64_t, Eigen::VectorXd> prev;
  {
    Eigen::VectorXd empty(2), single(2);
    empty << 1, 0;
    single << 0, 1;
    prev[pack_tlx(0, 0, 0)] = empty;
    prev[pack_tlx(0, 1, 0)] = single;
  }
  for (int m = 2; m <= n; ++m) {
    std::unordered_map<std::uint64_t, Eigen::VectorXd> cur;
    const std::size_t dim = std::size_t{1} << m;
    const mask_t high = mask_t{1} << (m - 1);
    for (const auto& idx : fourier_basis_indices(m)) {
      const int c = (idx.x & high) ? 1 : 0;
      const mask_t xp = idx.x & ~high;
      const int tp = idx.t - c;
      Eigen::VectorXd vec = Eigen::VectorXd::Zero(dim);
      double c_stay, c_move;
      if (c == 0) {
        c_stay = rot_coeff_stay(m, tp, idx.l);
        c_move = rot_coeff_move(m, tp, idx.l);
      } else {
        c_stay = rot_coeff_move(m, tp, idx.l);
        c_move = -rot_coeff_stay(m, tp, idx.l);
      }
      if (c_stay != 0.0) {
        const auto& src = prev.at(pack_tlx(tp, idx.l, xp));
        vec.head(src.size()) += c_stay * src;
      }
      if (c_move != 0.0) {
        const auto& src = prev.at(pack_tlx(tp, idx.l - 1, xp));
        vec.segment(high, src.size()) += c_move * src;  // append element m
      }
      cur[pack_tlx(idx.t, idx.l, idx.x)] = std::move(vec);
    }
    prev = std::move(cur);
  }

  GtBasis basis;
  basis.n = n;
  basis.indices = fourier_basis_indices(n);
  basis.columns.resize(std::size_t{1} << n, std::size_t{1} << n);
  for (std::size_t i = 0; i < basis.indices.size(); ++i) {
    const auto& idx = basis.indices[i];
    basis.columns.col(i) = prev.at(pack_tlx(idx.t, idx.l, idx.x));
    basis.lookup_[pack_tlx(idx.t, idx.l, idx.x)] = static_cast<int>(i);
  }
  return basis;
}

std::uint64_t pack_tlx(int t, int l, mask_t x) {
  return (std::uint64_t(t) << 56) | (std::uint64_t(l) << 48) | x;
}

GtIndex unpack_tlx(std::uint64_t key) {
  return {static_cast<int>(key >> 56), static_cast<int>((key >> 48) & 0xff),
          key & 0xffffffffffffULL};
}

namespace {

// Internal streaming key: t, l, B-bits (positions 1..m), A-bits (m+1..n).
inline std::uint64_t pack_stream(int t, int l, mask_t b, mask_t a) {
  return (std::uint64_t(t) << 58) | (std::uint64_t(l) << 52) | (std::uint64_t(b) << 26) | a;
}

struct StreamKey {
  int t, l;
  mask_t b, a;
};

inline StreamKey unpack_stream(std::uint64_t key) {
  return {static_cast<int>(key >> 58), static_cast<int>((key >> 52) & 0x3f),
          (key >> 26) & 0x3ffffff, key & 0x3ffffff};
}

}  // namespace

Eigen::VectorXcd qft_forward(const TlxState& in, int n) {
  if (n < 1 || n > 24) throw std::invalid_argument("arity out of range");
  std::unordered_map<std::uint64_t, cd> cur;
  cur.reserve(in.size());
  for (const auto& [key, amp] : in) {
    const GtIndex idx = unpack_tlx(key);
    if (!valid_gt_string(n, idx.t, idx.x) || idx.l < idx.t || idx.l > n - idx.t)
      throw std::invalid_argument("input not supported on valid (t,l,x) triples");
    cur[pack_stream(idx.t, idx.l, idx.x, 0)] += amp;
  }
  for (int m = n; m >= 1; --m) {
    std::unordered_map<std::uint64_t, cd> next;
    next.reserve(cur.size() * 2);
    const mask_t bit = mask_t{1} << (m - 1);
    for (const auto& [key, amp] : cur) {
      const StreamKey sk = unpack_stream(key);
      const int c = (sk.b & bit) ? 1 : 0;
      const int tp = sk.t - c;
      const mask_t b_rest = sk.b & ~bit;
      const double stay = rot_coeff_stay(m, tp, sk.l);
      const double move = rot_coeff_move(m, tp, sk.l);
      const double to0 = (c == 0) ? stay : move;
      const double to1 = (c == 0) ? move : -stay;
      if (to0 != 0.0) next[pack_stream(tp, sk.l, b_rest, sk.a)] += amp * to0;
      if (to1 != 0.0) next[pack_stream(tp, sk.l - 1, b_rest, sk.a | bit)] += amp * to1;
    }
    cur = std::move(next);
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(std::size_t{1} << n);
  for (const auto& [key, amp] : cur) {
    const StreamKey sk = unpack_stream(key);
    out(sk.a) += amp;  // t = l = 0 and b = 0 here
  }
  return out;
}

TlxState qft_inverse(const Eigen::VectorXcd& subset_state, int n) {
  if (subset_state.size() != static_cast<Eigen::Index>(std::size_t{1} << n))
    throw std::invalid_argument("state dimension != 2^n");
  std::unordered_map<std::uint64_t, cd> cur;
  for (Eigen::Index s = 0; s < subset_state.size(); ++s)
    if (subset_state(s) != cd{0.0, 0.0}) cur[pack_stream(0, 0, 0, mask_t(s))] = subset_state(s);
  for (int m = 1; m <= n; ++m) {
    std::unordered_map<std::uint64_t, cd> next;
    next.reserve(cur.size() * 2);
    const mask_t bit = mask_t{1} << (m - 1);
    for (const auto& [key, amp] : cur) {
      const StreamKey sk = unpack_stream(key);
      const int v = (sk.a & bit) ? 1 : 0;
      const int l_up = sk.l + v;
      const mask_t a_rest = sk.a & ~bit;
      // self-inverse rotation, then T += B_m
      const double stay = rot_coeff_stay(m, sk.t, l_up);
      const double move = rot_coeff_move(m, sk.t, l_up);
      const double to_c0 = (v == 0) ? stay : move;
      const double to_c1 = (v == 0) ? move : -stay;
      if (to_c0 != 0.0) next[pack_stream(sk.t, l_up, sk.b & ~bit, a_rest)] += amp * to_c0;
      if (to_c1 != 0.0) next[pack_stream(sk.t + 1, l_up, sk.b | bit, a_rest)] += amp * to_c1;
    }
    cur = std::move(next);
  }
  TlxState out;
  out.reserve(cur.size());
  for (const auto& [key, amp] : cur) {
    const StreamKey sk = unpack_stream(key);
    out[pack_tlx(sk.t, sk.l, sk.b)] += amp;
  }
  return out;
}

Eigen::MatrixXd qft_matrix(int n) {
  if (n < 1 || n > kMatrixCap) throw std::invalid_argument("qft_matrix arity out of range");
  const auto indices = fourier_basis_indices(n);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd f(dim, dim);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    TlxState in;
    in[pack_tlx(indices[i].t, indices[i].l, indices[i].x)] = 1.0;
    f.col(i) = qft_forward(in, n).real();
  }
  return f;
}

}  // namespace juntalab
