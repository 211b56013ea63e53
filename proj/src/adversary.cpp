#include "juntalab/adversary.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace juntalab {

GgtSolution build_ggt_solution(int n, int k, int d) {
  if (k < 1 || d < 1 || n < k + d) throw std::invalid_argument("need n >= k+d, k,d >= 1");
  GgtSolution sol;
  sol.n = n;
  sol.k = k;
  sol.d = d;
  const int smax = sol.s_max();
  sol.alpha.resize(smax);
  sol.beta.resize(smax);
  double w = 0;
  for (int s = 1; s <= smax; ++s) {
    const double pair_product = 1.0 / ((n - k) * binomial_d(n - k - 1, s - 1));
    const double small_count = binomial_d(n - k, s);              // sets avoiding A
    const double large_count = (k + d) * binomial_d(n - k - d, s - 1);  // |S cap B| = 1
    const double ratio = std::sqrt(large_count / small_count);
    sol.alpha[s - 1] = std::sqrt(pair_product * ratio);
    sol.beta[s - 1] = std::sqrt(pair_product / ratio);
    w += small_count * sol.alpha[s - 1] * sol.alpha[s - 1];
  }
  sol.w_objective = w;
  return sol;
}

double t_series(int a, int b) {
  if (a < 0 || b < a) throw std::invalid_argument("need 0 <= a <= b");
  double sum = 1.0, term = 1.0;
  for (int i = 0; i < a; ++i) {
    term *= static_cast<double>(a - i) / (b - i);
    sum += term;
  }
  return sum;
}

double feasibility_residual(const GgtSolution& sol) {
  const int n = sol.n, k = sol.k, d = sol.d;
  double worst = 0;
  for (int ell = d; ell <= std::min(k + d, n - k); ++ell) {
    // 0 <= |A cap B| requires ell >= d; A fits iff ell <= n - k.
    double sum = 0;
    for (int s = 1; s <= sol.s_max(); ++s)
      sum += sol.alpha[s - 1] * sol.beta[s - 1] * ell * binomial_d(n - k - ell, s - 1);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double feasibility_residual_literal(const GgtSolution& sol) {
  const int n = sol.n, k = sol.k, d = sol.d;
  if (n > 14) throw std::invalid_argument("literal sweep capped at n = 14");
  const auto smalls = subsets_of_size(full_mask(n), k);
  const auto larges = subsets_of_size(full_mask(n), k + d);
  double worst = 0;
  for (mask_t a : smalls) {
    for (mask_t b : larges) {
      double sum = 0;
      for (mask_t s = 1; s < (mask_t{1} << n); ++s) {
        const bool a_avoids = !intersects(s, a);
        const bool b_avoids = !intersects(s, b);
        if (a_avoids == b_avoids) continue;  // xor condition
        const int size = popcount(s);
        if (size < 1 || size > sol.s_max()) continue;
        // psi entries: alpha on (A avoids S), beta on (|S cap B| = 1)
        const double pa = a_avoids ? sol.alpha[size - 1] : 0.0;
        const double pb = popcount(s & b) == 1 ? sol.beta[size - 1] : 0.0;
        sum += pa * pb;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return worst;
}

double GenericSolution::objective() const {
  double best = 0;
  for (std::size_t z = 0; z < domain.size(); ++z) {
    double diag = 0;
    for (const auto& m : x) diag += m(z, z);
    best = std::max(best, diag);
  }
  return best;
}

double GenericSolution::feasibility_residual() const {
  double worst = 0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = 0; j < domain.size(); ++j) {
      if (values[i] == values[j]) continue;
      double sum = 0;
      for (int v = 0; v < arity; ++v)
        if (((domain[i] ^ domain[j]) >> v) & 1) sum += x[v](i, j);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return worst;
}

double GenericSolution::min_eigenvalue() const {
  double lo = 0;
  for (const auto& m : x) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

bool GenericSolution::irrelevant(int row, int var, double tol) const {
  return std::abs(x[var](row, row)) <= tol;
}

GenericSolution and_example_solution(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  GenericSolution sol;
  sol.arity = n;
  sol.domain.push_back(full_mask(n));  // row 0: the all-ones input
  sol.values.push_back(1);
  for (int j = 1; j <= n; ++j) {
    sol.domain.push_back(full_mask(n) & ~(mask_t{1} << (j - 1)));
    sol.values.push_back(0);
  }
  const double root = std::pow(static_cast<double>(n), 0.25);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(sol.domain.size());
    psi(0) = 1.0 / root;
    psi(j + 1) = root;  // the input with bit j+1 cleared
    sol.x.push_back(psi * psi.transpose());
  }
  return sol;
}

GenericSolution ggt_generic_solution(const GgtSolution& sol) {
  const int n = sol.n;
  // Inputs are the 2^n-bit oracle answer vectors, so masks cap this at n = 6.
  if (n > 6) throw std::invalid_argument("generic materialization capped at n = 6");
  GenericSolution out;
  out.arity = 1 << n;  // one variable per query set
  const auto smalls = subsets_of_size(full_mask(n), sol.k);
  const auto larges = subsets_of_size(full_mask(n), sol.k + sol.d);
  std::vector<mask_t> hidden;
  auto oracle_bits = [&](mask_t a) {
    mask_t bits = 0;
    for (mask_t s = 0; s < (mask_t{1} << n); ++s)
      if (intersects(s, a)) bits |= mask_t{1} << s;
    return bits;
  };
  for (mask_t a : smalls) {
    out.domain.push_back(oracle_bits(a));
    out.values.push_back(0);
    hidden.push_back(a);
  }
  for (mask_t b : larges) {
    out.domain.push_back(oracle_bits(b));
    out.values.push_back(1);
    hidden.push_back(b);
  }
  const std::size_t rows = out.domain.size();
  for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
    const int size = popcount(s);
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(rows);
    if (size >= 1 && size <= sol.s_max()) {
      for (std::size_t r = 0; r < rows; ++r) {
        if (out.values[r] == 0 && !intersects(s, hidden[r]))
          psi(r) = sol.alpha[size - 1];
        else if (out.values[r] == 1 && popcount(s & hidden[r]) == 1)
          psi(r) = sol.beta[size - 1];
      }
    }
    out.x.push_back(psi * psi.transpose());
  }
  return out;
}

double ggt_min_eigenvalue(const GgtSolution& sol) {
  const int n = sol.n;
  if (n > 12) throw std::invalid_argument("dense sweep capped at n = 12");
  const auto smalls = subsets_of_size(full_mask(n), sol.k);
  const auto larges = subsets_of_size(full_mask(n), sol.k + sol.d);
  double lo = 0;
  for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
    const int size = popcount(s);
    if (size < 1 || size > sol.s_max()) continue;
    Eigen::VectorXd psi(smalls.size() + larges.size());
    std::size_t r = 0;
    for (mask_t a : smalls)
      psi(r++) = intersects(s, a) ? 0.0 : sol.alpha[size - 1];
    for (mask_t b : larges)
      psi(r++) = popcount(s & b) == 1 ? sol.beta[size - 1] : 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(psi * psi.transpose());
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

namespace {

// Variable value of row z for solutions whose domain stores raw bitstrings.
inline int var_value(mask_t z, int var) { return static_cast<int>((z >> var) & 1); }

}  // namespace

GenericSolution normalize_condition(const GenericSolution& sol, double tol) {
  if (sol.feasibility_residual() > tol)
    throw std::invalid_argument("input solution is infeasible");
  GenericSolution out = sol;
  for (int v = 0; v < sol.arity; ++v) {
    for (std::size_t i = 0; i < sol.domain.size(); ++i) {
      for (std::size_t j = 0; j < sol.domain.size(); ++j) {
        const bool same_value = sol.values[i] == sol.values[j];
        const bool same_bit = var_value(sol.domain[i], v) == var_value(sol.domain[j], v);
        // Hadamard with the PSD pattern keeping (same F, same bit) and
        // (different F, different bit); zeroing the rest.
        if (same_value != same_bit) out.x[v](i, j) = 0.0;
      }
    }
  }
  return out;
}

GenericSolution identity_bit_solution() {
  GenericSolution sol;
  sol.arity = 1;
  sol.domain = {0, 1};
  sol.values = {0, 1};
  sol.x.push_back(Eigen::MatrixXd::Ones(2, 2));
  return sol;
}

ComposedSolution compose_solutions(const GenericSolution& f_sol,
                                   const std::vector<GenericSolution>& g_sols) {
  if (static_cast<int>(g_sols.size()) != f_sol.arity)
    throw std::invalid_argument("need one inner solution per outer variable");
  // Outer solution must satisfy the normalized condition on differing pairs.
  for (std::size_t i = 0; i < f_sol.domain.size(); ++i)
    for (std::size_t j = 0; j < f_sol.domain.size(); ++j) {
      if (f_sol.values[i] == f_sol.values[j]) continue;
      for (int v = 0; v < f_sol.arity; ++v)
        if (var_value(f_sol.domain[i], v) == var_value(f_sol.domain[j], v) &&
            std::abs(f_sol.x[v](i, j)) > 1e-12)
          throw std::invalid_argument("outer solution violates the normalized condition");
    }

  std::vector<int> offsets(f_sol.arity + 1, 0);
  for (int j = 0; j < f_sol.arity; ++j) offsets[j + 1] = offsets[j] + g_sols[j].arity;
  const int total_bits = offsets[f_sol.arity];
  if (total_bits > 20) throw std::invalid_argument("composed domain too large");

  // Inner value lookup: -1 when outside the inner domain.
  std::vector<std::vector<int>> inner_value(f_sol.arity);
  std::vector<std::vector<int>> inner_row(f_sol.arity);
  for (int j = 0; j < f_sol.arity; ++j) {
    inner_value[j].assign(std::size_t{1} << g_sols[j].arity, -1);
    inner_row[j].assign(std::size_t{1} << g_sols[j].arity, -1);
    for (std::size_t r = 0; r < g_sols[j].domain.size(); ++r) {
      inner_value[j][g_sols[j].domain[r]] = g_sols[j].values[r];
      inner_row[j][g_sols[j].domain[r]] = static_cast<int>(r);
    }
  }

  ComposedSolution comp;
  comp.inner_offsets.assign(offsets.begin(), offsets.end() - 1);
  GenericSolution& out = comp.solution;
  out.arity = total_bits;

  for (mask_t big = 0; big < (mask_t{1} << total_bits); ++big) {
    // A row is in the composed domain iff some outer row z matches every
    // G_j(x_j) over the variables relevant to z.
    int found = -1;
    for (std::size_t zi = 0; zi < f_sol.domain.size(); ++zi) {
      bool ok = true;
      for (int j = 0; j < f_sol.arity && ok; ++j) {
        if (f_sol.irrelevant(static_cast<int>(zi), j)) continue;
        const mask_t xj = (big >> offsets[j]) & full_mask(g_sols[j].arity);
        const int gv = inner_value[j][xj];
        if (gv < 0 || gv != var_value(f_sol.domain[zi], j)) ok = false;
      }
      if (ok) {
        if (found >= 0 && f_sol.values[found] != f_sol.values[zi])
          throw std::logic_error("inconsistent certificates for a composed row");
        if (found < 0) found = static_cast<int>(zi);
      }
    }
    if (found >= 0) {
      out.domain.push_back(big);
      out.values.push_back(f_sol.values[found]);
      comp.certificates.push_back(f_sol.domain[found]);
    }
  }

  std::vector<int> cert_row(out.domain.size());
  for (std::size_t r = 0; r < out.domain.size(); ++r) {
    for (std::size_t zi = 0; zi < f_sol.domain.size(); ++zi)
      if (f_sol.domain[zi] == comp.certificates[r]) cert_row[r] = static_cast<int>(zi);
  }

  for (int j = 0; j < f_sol.arity; ++j) {
    for (int i = 0; i < g_sols[j].arity; ++i) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(out.domain.size(), out.domain.size());
      for (std::size_t r = 0; r < out.domain.size(); ++r) {
        for (std::size_t c = 0; c < out.domain.size(); ++c) {
          const double outer = f_sol.x[j](cert_row[r], cert_row[c]);
          if (outer == 0.0) continue;
          const mask_t xr = (out.domain[r] >> offsets[j]) & full_mask(g_sols[j].arity);
          const mask_t xc = (out.domain[c] >> offsets[j]) & full_mask(g_sols[j].arity);
          const int rr = inner_row[j][xr];
          const int cc = inner_row[j][xc];
          if (rr < 0 || cc < 0) continue;  // extended with zeros off-domain
          m(r, c) = outer * g_sols[j].x[i](rr, cc);
        }
      }
      out.x.push_back(std::move(m));
    }
  }
  return comp;
}

double unweighted_adversary_value(const Relation& r) {
  if (r.pairs.empty()) throw std::invalid_argument("empty relation");
  std::vector<int> deg_one(r.ones.size(), 0), deg_zero(r.zeros.size(), 0);
  for (auto [i, j] : r.pairs) {
    ++deg_one[i];
    ++deg_zero[j];
  }
  int m = 0, mp = 0;
  for (std::size_t i = 0; i < r.ones.size(); ++i)
    if (deg_one[i] > 0) m = m == 0 ? deg_one[i] : std::min(m, deg_one[i]);
  for (std::size_t j = 0; j < r.zeros.size(); ++j)
    if (deg_zero[j] > 0) mp = mp == 0 ? deg_zero[j] : std::min(mp, deg_zero[j]);

  int l = 0, lp = 0;
  for (int v = 0; v < r.arity; ++v) {
    std::vector<int> per_one(r.ones.size(), 0), per_zero(r.zeros.size(), 0);
    for (auto [i, j] : r.pairs) {
      if (((r.ones[i] ^ r.zeros[j]) >> v) & 1) {
        ++per_one[i];
        ++per_zero[j];
      }
    }
    for (int c : per_one) l = std::max(l, c);
    for (int c : per_zero) lp = std::max(lp, c);
  }
  return std::sqrt(static_cast<double>(m) * mp / (static_cast<double>(l) * lp));
}

Relation search_relation(int n, int k) {
  if (n > 5) throw std::invalid_argument("relation inputs are 2^(2^n)-ish; keep n <= 5");
  Relation r;
  r.arity = 1 << n;
  auto oracle_bits = [&](mask_t a) {
    mask_t bits = 0;
    for (mask_t s = 0; s < (mask_t{1} << n); ++s)
      if (intersects(s, a)) bits |= mask_t{1} << s;
    return bits;
  };
  r.ones.push_back(oracle_bits(full_mask(n)));
  const auto smalls = subsets_of_size(full_mask(n), k);
  for (std::size_t i = 0; i < smalls.size(); ++i) {
    r.zeros.push_back(oracle_bits(smalls[i]));
    r.pairs.emplace_back(0, static_cast<int>(i));
  }
  return r;
}

}  // namespace juntalab
