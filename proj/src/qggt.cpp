#include "juntalab/qggt.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "juntalab/qcore.hpp"

namespace juntalab {

namespace {
constexpr double kPi = std::numbers::pi;
}

LambdaSpec algorithm_lambda_spec(const GgtSolution& sol, double c1) {
  LambdaSpec spec;
  spec.n = sol.n;
  spec.k = sol.k;
  spec.alpha = Eigen::VectorXd::Zero(sol.n + 1);
  const double gamma = c1 * std::sqrt(sol.w_objective);
  spec.alpha(0) = 1.0;
  for (int s = 1; s <= sol.s_max(); ++s) spec.alpha(s) = gamma * sol.alpha[s - 1];
  return spec;
}

WVectors build_w(const LambdaSpec& spec, int t) {
  if (t < 0 || t > spec.k) throw std::invalid_argument("t out of range");
  if (2 * t > spec.n) throw std::invalid_argument("no such block");
  const int n = spec.n, k = spec.k;
  WVectors out;
  out.w = Eigen::VectorXd::Zero(n - 2 * t + 1);
  for (int l = t; l <= n - k; ++l)
    out.w(l - t) = spec.alpha(l) * binomial_d(n - l - t, k - t) *
                   std::sqrt(binomial_d(n - 2 * t, l - t));
  out.norm = out.w.norm();
  out.w_normalized = out.norm > 0 ? Eigen::VectorXd(out.w / out.norm)
                                  : Eigen::VectorXd::Zero(out.w.size());
  return out;
}

WVectors build_w_walk(const LambdaSpec& spec, int t) {
  if (t < 0 || t > spec.k) throw std::invalid_argument("t out of range");
  if (2 * t > spec.n) throw std::invalid_argument("no such block");
  const int n = spec.n, k = spec.k;
  const int l_end = n - k;
  WVectors out;
  out.w = Eigen::VectorXd::Zero(n - 2 * t + 1);
  // Coefficient register: start from the l = t value, then ratio updates.
  double c = binomial_d(n - 2 * t, k - t);
  for (int l = t; l <= l_end; ++l) {
    out.w(l - t) = spec.alpha(l) * c;
    c *= (n - l - k) / std::sqrt(static_cast<double>(n - l - t) * (l + 1 - t));
  }
  out.norm = out.w.norm();
  if (out.norm == 0) {
    out.w_normalized = Eigen::VectorXd::Zero(out.w.size());
    return out;
  }
  // Amplitude unloading: move w[l] out per step, track the remainder, and
  // close with the signed square root of what is left.
  out.w_normalized = Eigen::VectorXd::Zero(out.w.size());
  double remainder = 1.0;
  for (int l = t; l < l_end; ++l) {
    const double wtl = out.w(l - t) / out.norm;
    out.w_normalized(l - t) = wtl;
    remainder = std::max(0.0, remainder - wtl * wtl);
  }
  const double last = out.w(l_end - t);
  out.w_normalized(l_end - t) = (last < 0 ? -1.0 : 1.0) * std::sqrt(remainder);
  return out;
}

Eigen::VectorXd lambda_statement_vector(const LambdaSpec& spec, mask_t t_set) {
  const int n = spec.n;
  if (popcount(t_set) != n - spec.k) throw std::invalid_argument("|T| must be n-k");
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(std::size_t{1} << n);
  for (mask_t b = t_set;; b = (b - 1) & t_set) {
    psi(b) += spec.alpha(popcount(b));
    if (b == 0) break;
  }
  return psi;
}

Eigen::MatrixXd lambda_bruteforce(const LambdaSpec& spec) {
  const int n = spec.n;
  if (n > 12) throw std::invalid_argument("brute-force projector capped at n = 12");
  const auto tsets = subsets_of_size(full_mask(n), n - spec.k);
  Eigen::MatrixXd psis(std::size_t{1} << n, tsets.size());
  for (std::size_t i = 0; i < tsets.size(); ++i) psis.col(i) = lambda_statement_vector(spec, tsets[i]);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(psis, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double tol = sv.size() ? sv(0) * 1e-10 : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
  return u * u.transpose();
}

Eigen::MatrixXd lambda_image_basis(const LambdaSpec& spec) {
  const int n = spec.n;
  std::vector<Eigen::VectorXd> cols;
  for (int t = 0; t <= spec.k && 2 * t <= n; ++t) {
    const WVectors wv = build_w(spec, t);
    if (wv.norm <= 0) continue;
    for (mask_t x : valid_gt_strings(n, t)) {
      TlxState in;
      for (int l = t; l <= n - t; ++l)
        if (wv.w_normalized(l - t) != 0.0) in[pack_tlx(t, l, x)] = wv.w_normalized(l - t);
      cols.push_back(qft_forward(in, n).real());
    }
  }
  Eigen::MatrixXd basis(std::size_t{1} << n, cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) basis.col(i) = cols[i];
  return basis;
}

Eigen::VectorXcd reflect_lambda(const Eigen::VectorXcd& state, const LambdaSpec& spec,
                                ReflectMode mode) {
  const int n = spec.n;
  if (state.size() != static_cast<Eigen::Index>(std::size_t{1} << n))
    throw std::invalid_argument("state dimension != 2^n");
  TlxState tlx = qft_inverse(state, n);

  // Group amplitudes by (t, x); the reflection acts on the copy index only.
  std::unordered_map<std::uint64_t, Eigen::VectorXcd> groups;
  for (const auto& [key, amp] : tlx) {
    const GtIndex idx = unpack_tlx(key);
    auto [it, fresh] = groups.try_emplace(pack_tlx(idx.t, 0, idx.x));
    if (fresh) it->second = Eigen::VectorXcd::Zero(n - 2 * idx.t + 1);
    it->second(idx.l - idx.t) += amp;
  }

  std::vector<Eigen::VectorXd> wt(spec.k + 1);
  std::vector<bool> wt_present(spec.k + 1, false);
  for (int t = 0; t <= spec.k && 2 * t <= n; ++t) {
    const WVectors wv = mode == ReflectMode::direct ? build_w(spec, t) : build_w_walk(spec, t);
    wt[t] = wv.w_normalized;
    wt_present[t] = wv.norm > 0;
  }

  TlxState out;
  out.reserve(tlx.size());
  for (auto& [gkey, vec] : groups) {
    const GtIndex gidx = unpack_tlx(gkey);
    Eigen::VectorXcd reflected;
    if (gidx.t <= spec.k && wt_present[gidx.t]) {
      const Eigen::VectorXd& w = wt[gidx.t];
      const cd overlap = (w.cast<cd>().adjoint() * vec)(0, 0);
      reflected = 2.0 * overlap * w.cast<cd>() - vec;
    } else {
      reflected = -vec;
    }
    for (int l = gidx.t; l <= n - gidx.t; ++l) {
      const cd amp = reflected(l - gidx.t);
      if (amp != cd{0.0, 0.0}) out[pack_tlx(gidx.t, l, gidx.x)] += amp;
    }
  }
  return qft_forward(out, n);
}

int qggt_padded_n(int n, int k, int d) { return std::max({n, 2 * k + 1, k + d}); }

Eigen::VectorXcd qggt_witness(const GgtSolution& sol, double c1, mask_t b_set,
                              int workspace_dim) {
  const int n = sol.n;
  if (popcount(b_set) != sol.k + sol.d) throw std::invalid_argument("|B| must be k+d");
  const double gamma = c1 * std::sqrt(sol.w_objective);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero((std::size_t{1} << n) * workspace_dim);
  u(0) = gamma;  // |empty> (x) |0>_W
  for (mask_t s = 1; s < (mask_t{1} << n); ++s) {
    const int size = popcount(s);
    if (size > sol.s_max()) continue;
    if (popcount(s & b_set) == 1) u(s * workspace_dim) = -sol.beta[size - 1];
  }
  return u;
}

Eigen::VectorXcd qggt_apply_u(const BlockOracle& oracle, const LambdaSpec& spec,
                              const Eigen::VectorXcd& state, ReflectMode mode) {
  const int n = oracle.n();
  const int dw = oracle.workspace_dim();
  const std::size_t subsets = std::size_t{1} << n;
  if (state.size() != static_cast<Eigen::Index>(subsets * dw))
    throw std::invalid_argument("state dimension mismatch");
  // R_Lambda acts on the subset register only.
  Eigen::VectorXcd mid(state.size());
  Eigen::VectorXcd slice(subsets);
  for (int w = 0; w < dw; ++w) {
    for (std::size_t s = 0; s < subsets; ++s) slice(s) = state(s * dw + w);
    const Eigen::VectorXcd r = reflect_lambda(slice, spec, mode);
    for (std::size_t s = 0; s < subsets; ++s) mid(s * dw + w) = r(s);
  }
  // Then the oracle, with the reserved branch fixed to -identity.
  Eigen::VectorXcd out(state.size());
  Eigen::VectorXcd wslice(dw);
  for (std::size_t s = 0; s < subsets; ++s) {
    for (int w = 0; w < dw; ++w) wslice(w) = mid(s * dw + w);
    if (s == 0)
      wslice = -wslice;
    else
      wslice = oracle.block(s) * wslice;
    for (int w = 0; w < dw; ++w) out(s * dw + w) = wslice(w);
  }
  return out;
}

namespace {

struct PhaseWeight {
  double phase;
  double weight;
};

// Spectral measure of |empty, 0> under U = O_f R_Lambda via the
// two-reflection block structure: P = Lambda (x) I_W has small rank, so the
// nontrivial rotation blocks live in its image and everything else
// contributes phase 0 or pi directly.
std::vector<PhaseWeight> blockwise_measure(const BlockOracle& oracle, const LambdaSpec& spec) {
  const int n = oracle.n();
  const int dw = oracle.workspace_dim();
  const std::size_t subsets = std::size_t{1} << n;
  const std::size_t total = subsets * dw;

  const Eigen::MatrixXd lam = lambda_image_basis(spec);  // subsets x r
  const int r = static_cast<int>(lam.cols());
  const int rp = r * dw;

  // K[(i,w),(j,w')] = sum_S lam[S,i] lam[S,j] O_S[w,w'], O_empty = -I.
  Eigen::MatrixXcd kmat(rp, rp);
  {
    Eigen::VectorXcd dvec(subsets);
    Eigen::MatrixXcd lamc = lam.cast<cd>();
    for (int w = 0; w < dw; ++w) {
      for (int wp = 0; wp < dw; ++wp) {
        for (mask_t s = 0; s < subsets; ++s)
          dvec(s) = (s == 0) ? cd(w == wp ? -1.0 : 0.0, 0.0) : oracle.block(s)(w, wp);
        const Eigen::MatrixXcd g = lamc.adjoint() * dvec.asDiagonal() * lamc;
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) kmat(i * dw + w, j * dw + wp) = g(i, j);
      }
    }
  }
  const Eigen::MatrixXcd m = 0.5 * (Eigen::MatrixXcd::Identity(rp, rp) - kmat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");

  // Materialize p_i = (lambda basis) y_i over the full space.
  Eigen::MatrixXcd pmat = Eigen::MatrixXcd::Zero(total, rp);
  for (int w = 0; w < dw; ++w) {
    Eigen::MatrixXcd yw(r, rp);
    for (int j = 0; j < r; ++j) yw.row(j) = es.eigenvectors().row(j * dw + w);
    const Eigen::MatrixXcd block = lam.cast<cd>() * yw;  // subsets x rp
    for (mask_t s = 0; s < subsets; ++s) pmat.row(s * dw + w) += block.row(s);
  }

  auto apply_q = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd ov(total);
    Eigen::VectorXcd wslice(dw);
    for (mask_t s = 0; s < subsets; ++s) {
      for (int w = 0; w < dw; ++w) wslice(w) = v(s * dw + w);
      if (s == 0)
        wslice = -wslice;
      else
        wslice = oracle.block(s) * wslice;
      for (int w = 0; w < dw; ++w) ov(s * dw + w) = wslice(w);
    }
    return Eigen::VectorXcd(0.5 * (v - ov));
  };

  Eigen::VectorXcd init = Eigen::VectorXcd::Zero(total);
  init(0) = 1.0;

  constexpr double kCornerTol = 1e-12;
  std::vector<PhaseWeight> measure;
  double weight_zero = 0, weight_pi = 0;
  Eigen::VectorXcd init_rest = init;
  for (int i = 0; i < rp; ++i) {
    const double c = std::clamp(es.eigenvalues()(i), 0.0, 1.0);
    const Eigen::VectorXcd p = pmat.col(i);
    const cd a = (p.adjoint() * init)(0, 0);
    init_rest -= p * a;
    if (c <= kCornerTol) {
      weight_zero += std::norm(a);
      continue;
    }
    if (c >= 1.0 - kCornerTol) {
      weight_pi += std::norm(a);
      continue;
    }
    const double s = std::sqrt(c * (1.0 - c));
    const Eigen::VectorXcd z = (apply_q(p) - c * p) / s;
    const cd b = (z.adjoint() * init)(0, 0);
    init_rest -= z * b;
    const double omega = std::acos(std::clamp(2.0 * c - 1.0, -1.0, 1.0));
    // U eigenpairs on the block: e^{i(pi+omega)} with (p - iz)/sqrt(2),
    // e^{i(pi-omega)} with (p + iz)/sqrt(2).
    measure.push_back({kPi + omega, 0.5 * std::norm(a + cd(0, 1) * b)});
    measure.push_back({kPi - omega, 0.5 * std::norm(a - cd(0, 1) * b)});
  }
  const double rest_q = apply_q(init_rest).squaredNorm();
  weight_zero += rest_q;  // ker P cap im Q
  weight_pi += init_rest.squaredNorm() - rest_q;
  measure.push_back({0.0, weight_zero});
  measure.push_back({kPi, weight_pi});
  return measure;
}

}  // namespace

std::vector<std::pair<double, double>> qggt_spectral_measure(const BlockOracle& oracle,
                                                             const LambdaSpec& spec) {
  std::vector<std::pair<double, double>> out;
  for (const auto& pw : blockwise_measure(oracle, spec)) out.emplace_back(pw.phase, pw.weight);
  return out;
}

QggtResult qggt_run(const BlockOracle& oracle, int k, int d, const QggtConfig& cfg) {
  const int np = qggt_padded_n(oracle.n(), k, d);
  const BlockOracle padded = oracle.padded(np);
  if (!padded.is_reflection(1e-9))
    throw std::invalid_argument("oracle blocks must be reflections; apply reflectionize");

  const GgtSolution sol = build_ggt_solution(np, k, d);
  const LambdaSpec spec = algorithm_lambda_spec(sol, cfg.c1);
  const double w = sol.w_objective;
  const double delta = 1.0 / (cfg.c * w);
  int a = cfg.ancilla;
  if (a <= 0) a = static_cast<int>(std::ceil(std::log2(2 * kPi * cfg.c * w))) + 3;

  const auto measure = blockwise_measure(padded, spec);

  // Reject iff the estimate is delta-close to phase 0: the grid window is
  // contiguous around j = 0 and wraps at the top.
  const std::size_t grid = std::size_t{1} << a;
  std::vector<std::size_t> window;
  for (std::size_t j = 0; j < grid; ++j) {
    if (phase_distance(2 * kPi * double(j) / double(grid)) > delta) break;
    window.push_back(j);
  }
  const std::size_t low_end = window.empty() ? 0 : window.back();
  for (std::size_t j = grid - 1; j > low_end; --j) {
    if (phase_distance(2 * kPi * double(j) / double(grid)) > delta) break;
    window.push_back(j);
  }
  double reject = 0;
  for (std::size_t j : window) {
    const double est = 2 * kPi * static_cast<double>(j) / static_cast<double>(grid);
    for (const auto& pw : measure)
      if (pw.weight > 0) reject += pw.weight * phase_kernel(pw.phase - est, a);
  }

  QggtResult res;
  res.acceptance_probability = std::clamp(1.0 - reject, 0.0, 1.0);
  res.accept = res.acceptance_probability >= 0.5;
  res.w_objective = w;
  res.delta = delta;
  res.ancilla_bits = a;
  res.padded_n = np;
  res.oracle_queries = (std::uint64_t{1} << a) - 1;
  return res;
}

}  // namespace juntalab
