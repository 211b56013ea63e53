#include "juntalab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "juntalab/acceptance.hpp"
#include "juntalab/adversary.hpp"
#include "juntalab/classical_gt.hpp"
#include "juntalab/instances.hpp"
#include "juntalab/junta.hpp"
#include "juntalab/parallel.hpp"
#include "juntalab/qggt.hpp"
#include "juntalab/rng.hpp"
#include "juntalab/symqft.hpp"

namespace juntalab {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::map<std::string, std::string> parse_fields(const std::string& body) {
  std::map<std::string, std::string> fields;
  for (const auto& part : split(body, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("instance field missing '=': " + part);
    fields[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return fields;
}

int field_int(const std::map<std::string, std::string>& fields, const std::string& key) {
  auto it = fields.find(key);
  if (it == fields.end()) throw ConfigError("instance missing field " + key);
  return std::stoi(it->second);
}

template <typename T>
T param(const json& params, const std::string& key, const T& fallback) {
  if (!params.contains(key)) return fallback;
  return params.at(key).get<T>();
}

template <typename T>
T required_param(const json& params, const std::string& key) {
  if (!params.contains(key)) throw ConfigError("missing parameter: " + key);
  return params.at(key).get<T>();
}

Side parse_side(const std::string& s) {
  if (s == "small") return Side::small;
  if (s == "large") return Side::large;
  throw ConfigError("side must be small|large");
}

OverridePolicy parse_policy(const std::string& s) {
  if (s == "zeros") return OverridePolicy::zeros;
  if (s == "ones") return OverridePolicy::ones;
  if (s == "random") return OverridePolicy::seeded_random;
  if (s == "exact") return OverridePolicy::exact;
  throw ConfigError("override must be zeros|ones|random|exact");
}

IrrelevantMode parse_mode(const std::string& s) {
  if (s == "phase-faithful") return IrrelevantMode::phase_faithful;
  if (s == "random-reflection") return IrrelevantMode::random_reflection;
  if (s == "random-unitary") return IrrelevantMode::random_unitary;
  throw ConfigError("mode must be phase-faithful|random-reflection|random-unitary");
}

mask_t random_subset_of_size(int n, int size, std::mt19937_64& rng) {
  std::vector<int> elems(n);
  std::iota(elems.begin(), elems.end(), 1);
  std::shuffle(elems.begin(), elems.end(), rng);
  mask_t m = 0;
  for (int i = 0; i < size; ++i) m = with_element(m, elems[i]);
  return m;
}

json run_ggt_classical(const json& params, std::uint64_t seed) {
  const std::string tester = required_param<std::string>(params, "tester");
  const int n = required_param<int>(params, "n");
  const int k = required_param<int>(params, "k");
  const int d = required_param<int>(params, "d");
  const Side side = parse_side(param<std::string>(params, "side", "large"));
  const OverridePolicy policy = parse_policy(param<std::string>(params, "override", "exact"));
  const int trials = param<int>(params, "trials", 200);
  std::uint64_t reps = param<std::uint64_t>(params, "repetitions", 0);
  if (tester == "sampling" && reps == 0) reps = sampling_tester_default_repetitions(k, d);

  // one slot per trial; workers share nothing, reduction is in index order
  std::vector<TesterReport> reports(trials);
  parallel_for(trials, [&](std::size_t trial) {
    auto rng = make_stream(seed, 0xabc0 + trial);
    const int size = side == Side::small ? k : k + d;
    const mask_t a = random_subset_of_size(n, size, rng);
    RelaxedOracle oracle(n, k, d, side, a, policy, mix64(seed, trial));
    reports[trial] = tester == "sampling"
                         ? sampling_tester(oracle, k, d, reps, mix64(seed, 7919 + trial))
                         : partition_tester(oracle, k, mix64(seed, 104729 + trial));
  });
  int errors = 0;
  std::uint64_t total_queries = 0, max_queries = 0;
  for (const auto& rep : reports) {
    if (rep.decision != side) ++errors;
    total_queries += rep.queries;
    max_queries = std::max(max_queries, rep.queries);
  }
  json out;
  out["tester"] = tester;
  out["n"] = n;
  out["k"] = k;
  out["d"] = d;
  out["seeds"] = trials;
  out["error_rate"] = static_cast<double>(errors) / trials;
  out["queries"] = {{"mean", static_cast<double>(total_queries) / trials},
                    {"max", max_queries}};
  if (tester == "sampling") out["repetitions"] = reps;
  if (tester == "partition") out["query_budget"] = partition_query_budget(k);
  return out;
}

json run_distances(const json& params) {
  const int n = required_param<int>(params, "n");
  const int k = required_param<int>(params, "k");
  const int d = required_param<int>(params, "d");
  const int m = required_param<int>(params, "m");
  json out;
  out["n"] = n;
  out["k"] = k;
  out["d"] = d;
  out["m"] = m;
  out["tv"] = to_fraction_string(hypergeom_tv(n, k, d, m));
  if (params.contains("binom_p")) {
    const double p = params.at("binom_p").get<double>();
    const auto bd = binom_tv_kolmogorov(k, d, p);
    out["binomial"] = {{"p", p}, {"tv", bd.tv}, {"kolmogorov", bd.kolmogorov}};
  }
  return out;
}

json run_qft(const json& params) {
  const int n = required_param<int>(params, "n");
  if (n < 1 || n > 12) throw ConfigError("qft arity must be 1..12");
  json out;
  out["n"] = n;
  json tallies = json::object();
  for (int t = 0; 2 * t <= n; ++t)
    tallies[std::to_string(t)] = {{"strings", count_valid_gt_strings(n, t)},
                                  {"expected", binomial_u64(n, t) - binomial_u64(n, t - 1)}};
  out["dimension_tallies"] = tallies;
  if (param<bool>(params, "check", true)) {
    const Eigen::MatrixXd f = qft_matrix(n);
    const std::size_t dim = std::size_t{1} << n;
    out["unitarity_residual"] =
        (f.transpose() * f - Eigen::MatrixXd::Identity(dim, dim)).norm();
  }
  if (params.contains("matrix_path")) {
    const Eigen::MatrixXd f = qft_matrix(n);
    std::ofstream file(params.at("matrix_path").get<std::string>());
    if (!file) throw ConfigError("cannot open matrix output path");
    file << "# subset-module fourier transform, n=" << n << "\n";
    file << "# rows: subset bitmask ascending; columns: (t,l,x) lexicographic\n";
    const auto indices = fourier_basis_indices(n);
    file << "# columns:";
    for (const auto& idx : indices) file << " t" << idx.t << "l" << idx.l << "x" << idx.x;
    file << "\n";
    for (Eigen::Index r = 0; r < f.rows(); ++r) {
      for (Eigen::Index c = 0; c < f.cols(); ++c)
        file << (c ? "," : "") << f(r, c);
      file << "\n";
    }
    out["matrix_path"] = params.at("matrix_path");
  }
  return out;
}

json run_adversary(const json& params) {
  const int n = required_param<int>(params, "n");
  const int k = required_param<int>(params, "k");
  const int d = required_param<int>(params, "d");
  const GgtSolution sol = build_ggt_solution(n, k, d);
  json out;
  out["n"] = n;
  out["k"] = k;
  out["d"] = d;
  out["W"] = sol.w_objective;
  out["feasibility_residual"] = feasibility_residual(sol);
  if (n <= 12)
    out["min_eigenvalue"] = ggt_min_eigenvalue(sol);
  else
    out["min_eigenvalue"] = nullptr;
  return out;
}

json run_qggt(const json& params, std::uint64_t seed) {
  const int n = required_param<int>(params, "n");
  const int k = required_param<int>(params, "k");
  const int d = required_param<int>(params, "d");
  const Side side = parse_side(required_param<std::string>(params, "side"));
  const IrrelevantMode mode = parse_mode(param<std::string>(params, "mode", "phase-faithful"));
  const OverridePolicy policy = parse_policy(param<std::string>(params, "override", "exact"));
  QggtConfig cfg;
  cfg.c1 = param<double>(params, "c1", 8.0);
  cfg.c = param<double>(params, "c", 64.0);
  cfg.ancilla = param<int>(params, "ancilla", 0);

  auto rng = make_stream(seed, 0x9997ULL);
  const int size = side == Side::small ? k : k + d;
  mask_t a = params.contains("hidden") ? mask_t(required_param<std::uint64_t>(params, "hidden"))
                                       : random_subset_of_size(n, size, rng);
  RelaxedOracle relaxed(n, k, d, side, a, policy, seed);
  BlockOracle oracle = make_block_oracle(relaxed, mode, mix64(seed, 0xb10cULL));
  if (!oracle.is_reflection(1e-9)) oracle = reflectionize(oracle);
  const QggtResult res = qggt_run(oracle, k, d, cfg);

  json out;
  out["n"] = n;
  out["k"] = k;
  out["d"] = d;
  out["side"] = side == Side::small ? "small" : "large";
  out["mode"] = param<std::string>(params, "mode", "phase-faithful");
  out["hidden"] = a;
  out["C1"] = cfg.c1;
  out["C"] = cfg.c;
  out["a"] = res.ancilla_bits;
  out["W"] = res.w_objective;
  out["delta"] = res.delta;
  out["padded_n"] = res.padded_n;
  out["acceptance_probability"] = res.acceptance_probability;
  out["decision"] = res.accept ? "small" : "large";
  out["correct"] = (res.accept == (side == Side::small));
  out["queries"] = res.oracle_queries;
  out["query_constant"] =
      static_cast<double>(res.oracle_queries) / std::sqrt(1.0 + static_cast<double>(k) / d);
  return out;
}

json fourier_summary(const BooleanFunction& f) {
  const auto spec = fourier_transform(f);
  json out;
  out["n"] = f.n();
  out["parseval_residual"] = std::abs(spec.parseval_sum() - 1.0);
  out["relevant_variables"] = [&] {
    json arr = json::array();
    const mask_t rel = relevant_variables(f);
    for (int j = 1; j <= f.n(); ++j)
      if (contains(rel, j)) arr.push_back(j);
    return arr;
  }();
  json inf = json::array();
  for (int j = 1; j <= f.n(); ++j) inf.push_back(influence(spec, mask_t{1} << (j - 1)));
  out["variable_influences"] = inf;
  if (f.n() <= 12) {
    json coeffs = json::array();
    for (std::size_t s = 0; s < spec.coeffs.size(); ++s)
      if (spec.coeffs[s] != 0.0) coeffs.push_back({{"subset", s}, {"value", spec.coeffs[s]}});
    out["spectrum"] = coeffs;
  }
  return out;
}

json run_junta(const json& params, const BooleanFunction& f, std::uint64_t seed) {
  const int k = required_param<int>(params, "k");
  const double eps = required_param<double>(params, "eps");
  JuntaConfig cfg;
  cfg.mode = param<std::string>(params, "mode", "ideal") == "compressed-circuit"
                 ? JuntaMode::compressed_circuit
                 : JuntaMode::ideal;
  cfg.seed = seed;
  cfg.qggt.c1 = param<double>(params, "c1", 8.0);
  cfg.qggt.c = param<double>(params, "c", 64.0);
  const JuntaVerdict verdict = junta_test(f, k, eps, cfg);
  json out;
  out["n"] = f.n();
  out["k"] = k;
  out["eps"] = eps;
  out["mode"] = param<std::string>(params, "mode", "ideal");
  out["decision"] = verdict.decision_junta ? "junta" : "far";
  out["accept_probability"] = verdict.accept_probability;
  json subs = json::array();
  for (const auto& fk : verdict.first_kind) {
    subs.push_back({{"ell", fk.ell},
                    {"d", fk.d},
                    {"delta", fk.delta},
                    {"promise_void", fk.promise_void},
                    {"acceptance_probability", fk.acceptance_probability},
                    {"accept", fk.accept},
                    {"block_queries", fk.block_queries},
                    {"f_queries", fk.f_queries}});
  }
  out["first_kind"] = subs;
  out["second_kind"] = {{"inner_probability", verdict.second_kind.inner_probability},
                        {"exact", verdict.second_kind.exact},
                        {"accept", verdict.second_kind.accept},
                        {"f_queries", verdict.second_kind.f_queries}};
  out["total_f_queries"] = verdict.total_f_queries;
  return out;
}

BooleanFunction load_function(const json& params, std::uint64_t seed) {
  if (params.contains("truth_table"))
    return BooleanFunction::read_table(params.at("truth_table").get<std::string>());
  if (params.contains("instance")) return parse_instance(params.at("instance").get<std::string>());
  (void)seed;
  throw ConfigError("need truth_table or instance");
}

}  // namespace

BooleanFunction parse_instance(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) throw ConfigError("instance descriptor needs kind:");
  const std::string kind = descriptor.substr(0, colon);
  const auto fields = parse_fields(descriptor.substr(colon + 1));
  try {
    if (kind == "constant") {
      const int sign = fields.count("sign") ? std::stoi(fields.at("sign")) : 1;
      return BooleanFunction::constant(field_int(fields, "n"), sign);
    }
    if (kind == "parity") {
      const int n = field_int(fields, "n");
      mask_t s = full_mask(n);
      if (fields.count("s")) {
        s = 0;
        for (const auto& part : split(fields.at("s"), ',')) s = with_element(s, std::stoi(part));
      }
      return BooleanFunction::parity(n, s);
    }
    if (kind == "random") {
      return BooleanFunction::random(field_int(fields, "n"),
                                     std::stoull(fields.at("seed")));
    }
    if (kind == "junta") {
      const int n = field_int(fields, "n");
      std::vector<int> positions;
      for (const auto& part : split(fields.at("positions"), ','))
        positions.push_back(std::stoi(part));
      const std::string core_kind = fields.at("core");
      const int kk = static_cast<int>(positions.size());
      BooleanFunction core = core_kind == "parity" ? BooleanFunction::parity(kk, full_mask(kk))
                             : core_kind == "random"
                                 ? BooleanFunction::random(kk, std::stoull(fields.at("seed")))
                                 : throw ConfigError("core must be parity|random");
      return random_k_junta(n, core, positions);
    }
    if (kind == "addressing") {
      std::vector<int> g;
      for (const auto& part : split(fields.at("g"), ',')) g.push_back(std::stoi(part));
      return addressing_function(field_int(fields, "naddr"), g);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad instance: ") + e.what());
  } catch (const std::out_of_range&) {
    throw ConfigError("bad instance: missing field");
  }
  throw ConfigError("unknown instance kind: " + kind);
}

json run_experiment(const json& request) {
  if (!request.is_object()) throw ConfigError("request must be a JSON object");
  const std::string command = request.contains("command")
                                  ? request.at("command").get<std::string>()
                                  : throw ConfigError("missing command");
  const json params = request.contains("params") ? request.at("params") : json::object();
  const std::uint64_t seed = request.contains("seed") ? request.at("seed").get<std::uint64_t>() : 1;

  json response;
  response["schema_version"] = "1";
  response["command"] = command;
  response["config"] = params;
  response["seed"] = seed;

  try {
    if (command == "fourier") {
      response["results"] = fourier_summary(load_function(params, seed));
    } else if (command == "ggt-classical") {
      response["results"] = run_ggt_classical(params, seed);
    } else if (command == "distances") {
      response["results"] = run_distances(params);
    } else if (command == "qft") {
      response["results"] = run_qft(params);
    } else if (command == "adversary") {
      response["results"] = run_adversary(params);
    } else if (command == "qggt") {
      response["results"] = run_qggt(params, seed);
    } else if (command == "junta") {
      response["results"] = run_junta(params, load_function(params, seed), seed);
    } else if (command == "acceptance-suite") {
      std::vector<int> only;
      if (params.contains("only"))
        for (const auto& v : params.at("only")) only.push_back(v.get<int>());
      const auto results = run_acceptance_suite(only);
      json arr = json::array();
      bool all_pass = true;
      for (const auto& r : results) {
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
        all_pass = all_pass && r.pass;
      }
      response["results"] = {{"criteria", arr}, {"all_pass", all_pass}};
    } else {
      throw ConfigError("unknown command: " + command);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return response;
}

int response_status(const json& response) {
  if (response.contains("results") && response.at("results").is_object() &&
      response.at("results").contains("all_pass"))
    return response.at("results").at("all_pass").get<bool>() ? 0 : 1;
  return 0;
}

}  // namespace juntalab
