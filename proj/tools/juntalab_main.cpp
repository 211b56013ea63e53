// Batch frontend: turns subcommand flags into a JSON request, runs it
// through the shared library's C interface and prints or saves the result.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "juntalab.h"

namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "RNG seed recorded in the output");
  cmd->add_option("--out", common.out_path, "write the result document to this path");
  cmd->add_option("--format", common.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
}

std::string csv_escape(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv(const json& response) {
  // Flat key,value dump of the results object; lists inline as JSON.
  std::string out = "key,value\n";
  const json& results = response.at("results");
  for (auto it = results.begin(); it != results.end(); ++it)
    out += it.key() + "," + csv_escape(it.value()) + "\n";
  return out;
}

int run_request(const json& request, const Common& common) {
  json full = request;
  full["seed"] = common.seed;
  juntalab_lab* lab = juntalab_create();
  char* result = nullptr;
  const juntalab_status status = juntalab_run(lab, full.dump().c_str(), &result);
  if (status == JUNTALAB_ERR_CONFIG || status == JUNTALAB_ERR_INTERNAL) {
    std::cerr << "error: " << juntalab_last_error(lab) << "\n";
    juntalab_destroy(lab);
    return status == JUNTALAB_ERR_CONFIG ? 2 : 3;
  }
  const json response = json::parse(result);
  juntalab_free(result);
  juntalab_destroy(lab);

  const std::string text = common.format == "csv" ? to_csv(response) : response.dump(2) + "\n";
  if (!common.out_path.empty()) {
    std::ofstream file(common.out_path);
    if (!file) {
      std::cerr << "error: cannot open " << common.out_path << "\n";
      return 2;
    }
    file << text;
  } else {
    std::cout << text;
  }

  if (response.contains("results") && response["results"].contains("criteria")) {
    for (const auto& c : response["results"]["criteria"])
      std::fprintf(stderr, "[%s] %2d %s %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                   c["id"].get<int>(), c["name"].get<std::string>().c_str(),
                   c["detail"].get<std::string>().c_str());
  }
  return status == JUNTALAB_OK ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapped group testing and junta testing laboratory"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read flag values from a TOML-like file");
  Common common;

  json params = json::object();

  auto* fourier = app.add_subcommand("fourier", "spectrum, influences and relevant variables");
  std::string truth_table, instance;
  fourier->add_option("--truth-table", truth_table, "truth table file");
  fourier->add_option("--instance", instance, "instance descriptor");
  add_common(fourier, common);

  auto* ggt = app.add_subcommand("ggt-classical", "randomized gap group testers");
  std::string tester = "partition", side = "large", override_policy = "exact";
  int n = 0, k = 1, d = 1, m = 0, trials = 200, ancilla = 0, ell = 0;
  std::uint64_t repetitions = 0;
  ggt->add_option("--tester", tester, "sampling|partition")->required();
  ggt->add_option("--n", n)->required();
  ggt->add_option("--k", k)->required();
  ggt->add_option("--d", d)->required();
  ggt->add_option("--side", side, "small|large");
  ggt->add_option("--override", override_policy, "zeros|ones|random|exact");
  ggt->add_option("--trials", trials);
  ggt->add_option("--repetitions", repetitions, "sampling repetitions (0 = default)");
  add_common(ggt, common);

  auto* dist = app.add_subcommand("distances", "exact distribution distances");
  double binom_p = -1;
  dist->add_option("--n", n)->required();
  dist->add_option("--k", k)->required();
  dist->add_option("--d", d)->required();
  dist->add_option("--m", m)->required();
  dist->add_option("--binom-p", binom_p, "also report binomial TV/Kolmogorov at this p");
  add_common(dist, common);

  auto* qft = app.add_subcommand("qft", "subset-module Fourier transform checks");
  bool check = true;
  std::string matrix_path;
  qft->add_option("--n", n)->required();
  qft->add_flag("--check,!--no-check", check, "compute the unitarity residual");
  qft->add_option("--emit-matrix", matrix_path, "write the dense matrix as CSV");
  add_common(qft, common);

  auto* adv = app.add_subcommand("adversary", "group-testing dual solution diagnostics");
  adv->add_option("--n", n)->required();
  adv->add_option("--k", k)->required();
  adv->add_option("--d", d)->required();
  add_common(adv, common);

  auto* qggt = app.add_subcommand("qggt", "quantum gap group testing, exact simulation");
  std::string mode = "phase-faithful";
  double c1 = 8.0, c = 64.0;
  std::uint64_t hidden = 0;
  bool hidden_set = false;
  qggt->add_option("--n", n)->required();
  qggt->add_option("--k", k)->required();
  qggt->add_option("--d", d)->required();
  qggt->add_option("--side", side, "small|large")->required();
  qggt->add_option("--mode", mode, "phase-faithful|random-reflection|random-unitary");
  qggt->add_option("--override", override_policy, "zeros|ones|random|exact");
  qggt->add_option("--c1", c1);
  qggt->add_option("--c", c);
  qggt->add_option("--ancilla", ancilla, "0 = automatic");
  qggt->add_option("--hidden", hidden, "hidden set bitmask")->each([&](const std::string&) {
    hidden_set = true;
  });
  add_common(qggt, common);

  auto* junta = app.add_subcommand("junta", "quantum junta tester, exact simulation");
  double eps = 0.1;
  junta->add_option("--k", k)->required();
  junta->add_option("--eps", eps)->required();
  junta->add_option("--mode", mode, "ideal|compressed-circuit");
  junta->add_option("--truth-table", truth_table);
  junta->add_option("--instance", instance);
  junta->add_option("--c1", c1);
  junta->add_option("--c", c);
  add_common(junta, common);

  auto* acc = app.add_subcommand("acceptance-suite", "run the acceptance battery");
  std::vector<int> only;
  acc->add_option("--only", only, "criterion ids to run (default: all)");
  add_common(acc, common);

  CLI11_PARSE(app, argc, argv);

  json request;
  if (*fourier) {
    request["command"] = "fourier";
    if (!truth_table.empty()) params["truth_table"] = truth_table;
    if (!instance.empty()) params["instance"] = instance;
  } else if (*ggt) {
    request["command"] = "ggt-classical";
    params = {{"tester", tester}, {"n", n},           {"k", k},
              {"d", d},           {"side", side},     {"override", override_policy},
              {"trials", trials}, {"repetitions", repetitions}};
  } else if (*dist) {
    request["command"] = "distances";
    params = {{"n", n}, {"k", k}, {"d", d}, {"m", m}};
    if (binom_p > 0) params["binom_p"] = binom_p;
  } else if (*qft) {
    request["command"] = "qft";
    params = {{"n", n}, {"check", check}};
    if (!matrix_path.empty()) params["matrix_path"] = matrix_path;
  } else if (*adv) {
    request["command"] = "adversary";
    params = {{"n", n}, {"k", k}, {"d", d}};
  } else if (*qggt) {
    request["command"] = "qggt";
    params = {{"n", n},   {"k", k},   {"d", d},  {"side", side}, {"mode", mode},
              {"override", override_policy}, {"c1", c1}, {"c", c},  {"ancilla", ancilla}};
    if (hidden_set) params["hidden"] = hidden;
  } else if (*junta) {
    request["command"] = "junta";
    params = {{"k", k}, {"eps", eps},
              {"mode", mode == "phase-faithful" ? "ideal" : mode},
              {"c1", c1}, {"c", c}};
    if (!truth_table.empty()) params["truth_table"] = truth_table;
    if (!instance.empty()) params["instance"] = instance;
  } else if (*acc) {
    request["command"] = "acceptance-suite";
    if (!only.empty()) params["only"] = only;
  }
  request["params"] = params;
  return run_request(request, common);
}
