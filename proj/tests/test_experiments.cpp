#include <doctest.h>

#include <nlohmann/json.hpp>

#include "juntalab/experiments.hpp"

using namespace juntalab;
using nlohmann::json;

TEST_CASE("instance descriptors") {
  CHECK(parse_instance("constant:n=3;sign=-1")(0) == -1);
  CHECK(parse_instance("parity:n=4")(0b1111) == 1);
  CHECK(parse_instance("parity:n=4;s=1,3")(0b0001) == -1);
  const auto junta = parse_instance("junta:n=5;core=parity;positions=2,4");
  CHECK(junta(0b01010) == 1);
  CHECK(junta(0b00010) == -1);
  const auto addr = parse_instance("addressing:naddr=2;g=1,2");
  CHECK(addr.n() == 3);
  CHECK_THROWS_AS((void)parse_instance("nope:n=1"), ConfigError);
  CHECK_THROWS_AS((void)parse_instance("parity:n"), ConfigError);
}

TEST_CASE("distances command returns the exact fraction") {
  json request = {{"command", "distances"},
                  {"params", {{"n", 4}, {"k", 1}, {"d", 1}, {"m", 2}, {"binom_p", 0.25}}},
                  {"seed", 9}};
  const json response = run_experiment(request);
  CHECK(response.at("schema_version") == "1");
  CHECK(response.at("results").at("tv") == "1/3");
  CHECK(std::abs(response.at("results").at("binomial").at("tv").get<double>() -
                 response.at("results").at("binomial").at("kolmogorov").get<double>()) < 1e-12);
  CHECK(response_status(response) == 0);
}

TEST_CASE("qft command reports unitarity") {
  json request = {{"command", "qft"}, {"params", {{"n", 6}, {"check", true}}}, {"seed", 1}};
  const json response = run_experiment(request);
  CHECK(response.at("results").at("unitarity_residual").get<double>() < 1e-9);
  const auto& tallies = response.at("results").at("dimension_tallies");
  for (auto it = tallies.begin(); it != tallies.end(); ++it)
    CHECK(it.value().at("strings") == it.value().at("expected"));
}

TEST_CASE("adversary command emits the feasibility diagnostics") {
  json request = {{"command", "adversary"}, {"params", {{"n", 8}, {"k", 2}, {"d", 2}}}};
  const json response = run_experiment(request);
  CHECK(response.at("results").at("feasibility_residual").get<double>() < 1e-9);
  CHECK(response.at("results").at("min_eigenvalue").get<double>() >= -1e-10);
}

TEST_CASE("identical config and seed give byte-identical output") {
  json request = {{"command", "ggt-classical"},
                  {"params",
                   {{"tester", "partition"},
                    {"n", 16},
                    {"k", 2},
                    {"d", 1},
                    {"side", "large"},
                    {"override", "exact"},
                    {"trials", 20}}},
                  {"seed", 123}};
  const std::string a = run_experiment(request).dump();
  const std::string b = run_experiment(request).dump();
  CHECK(a == b);
}

TEST_CASE("qggt command decides both sides") {
  for (const std::string side : {"small", "large"}) {
    json request = {{"command", "qggt"},
                    {"params",
                     {{"n", 5}, {"k", 1}, {"d", 1}, {"side", side}, {"mode", "phase-faithful"}}},
                    {"seed", 4}};
    const json response = run_experiment(request);
    CHECK(response.at("results").at("decision") == side);
    CHECK(response.at("results").at("correct").get<bool>());
  }
}

TEST_CASE("junta command produces a verdict document") {
  json request = {{"command", "junta"},
                  {"params",
                   {{"k", 2},
                    {"eps", 0.2},
                    {"mode", "ideal"},
                    {"instance", "junta:n=5;core=parity;positions=1,4"}}},
                  {"seed", 2}};
  const json response = run_experiment(request);
  CHECK(response.at("results").at("decision") == "junta");
  CHECK(response.at("results").at("first_kind").size() >= 1);
  CHECK(response.at("results").at("second_kind").at("accept").get<bool>());
}

TEST_CASE("config errors surface as ConfigError") {
  CHECK_THROWS_AS((void)run_experiment(json{{"command", "distances"}, {"params", {{"n", 4}}}}),
                  ConfigError);
  CHECK_THROWS_AS((void)run_experiment(json{{"params", json::object()}}), ConfigError);
  CHECK_THROWS_AS((void)run_experiment(json{{"command", "nope"}}), ConfigError);
}
