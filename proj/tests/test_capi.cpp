// Exercises the shared-library surface the CLI links against.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <nlohmann/json.hpp>
#include <string>

#include "juntalab.h"

TEST_CASE("run a request through the C interface") {
  juntalab_lab* lab = juntalab_create();
  REQUIRE(lab != nullptr);

  char* result = nullptr;
  const auto status = juntalab_run(
      lab, R"({"command":"distances","params":{"n":4,"k":1,"d":1,"m":2},"seed":7})", &result);
  CHECK(status == JUNTALAB_OK);
  REQUIRE(result != nullptr);
  const auto doc = nlohmann::json::parse(result);
  CHECK(doc.at("results").at("tv") == "1/3");
  CHECK(doc.contains("timestamp"));
  juntalab_free(result);
  juntalab_destroy(lab);
}

TEST_CASE("determinism modulo the timestamp field") {
  juntalab_lab* lab = juntalab_create();
  auto run_once = [&] {
    char* result = nullptr;
    juntalab_run(lab,
                 R"({"command":"fourier","params":{"instance":"parity:n=4"},"seed":3})",
                 &result);
    auto doc = nlohmann::json::parse(result);
    juntalab_free(result);
    doc.erase("timestamp");
    return doc.dump();
  };
  CHECK(run_once() == run_once());
  juntalab_destroy(lab);
}

TEST_CASE("config errors set the status and the message") {
  juntalab_lab* lab = juntalab_create();
  char* result = nullptr;
  CHECK(juntalab_run(lab, R"({"command":"nope"})", &result) == JUNTALAB_ERR_CONFIG);
  CHECK(result == nullptr);
  CHECK(std::strlen(juntalab_last_error(lab)) > 0);
  CHECK(juntalab_run(lab, "not json", &result) == JUNTALAB_ERR_CONFIG);
  CHECK(juntalab_run(nullptr, "{}", &result) == JUNTALAB_ERR_CONFIG);
  juntalab_destroy(lab);
}

TEST_CASE("version string") {
  CHECK(std::string(juntalab_version()).find('.') != std::string::npos);
}
