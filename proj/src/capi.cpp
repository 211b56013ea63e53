#include "juntalab.h"

#include <chrono>
#include <cstring>
#include <nlohmann/json.hpp>
#include <string>

#include "juntalab/experiments.hpp"

struct juntalab_lab {
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

}  // namespace

extern "C" {

juntalab_lab* juntalab_create(void) { return new (std::nothrow) juntalab_lab; }

void juntalab_destroy(juntalab_lab* lab) { delete lab; }

juntalab_status juntalab_run(juntalab_lab* lab, const char* request_json,
                             char** result_json) {
  if (!lab || !request_json || !result_json) return JUNTALAB_ERR_CONFIG;
  *result_json = nullptr;
  lab->last_error.clear();
  try {
    const auto request = nlohmann::json::parse(request_json);
    auto response = juntalab::run_experiment(request);
    const int status = juntalab::response_status(response);
    response["timestamp"] = iso_timestamp();
    *result_json = dup_string(response.dump());
    return status == 0 ? JUNTALAB_OK : JUNTALAB_ERR_CHECK_FAILED;
  } catch (const nlohmann::json::exception& e) {
    lab->last_error = std::string("bad request: ") + e.what();
    return JUNTALAB_ERR_CONFIG;
  } catch (const juntalab::ConfigError& e) {
    lab->last_error = e.what();
    return JUNTALAB_ERR_CONFIG;
  } catch (const std::exception& e) {
    lab->last_error = e.what();
    return JUNTALAB_ERR_INTERNAL;
  }
}

const char* juntalab_last_error(const juntalab_lab* lab) {
  return lab ? lab->last_error.c_str() : "";
}

void juntalab_free(char* text) { std::free(text); }

const char* juntalab_version(void) { return "1.0.0"; }

}  // extern "C"
