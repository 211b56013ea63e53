#pragma once

#include <nlohmann/json_fwd.hpp>
#include <stdexcept>
#include <string>

#include "juntalab/boolfn.hpp"

namespace juntalab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dispatches a request {"command": ..., "params": {...}, "seed": ...} to the
// matching experiment and returns the schema-versioned response document.
// The response is deterministic for a fixed (config, seed); timestamps are
// added by callers as a separate sibling field.
nlohmann::json run_experiment(const nlohmann::json& request);

// Exit code convention: 2 for config errors, 1 when a check ran and failed,
// 0 otherwise.
int response_status(const nlohmann::json& response);

// Instance descriptors: "parity:n=5", "constant:n=4;sign=-1",
// "random:n=5;seed=7", "junta:n=8;core=parity;positions=1,3",
// "addressing:naddr=3;g=1,2,3,1".
BooleanFunction parse_instance(const std::string& descriptor);

}  // namespace juntalab
