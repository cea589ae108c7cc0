#pragma once

// Randomized and exhaustive checks of the library against brute force. Every
// suite is a pure function of (seed, trials).

#include <cstdint>
#include <string>
#include <vector>

#include "app/json_io.hpp"

namespace openimage::verify {

struct SuiteResult {
  std::string name;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  bool pass = false;
  app::Json details = app::Json::object();
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// trials <= 0 selects the suite's default count. InvalidInput for an unknown
// name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::int64_t trials);

}  // namespace openimage::verify
