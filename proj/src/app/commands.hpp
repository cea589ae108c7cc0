#pragma once

// The five report-producing commands behind the CLI and the C API. Reports
// are deterministic functions of (config, input): no clocks, no addresses.

#include <cstdint>
#include <string>

#include "app/json_io.hpp"
#include "core/group.hpp"

namespace openimage::app {

struct RunConfig {
  std::uint64_t ell = 0;  // 0: not given
  int precision = 0;      // 0: not given
  std::uint64_t seed = 0;
  std::size_t cap = FiniteMatrixGroup::kDefaultCap;
  std::int64_t trials = 0;  // 0: suite defaults
};

struct Report {
  Json json;
  bool pass = true;  // false for a falsified check; errors are thrown instead
};

Report cmd_bounds(const RunConfig& cfg, const Json& input);
Report cmd_lie(const RunConfig& cfg, const Json& input);
Report cmd_inner(const RunConfig& cfg, const Json& input);
Report cmd_goursat(const RunConfig& cfg, const Json& input);
// input: {"suites": [names]} or null for every suite.
Report cmd_verify(const RunConfig& cfg, const Json& input);

// Dispatch by subcommand name; InvalidInput for an unknown name.
Report run_command(const std::string& name, const RunConfig& cfg, const Json& input);

// Prime and precision from the input object when present, else from cfg.
const PadicContext& context_for(const RunConfig& cfg, const Json& input);

}  // namespace openimage::app
