// openimage: command-line front end over the C API.
//
// Exit codes: 0 pass, 1 failure or falsified check, 2 usage or malformed input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "openimage/openimage.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::uint64_t prime = 0;
  int precision = 0;
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::uint64_t cap = 10'000'000;
  std::int64_t trials = 0;
  std::vector<std::string> suites;
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

int report_error(oi_status st) {
  std::cerr << "openimage: " << oi_last_error() << "\n";
  return st == OI_INVALID_INPUT ? kExitUsage : kExitFail;
}

int run(const std::string& command, const Options& o) {
  std::string input;
  if (command == "verify") {
    nlohmann::json j = {{"suites", o.suites}};
    input = j.dump();
  } else {
    if (o.input.empty()) {
      std::cerr << "openimage: " << command << " needs --input\n";
      return kExitUsage;
    }
    if (!read_file(o.input, input)) {
      std::cerr << "openimage: cannot read " << o.input << "\n";
      return kExitUsage;
    }
  }

  oi_session* s = nullptr;
  if (oi_session_create(&s) != OI_OK) return report_error(OI_INTERNAL);
  oi_status st = oi_session_set_prime(s, o.prime, o.precision);
  if (st == OI_OK) st = oi_session_set_seed(s, o.seed);
  if (st == OI_OK) st = oi_session_set_cap(s, o.cap);
  if (st == OI_OK) st = oi_session_set_trials(s, o.trials);
  char* report = nullptr;
  int passed = 0;
  if (st == OI_OK) st = oi_run(s, command.c_str(), input.c_str(), &report, &passed);
  oi_session_destroy(s);
  if (st != OI_OK) return report_error(st);

  int code = passed ? kExitPass : kExitFail;
  if (o.output.empty()) {
    std::cout << report;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    f << report;
    if (!f) {
      std::cerr << "openimage: cannot write " << o.output << "\n";
      code = kExitFail;
    }
  }
  oi_string_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit open-image bounds and their verification suites"};
  app.require_subcommand(1);
  Options o;
  char* names = nullptr;
  std::string suite_help = "verification suite (repeatable; default: all)";
  if (oi_suite_names(&names) == OI_OK) {
    suite_help += ": " + std::string(names);
    oi_string_free(names);
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("--prime", o.prime, "prime l");
    sub->add_option("--precision", o.precision, "working precision N (arithmetic mod l^N)");
    sub->add_option("--input", o.input, "input JSON file");
    sub->add_option("--output", o.output, "write the report here instead of stdout");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--cap", o.cap, "group closure size cap")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 31));
  };
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"bounds", "lie", "inner", "goursat", "verify"}) {
    static const char* help[] = {"evaluate the index bounds", "Lie algebra of a finite matrix group",
                                 "inner matrix of an approximate sl2 morphism", "Goursat exponent predictions",
                                 "run verification suites"};
    const int idx = static_cast<int>(subs.size());
    CLI::App* sub = app.add_subcommand(name, help[idx]);
    common(sub);
    subs.emplace_back(name, sub);
  }
  subs.back().second->add_option("--suite", o.suites, suite_help);
  subs.back().second->add_option("--trials", o.trials, "trials per suite (0: defaults)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) return run(name, o);
  return kExitUsage;
}
