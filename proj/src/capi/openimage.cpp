#include "openimage/openimage.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "app/commands.hpp"
#include "core/group.hpp"
#include "verify/suites.hpp"

struct oi_session {
  openimage::app::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

oi_status fail_with(oi_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

template <class F>
oi_status guarded(F&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const openimage::Error& e) {
    return fail_with(static_cast<oi_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(OI_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(OI_INTERNAL, e.what());
  } catch (...) {
    return fail_with(OI_INTERNAL, "unknown exception");
  }
}

oi_status out_string(const std::string& s, char** out) {
  *out = dup(s);
  return *out ? OI_OK : fail_with(OI_INTERNAL, "out of memory");
}

}  // namespace

extern "C" {

int oi_abi_version(void) { return OI_ABI_VERSION; }

const char* oi_status_name(oi_status status) {
  return openimage::error_code_name(static_cast<openimage::ErrorCode>(status)).data();
}

const char* oi_last_error(void) { return g_last_error.c_str(); }

oi_status oi_session_create(oi_session** out) {
  if (!out) return fail_with(OI_INVALID_INPUT, "null output pointer");
  return guarded([&] {
    *out = new oi_session{};
    return OI_OK;
  });
}

void oi_session_destroy(oi_session* session) { delete session; }

oi_status oi_session_set_prime(oi_session* session, uint64_t ell, int precision) {
  if (!session) return fail_with(OI_INVALID_INPUT, "null session");
  return guarded([&] {
    if (ell != 0 && precision != 0) openimage::PadicContext::get(ell, precision);
    if (precision < 0) return fail_with(OI_INVALID_INPUT, "precision must be >= 0");
    session->cfg.ell = ell;
    session->cfg.precision = precision;
    return OI_OK;
  });
}

oi_status oi_session_set_seed(oi_session* session, uint64_t seed) {
  if (!session) return fail_with(OI_INVALID_INPUT, "null session");
  session->cfg.seed = seed;
  return OI_OK;
}

oi_status oi_session_set_cap(oi_session* session, uint64_t cap) {
  if (!session) return fail_with(OI_INVALID_INPUT, "null session");
  if (cap == 0 || cap >= (uint64_t{1} << 31)) return fail_with(OI_INVALID_INPUT, "cap must lie in [1, 2^31)");
  session->cfg.cap = static_cast<std::size_t>(cap);
  return OI_OK;
}

oi_status oi_session_set_trials(oi_session* session, int64_t trials) {
  if (!session) return fail_with(OI_INVALID_INPUT, "null session");
  if (trials < 0) return fail_with(OI_INVALID_INPUT, "trials must be >= 0");
  session->cfg.trials = trials;
  return OI_OK;
}

oi_status oi_run(oi_session* session, const char* command, const char* input_json, char** report, int* passed) {
  if (!session || !command || !report) return fail_with(OI_INVALID_INPUT, "null argument");
  *report = nullptr;
  if (passed) *passed = 0;
  return guarded([&] {
    using openimage::app::Json;
    const Json input = input_json ? openimage::app::parse_json(input_json) : Json();
    const auto r = openimage::app::run_command(command, session->cfg, input);
    const oi_status st = out_string(r.json.dump(2) + "\n", report);
    if (st == OI_OK && passed) *passed = r.pass ? 1 : 0;
    return st;
  });
}

oi_status oi_suite_names(char** names) {
  if (!names) return fail_with(OI_INVALID_INPUT, "null argument");
  return guarded([&] {
    std::string s;
    for (const auto& n : openimage::verify::suite_names()) s += (s.empty() ? "" : ",") + n;
    return out_string(s, names);
  });
}

oi_status oi_ball_index(uint64_t ell, int s, char** decimal) {
  if (!decimal) return fail_with(OI_INVALID_INPUT, "null argument");
  return guarded([&] { return out_string(openimage::ball_index(ell, s).str(), decimal); });
}

void oi_string_free(char* s) { std::free(s); }

}  // extern "C"
