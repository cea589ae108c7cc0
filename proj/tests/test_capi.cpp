#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "openimage/openimage.h"

namespace {

struct Session {
  oi_session* s = nullptr;
  Session() { REQUIRE(oi_session_create(&s) == OI_OK); }
  ~Session() { oi_session_destroy(s); }
};

}  // namespace

TEST_CASE("abi and status names") {
  CHECK(oi_abi_version() == OI_ABI_VERSION);
  CHECK(std::string(oi_status_name(OI_OK)) == "Ok");
  CHECK(std::string(oi_status_name(OI_HYPOTHESIS_FAILS)) == "HypothesisFails");
  CHECK(std::string(oi_status_name(OI_SIZE_CAP_EXCEEDED)) == "SizeCapExceeded");
}

TEST_CASE("null arguments") {
  CHECK(oi_session_create(nullptr) == OI_INVALID_INPUT);
  CHECK(std::strlen(oi_last_error()) > 0);
  CHECK(oi_session_set_seed(nullptr, 1) == OI_INVALID_INPUT);
  char* out = nullptr;
  CHECK(oi_run(nullptr, "verify", nullptr, &out, nullptr) == OI_INVALID_INPUT);
  Session s;
  CHECK(oi_run(s.s, nullptr, nullptr, &out, nullptr) == OI_INVALID_INPUT);
  CHECK(oi_run(s.s, "verify", nullptr, nullptr, nullptr) == OI_INVALID_INPUT);
  CHECK(oi_suite_names(nullptr) == OI_INVALID_INPUT);
  oi_session_destroy(nullptr);
  oi_string_free(nullptr);
}

TEST_CASE("session settings are validated") {
  Session s;
  CHECK(oi_session_set_prime(s.s, 4, 3) == OI_INVALID_INPUT);
  CHECK(oi_session_set_prime(s.s, 2, 70) == OI_INVALID_INPUT);
  CHECK(oi_session_set_prime(s.s, 3, -1) == OI_INVALID_INPUT);
  CHECK(oi_session_set_prime(s.s, 3, 4) == OI_OK);
  CHECK(oi_session_set_prime(s.s, 0, 0) == OI_OK);
  CHECK(oi_session_set_cap(s.s, 0) == OI_INVALID_INPUT);
  CHECK(oi_session_set_trials(s.s, -1) == OI_INVALID_INPUT);
  CHECK(oi_session_set_trials(s.s, 3) == OI_OK);
}

TEST_CASE("run reports and errors") {
  Session s;
  char* report = nullptr;
  int passed = -1;
  REQUIRE(oi_run(s.s, "bounds", R"({"n":2,"K_degree":1,"heights":[1,1]})", &report, &passed) == OI_OK);
  CHECK(passed == 1);
  CHECK(std::string(report).find("\"openimage/bounds-report/v1\"") != std::string::npos);
  CHECK(std::string(oi_last_error()).empty());
  oi_string_free(report);

  CHECK(oi_run(s.s, "bounds", "{not json", &report, &passed) == OI_INVALID_INPUT);
  CHECK(report == nullptr);
  CHECK(std::string(oi_last_error()).find("malformed JSON") != std::string::npos);
  CHECK(oi_run(s.s, "nope", "{}", &report, &passed) == OI_INVALID_INPUT);
  CHECK(oi_run(s.s, "verify", R"({"suites":["nope"]})", &report, &passed) == OI_INVALID_INPUT);

  const char* bad_morphism = R"({"prime":5,"precision":12,"s":1,"n":3,"conjugator":[[2,1],[1,1]]})";
  CHECK(oi_run(s.s, "inner", bad_morphism, &report, &passed) == OI_HYPOTHESIS_FAILS);

  REQUIRE(oi_session_set_cap(s.s, 5) == OI_OK);
  const char* big = R"({"prime":3,"precision":2,"blocks":1,"generators":[[[1,1],[0,1]],[[1,0],[1,1]]]})";
  CHECK(oi_run(s.s, "lie", big, &report, &passed) == OI_SIZE_CAP_EXCEEDED);
}

TEST_CASE("verify through the API is deterministic") {
  Session s;
  REQUIRE(oi_session_set_seed(s.s, 42) == OI_OK);
  char* a = nullptr;
  char* b = nullptr;
  int pa = 0, pb = 0;
  REQUIRE(oi_run(s.s, "verify", R"({"suites":["hensel","inner"]})", &a, &pa) == OI_OK);
  REQUIRE(oi_run(s.s, "verify", R"({"suites":["hensel","inner"]})", &b, &pb) == OI_OK);
  CHECK(pa == 1);
  CHECK(std::string(a) == std::string(b));
  oi_string_free(a);
  oi_string_free(b);
}

TEST_CASE("suite names and ball index") {
  char* names = nullptr;
  REQUIRE(oi_suite_names(&names) == OI_OK);
  CHECK(std::string(names).find("hensel,") == 0);
  oi_string_free(names);

  char* idx = nullptr;
  REQUIRE(oi_ball_index(2, 1, &idx) == OI_OK);
  CHECK(std::string(idx) == "6");
  oi_string_free(idx);
  REQUIRE(oi_ball_index(3, 1, &idx) == OI_OK);
  CHECK(std::string(idx) == "24");
  oi_string_free(idx);
  REQUIRE(oi_ball_index(5, 2, &idx) == OI_OK);
  CHECK(std::string(idx) == "15000");
  oi_string_free(idx);
  CHECK(oi_ball_index(4, 1, &idx) == OI_INVALID_INPUT);
}
