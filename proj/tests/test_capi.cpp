#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <string>

#include <json.hpp>

#include "bethepop/bethepop.h"

namespace {

using json = nlohmann::json;

struct Session {
  bethe_session* s = bethe_session_new();
  ~Session() { bethe_session_free(s); }
};

}  // namespace

TEST_CASE("C API: subcommands and version") {
  std::vector<std::string> names;
  for (const char* const* n = bethe_subcommands(); *n; ++n) names.emplace_back(*n);
  CHECK(names.size() == 7);
  CHECK(std::find(names.begin(), names.end(), "populate") != names.end());
  CHECK(std::find(names.begin(), names.end(), "dwg-check") != names.end());
  CHECK(std::strlen(bethe_version()) > 0);
}

TEST_CASE("C API: a passing run") {
  Session s;
  const char* req = R"({"type":"A1","Lambda":[[1]],"z":["1"],"weight":["5/3"],"tuple":[["-5/8","1"]]})";
  CHECK(bethe_run(s.s, "populate", req) == BETHE_OK);
  const json rep = json::parse(bethe_report(s.s));
  CHECK(rep["pass"] == true);
  CHECK(rep["population"]["nodes"].size() == 2);
  CHECK(std::string(bethe_last_error(s.s)).empty());
}

TEST_CASE("C API: status codes") {
  Session s;
  CHECK(bethe_run(s.s, "verify", R"({"type":"A1","Lambda":[[1]],"z":["1"],"weight":["5/3"],"tuple":[["-5/7","1"]]})") ==
        BETHE_CHECK_FAILED);
  CHECK(json::parse(bethe_report(s.s))["pass"] == false);

  CHECK(bethe_run(s.s, "populate", R"({"type":"Q7"})") == BETHE_INPUT_ERROR);
  CHECK(std::string(bethe_last_error_code(s.s)) == "InvalidType");
  CHECK(std::string(bethe_report(s.s)).empty());

  CHECK(bethe_run(s.s, "populate", "{not json") == BETHE_INPUT_ERROR);
  CHECK(bethe_run(s.s, "nonsense", "{}") == BETHE_INPUT_ERROR);
  CHECK(bethe_run(s.s, "populate", nullptr) == BETHE_INPUT_ERROR);
  CHECK(bethe_run(nullptr, "populate", "{}") == BETHE_INTERNAL_ERROR);
  CHECK(bethe_run(s.s, "populate", R"({"type":"A1","family":"xxx","h":"0"})") == BETHE_INPUT_ERROR);
  CHECK(std::string(bethe_last_error_code(s.s)) == "ZeroStep");

  // state is reset between calls
  CHECK(bethe_run(s.s, "populate", R"({"type":"A2"})") == BETHE_OK);
  CHECK(std::string(bethe_last_error(s.s)).empty());
  CHECK(std::string(bethe_last_error_code(s.s)).empty());
}

TEST_CASE("C API: overflow is a failed check, not an input error") {
  Session s;
  CHECK(bethe_run(s.s, "populate", R"({"type":"A3","options":{"max_nodes":5}})") == BETHE_CHECK_FAILED);
  const json rep = json::parse(bethe_report(s.s));
  CHECK(rep["error"]["code"] == "PopulationOverflow");
}
