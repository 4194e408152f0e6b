#include "bethepop/bethepop.h"

#include <new>
#include <string>
#include <vector>

#include "bethepop/commands.hpp"

struct bethe_session {
  std::string report;
  std::string error;
  std::string error_code;
};

extern "C" {

bethe_session* bethe_session_new(void) { return new (std::nothrow) bethe_session; }

void bethe_session_free(bethe_session* s) { delete s; }

bethe_status bethe_run(bethe_session* s, const char* subcommand, const char* request_json) {
  if (!s) return BETHE_INTERNAL_ERROR;
  s->report.clear();
  s->error.clear();
  s->error_code.clear();
  if (!subcommand || !request_json) {
    s->error = "null argument";
    return BETHE_INPUT_ERROR;
  }
  try {
    bp::json req;
    try {
      req = bp::json::parse(request_json);
    } catch (const bp::json::parse_error&) {
      s->error = "malformed JSON request";
      s->error_code = bp::error_name(bp::ErrorCode::InvalidInput);
      return BETHE_INPUT_ERROR;
    }
    const bp::CommandResult r = bp::run_command(subcommand, req);
    s->report = r.report.dump(2) + "\n";
    return r.pass ? BETHE_OK : BETHE_CHECK_FAILED;
  } catch (const bp::Error& e) {
    s->error = e.what();
    s->error_code = bp::error_name(e.code());
    return bp::is_input_error(e.code()) ? BETHE_INPUT_ERROR : BETHE_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    s->error = e.what();
    return BETHE_INTERNAL_ERROR;
  }
}

const char* bethe_report(const bethe_session* s) { return s ? s->report.c_str() : ""; }

const char* bethe_last_error(const bethe_session* s) { return s ? s->error.c_str() : ""; }

const char* bethe_last_error_code(const bethe_session* s) { return s ? s->error_code.c_str() : ""; }

const char* const* bethe_subcommands(void) {
  static const std::vector<const char*> names = [] {
    std::vector<const char*> v;
    for (const auto& n : bp::subcommands()) v.push_back(n.c_str());
    v.push_back(nullptr);
    return v;
  }();
  return names.data();
}

const char* bethe_version(void) { return "0.1.0"; }

}
