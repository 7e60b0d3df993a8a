#include "relpub/relpub.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/error.hpp"
#include "pipeline/config.hpp"
#include "pipeline/jobs.hpp"
#include "pipeline/run_report.hpp"

struct relpub_session {
  relpub::pipeline::ConfigBuilder builder;
  std::string last_error;
};

namespace {

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

relpub_status run(relpub_session* session, const char* command, char** output) {
  if (!session) return RELPUB_ERR_IO;
  if (output) *output = nullptr;
  session->last_error.clear();
  try {
    relpub::pipeline::PipelineConfig config = session->builder.resolve();
    relpub::pipeline::RunReport report = relpub::pipeline::run_command(command, config);
    if (output) *output = dup_string(relpub::pipeline::render(report, config.format));
    session->last_error = report.error_message;
    return static_cast<relpub_status>(report.exit_code);
  } catch (const relpub::Error& e) {
    session->last_error = e.what();
    return static_cast<relpub_status>(e.exit_code());
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return RELPUB_ERR_IO;
  }
}

}  // namespace

extern "C" {

const char* relpub_version(void) { return "1.0.0"; }

relpub_session* relpub_session_new(void) {
  try {
    return new relpub_session();
  } catch (...) {
    return nullptr;
  }
}

void relpub_session_free(relpub_session* session) { delete session; }

relpub_status relpub_set(relpub_session* session, const char* key, const char* value) {
  if (!session || !key) return RELPUB_ERR_IO;
  session->last_error.clear();
  try {
    session->builder.set(key, value ? value : "");
    return RELPUB_OK;
  } catch (const relpub::Error& e) {
    session->last_error = e.what();
    return static_cast<relpub_status>(e.exit_code());
  }
}

const char* relpub_last_error(const relpub_session* session) {
  return session ? session->last_error.c_str() : "";
}

relpub_status relpub_cmd_validate(relpub_session* s, char** out) { return run(s, "validate", out); }
relpub_status relpub_cmd_datacite(relpub_session* s, char** out) { return run(s, "datacite", out); }
relpub_status relpub_cmd_bag(relpub_session* s, char** out) { return run(s, "bag", out); }
relpub_status relpub_cmd_bag_validate(relpub_session* s, char** out) {
  return run(s, "bag-validate", out);
}
relpub_status relpub_cmd_deposit(relpub_session* s, char** out) { return run(s, "deposit", out); }
relpub_status relpub_cmd_sync(relpub_session* s, char** out) { return run(s, "sync", out); }
relpub_status relpub_cmd_release(relpub_session* s, char** out) { return run(s, "release", out); }

void relpub_string_free(char* text) { std::free(text); }

}  // extern "C"
