#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/validation.hpp"

namespace relpub::pipeline {

struct StepResult {
  std::string name;
  std::string status;  // ok | skipped | planned | failed
  std::string detail;
};

/// Result of one CLI/C-API command: findings, pipeline steps, produced
/// outputs and the final exit code (0 ok, 1 validation, 2 I/O, 3 remote,
/// 4 remote-state conflict).
struct RunReport {
  std::string command;
  int exit_code = 0;
  bool dry_run = false;
  std::vector<Finding> findings;
  std::vector<StepResult> steps;
  std::map<std::string, std::string> outputs;
  std::vector<std::string> notes;
  std::string error_kind;
  std::string error_message;

  void fail(int code, const std::string& kind, const std::string& message) {
    exit_code = code;
    error_kind = kind;
    error_message = message;
  }
};

std::string render_text(const RunReport& report);
std::string render_json(const RunReport& report);
std::string render(const RunReport& report, const std::string& format);

}  // namespace relpub::pipeline
