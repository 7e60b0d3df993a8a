#include "pipeline/run_report.hpp"

#include <json.hpp>

#include <sstream>

namespace relpub::pipeline {

using nlohmann::ordered_json;

std::string render_text(const RunReport& report) {
  std::ostringstream out;
  out << "relpub " << report.command;
  if (report.dry_run) out << " (dry run)";
  out << ": ";
  if (report.exit_code == 0)
    out << "ok";
  else
    out << "failed (exit " << report.exit_code << ")";
  out << "\n";

  if (!report.findings.empty()) {
    std::size_t errors = 0;
    std::size_t warnings = 0;
    for (const auto& f : report.findings)
      (f.severity == Severity::error ? errors : warnings)++;
    out << "findings: " << errors << " error(s), " << warnings << " warning(s)\n";
    for (const auto& f : report.findings)
      out << "  " << to_string(f.severity) << "  " << f.path << ": " << f.message << "\n";
  }

  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const auto& step = report.steps[i];
    out << "[" << (i + 1) << "/" << report.steps.size() << "] " << step.name << ": "
        << step.status;
    if (!step.detail.empty()) out << " (" << step.detail << ")";
    out << "\n";
  }

  for (const auto& [key, value] : report.outputs) out << key << ": " << value << "\n";
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  if (!report.error_message.empty())
    out << "error: " << report.error_kind << ": " << report.error_message << "\n";
  return out.str();
}

std::string render_json(const RunReport& report) {
  ordered_json j;
  j["command"] = report.command;
  j["exit_code"] = report.exit_code;
  j["dry_run"] = report.dry_run;

  j["findings"] = ordered_json::array();
  for (const auto& f : report.findings)
    j["findings"].push_back(
        {{"severity", to_string(f.severity)}, {"path", f.path}, {"message", f.message}});

  j["steps"] = ordered_json::array();
  for (const auto& step : report.steps)
    j["steps"].push_back({{"name", step.name}, {"status", step.status}, {"detail", step.detail}});

  j["outputs"] = ordered_json::object();
  for (const auto& [key, value] : report.outputs) j["outputs"][key] = value;

  j["notes"] = report.notes;

  if (!report.error_message.empty())
    j["error"] = {{"kind", report.error_kind}, {"message", report.error_message}};

  return j.dump(2) + "\n";
}

std::string render(const RunReport& report, const std::string& format) {
  return format == "json" ? render_json(report) : render_text(report);
}

}  // namespace relpub::pipeline
