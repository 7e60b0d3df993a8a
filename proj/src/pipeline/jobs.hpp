#pragma once

#include <string>

#include "pipeline/config.hpp"
#include "pipeline/run_report.hpp"

namespace relpub::pipeline {

RunReport job_validate(const PipelineConfig& config);
RunReport job_datacite(const PipelineConfig& config);
RunReport job_bag(const PipelineConfig& config);
RunReport job_bag_validate(const PipelineConfig& config);
RunReport job_deposit(const PipelineConfig& config);
RunReport job_sync(const PipelineConfig& config);
RunReport job_release(const PipelineConfig& config);

/// Dispatches a subcommand name and converts exceptions into the report's
/// error fields; never throws for job failures.
RunReport run_command(const std::string& command, const PipelineConfig& config);

}  // namespace relpub::pipeline
