#pragma once

#include <string>

#include "kni/app/config.hpp"
#include "kni/app/report.hpp"

namespace kni::app {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode { kVerdict = 0, kContradiction = 2, kStageFailure = 3 };

struct PipelineResult {
  Report report;
  std::string verdict;  // empty when no verdict could be issued
  int contradictions = 0;
  int exit_code = kStageFailure;
};

/// mechanics -> variational -> reduction -> classify -> monodromy -> verdict.
/// A failing stage is recorded under "degraded" and its dependents are skipped.
PipelineResult run_pipeline(const Config& config);

}  // namespace kni::app
