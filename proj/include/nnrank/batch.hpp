#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nnrank/applications.hpp"
#include "nnrank/generators.hpp"

namespace nnrank {

enum class BatchTask { kCopositivity, kApprox };

struct BatchOptions {
  GeneratorSpec spec;
  int rep = 1;
  std::uint64_t seed = 0;
  // 0 selects the hardware concurrency.
  int workers = 0;
  BatchTask task = BatchTask::kCopositivity;
  PipelineOptions pipeline;
};

struct BatchRow {
  int index = 0;
  double seconds = 0.0;
  double f_dnn = 0.0;
  double f_app = 0.0;
  // Verdict for copositivity runs, "tight"/"not_tight" for approximations.
  std::string outcome;
  SolveStatus status = SolveStatus::kMaxIters;
  bool success = false;  // copositive, or tight
};

struct Stats {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

Stats summarize_values(const std::vector<double>& v);

struct BatchSummary {
  std::vector<BatchRow> rows;  // ordered by instance index
  Stats seconds;
  Stats f_dnn;
  // Fraction of successful instances.
  double prob = 0.0;
};

// Instance k uses the random stream derived from (seed, k), so the summary is
// independent of scheduling and worker count.
BatchSummary run_batch(const BatchOptions& opts);

}  // namespace nnrank
