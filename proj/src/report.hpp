#pragma once

#include <string>
#include <vector>

#include "runner.hpp"

namespace vqremap {

// Reads every <stem>.meta.json + <stem>.jsonl pair under <results_dir>/runs.
std::vector<RunData> load_runs(const std::string& results_dir);

// Tables 1-2 analog (convergence_diff_<embedding>.csv) and Tables 3-4 analog
// (test_accuracy_<embedding>.csv), columns dataset,approach,metric,value,
// ci_halfwidth, one file per embedding present in the results.
void report(const RunConfig& config);

// anova_<embedding>.csv: per dataset plus the across-dataset average row.
void anova(const RunConfig& config);

// One learning-curve SVG per (dataset, embedding): mean +/- std accuracy
// across seeds, solid validation / dashed training, per approach.
void plot(const RunConfig& config);

} // namespace vqremap
