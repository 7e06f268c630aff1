#pragma once

#include <string>
#include <vector>

#include "awh/awh.hpp"
#include "awh/curve.hpp"
#include "awh/harness.hpp"
#include "awh/ladder.hpp"

namespace awh {

/// Shortest round-trip decimal form, independent of the process locale.
/// Infinities are written as "inf" / "-inf".
std::string format_number(double value);

/// level_index,lambda,log10_prob,prob
std::string curve_csv(const std::vector<CurvePoint>& curve);

/// level_index,lambda,W,target_times_n
std::string histogram_csv(const LevelLadder& ladder, const std::vector<double>& W,
                          const std::vector<double>& target);

/// iteration,level_index,lambda,f,F,W,target_times_n; one block per snapshot.
std::string f_trace_csv(const LevelLadder& ladder, const std::vector<HistogramSnapshot>& snapshots);

/// replicate,seed,p_failure,relative_error,evals
std::string replicates_csv(const ErrorReport& report, double reference);

/// method,replicates,reference,reference_source,mean,rms_relative_error,evals_per_replicate
std::string summary_csv(const std::string& method, const ErrorReport& report, double reference,
                        const std::string& reference_source);

/// Writes `contents` byte for byte; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace awh
