// ssdbias/report.hpp

// Copyright 2026  The ssdbias Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSDBIAS_REPORT_HPP_
#define SSDBIAS_REPORT_HPP_

#include <string>
#include <vector>

#include "ssdbias/study.hpp"

namespace ssdbias {

enum class TableFormat { kMarkdown, kCsv };
enum class TableMode { kDelta, kAbsolute };

// Fixed-point percent with 2 decimals (value is a fraction).
std::string format_percent(double fraction);

// One table over all detectors: rows ordered (detector id, then FPR1, FPR2,
// FPR3, EER), one column per set.  Absolute cells render "mean +- sd"; delta
// cells "delta +- sd" with delta taken within each set's delta group.  The
// most-biased set per (detector, metric) — argmax delta, ties jointly — is
// bold in markdown and flagged in the CSV's most_biased column.  Both formats
// carry identical rounded values cell-for-cell.
// Throws Errc::kBadConfig when detectors disagree on the set list.
std::string render_bias_table(const std::vector<StudyResult>& per_detector,
                              TableFormat format, TableMode mode);

// Per-detector metric quadruples for the two fluency conditions.
struct FluencyResult {
  std::string detector_id;
  MetricQuad fluent;
  MetricQuad stuttering;
};

// Plot-ready CSV `condition,metric,value`: per-metric mean across detectors
// for each condition.  Throws when a detector is present in one condition
// only (enforced by construction of FluencyResult, validated for NaN).
std::string summarize_fluency(const std::vector<FluencyResult>& results);

}  // namespace ssdbias

#endif  // SSDBIAS_REPORT_HPP_
