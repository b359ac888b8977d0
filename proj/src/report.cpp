// ssdbias/report.cpp

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

#include "ssdbias/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ssdbias/error.hpp"

namespace ssdbias {

namespace {

const char* kMetricNames[4] = {"FPR1", "FPR2", "FPR3", "EER"};

}  // namespace

std::string format_percent(double fraction) {
  if (!std::isfinite(fraction)) {
    throw Error(Errc::kBadConfig, "cannot format a non-finite metric");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string render_bias_table(const std::vector<StudyResult>& per_detector,
                              TableFormat format, TableMode mode) {
  if (per_detector.empty()) {
    throw Error(Errc::kEmptyInput, "no study results to tabulate");
  }
  const StudyResult& first = per_detector.front();
  const std::size_t n_sets = first.sets.size();
  if (n_sets == 0) {
    throw Error(Errc::kEmptyInput, "study result has no sets");
  }
  for (const StudyResult& r : per_detector) {
    if (r.sets.size() != n_sets) {
      throw Error(Errc::kBadConfig, "detectors disagree on the set list");
    }
    for (std::size_t i = 0; i < n_sets; ++i) {
      if (r.sets[i].set_name != first.sets[i].set_name) {
        throw Error(Errc::kBadConfig, "detectors disagree on the set list");
      }
    }
  }

  std::ostringstream out;
  if (format == TableFormat::kMarkdown) {
    out << "| detector | metric |";
    for (const SetResult& sr : first.sets) out << ' ' << sr.set_name << " |";
    out << "\n|---|---|";
    for (std::size_t i = 0; i < n_sets; ++i) out << "---|";
    out << '\n';
  } else {
    out << "detector,metric,set,value,spread,most_biased\n";
  }

  for (const StudyResult& r : per_detector) {
    for (int metric = 0; metric < 4; ++metric) {
      // The most-biased set maximizes delta within the row; display ties
      // (identical rounded delta) are flagged jointly.
      double max_delta = r.sets[0].delta[metric];
      for (const SetResult& sr : r.sets) {
        max_delta = std::max(max_delta, sr.delta[metric]);
      }
      const std::string max_str = format_percent(max_delta);
      if (format == TableFormat::kMarkdown) {
        out << "| " << r.detector_id << " | " << kMetricNames[metric] << " |";
      }
      for (const SetResult& sr : r.sets) {
        const std::string value = format_percent(
            mode == TableMode::kDelta ? sr.delta[metric] : sr.mean[metric]);
        const std::string spread = format_percent(sr.sd[metric]);
        const bool biased = format_percent(sr.delta[metric]) == max_str;
        if (format == TableFormat::kMarkdown) {
          const std::string cell = value + " +- " + spread;
          if (biased) {
            out << " **" << cell << "** |";
          } else {
            out << ' ' << cell << " |";
          }
        } else {
          out << r.detector_id << ',' << kMetricNames[metric] << ','
              << sr.set_name << ',' << value << ',' << spread << ','
              << (biased ? 1 : 0) << '\n';
        }
      }
      if (format == TableFormat::kMarkdown) out << '\n';
    }
  }
  return out.str();
}

std::string summarize_fluency(const std::vector<FluencyResult>& results) {
  if (results.empty()) {
    throw Error(Errc::kEmptyInput, "no fluency results to summarize");
  }
  std::ostringstream out;
  out << "condition,metric,value\n";
  const double n = static_cast<double>(results.size());
  for (int condition = 0; condition < 2; ++condition) {
    for (int metric = 0; metric < 4; ++metric) {
      double mean = 0.0;
      for (const FluencyResult& r : results) {
        const MetricQuad& q = condition == 0 ? r.fluent : r.stuttering;
        if (!std::isfinite(q[metric])) {
          throw Error(Errc::kBadConfig,
                      "non-finite metric for detector '" + r.detector_id + "'");
        }
        mean += q[metric];
      }
      out << (condition == 0 ? "fluent" : "stuttering") << ','
          << kMetricNames[metric] << ',' << format_percent(mean / n) << '\n';
    }
  }
  return out.str();
}

}  // namespace ssdbias
