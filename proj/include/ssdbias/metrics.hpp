// ssdbias/metrics.hpp

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

#ifndef SSDBIAS_METRICS_HPP_
#define SSDBIAS_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

namespace ssdbias {

// Detector scores split by ground truth.  Orientation is fixed engine-wide:
// higher score => more synthetic-leaning, and a classification at threshold t
// flags score >= t as synthetic (closed on the synthetic side).
struct ScoreSet {
  std::vector<double> bona;
  std::vector<double> spoof;
};

struct EerResult {
  double eer = 0.0;       // fraction in [0, 0.5] + tie slack, not a percent
  double threshold = 0.0;
};

// Candidate thresholds: midpoints between consecutive distinct pooled scores,
// plus -inf and +inf.  Shared by compute_eer and calibrate.
std::vector<double> candidate_thresholds(const ScoreSet& scores);

// |{bona >= t}| / n — fraction of genuine utterances flagged synthetic.
double fpr_at_threshold(std::span<const double> bona_scores, double t);

// |{spoof < t}| / n — fraction of synthetic utterances missed.
double fnr_at_threshold(std::span<const double> spoof_scores, double t);

// Discrete sweep over candidate_thresholds: EER = (FPR+FNR)/2 at the
// candidate minimizing |FPR-FNR|, ties broken toward the lower threshold.
EerResult compute_eer(const ScoreSet& scores);

// Operating points calibrated against a fixed reference score set.  The three
// thresholds drive FPR1 (EER balance), FPR2 (fpr_target), FPR3 (fnr_target).
struct ThresholdSet {
  double t_eer = 0.0;
  double t_fpr = 0.0;
  double t_fnr = 0.0;
  double fpr_target = 0.08;
  double fnr_target = 0.08;
  std::string reference_id;
};

// t_eer from compute_eer; t_fpr = smallest candidate with FPR <= fpr_target;
// t_fnr = largest candidate with FNR <= fnr_target.  Targets are fractions
// (0.08 = 8%).  Throws Errc::kBadConfig if no candidate attains a target.
ThresholdSet calibrate(const ScoreSet& reference, double fpr_target = 0.08,
                       double fnr_target = 0.08,
                       const std::string& reference_id = "");

// Bias measure: each value minus the group minimum.  All outputs >= 0 and at
// least one is exactly 0.
std::vector<double> delta(std::span<const double> values);

// JSON persistence; infinite thresholds serialize as the strings "inf"/"-inf".
void save_thresholds(const std::string& path, const ThresholdSet& thresholds);
ThresholdSet load_thresholds(const std::string& path);

}  // namespace ssdbias

#endif  // SSDBIAS_METRICS_HPP_
