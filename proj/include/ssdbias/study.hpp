// ssdbias/study.hpp

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

#ifndef SSDBIAS_STUDY_HPP_
#define SSDBIAS_STUDY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssdbias/manifest.hpp"
#include "ssdbias/metrics.hpp"

namespace ssdbias {

enum class StudyKind { kGender, kAge, kAccent, kStuttering };

const char* study_kind_name(StudyKind kind);
StudyKind parse_study_kind(const std::string& s);

// One demographic cell.  Absent optionals are unconstrained; an `unknown`
// filter value matches only records degraded to unknown.  samples = 0 means
// "the whole eligible pool" (used by the stuttering study).
struct SetSpec {
  std::string name;
  std::optional<Gender> gender;
  std::optional<AgeGroup> age_group;
  std::optional<Accent> accent;
  std::optional<Fluency> fluency;
  std::size_t samples = 0;
  // Delta is taken within sets sharing this label (gender studies pair M/F
  // per age group; age/accent studies put every set in one group).
  std::string delta_group;
};

struct StudySpec {
  StudyKind kind = StudyKind::kGender;
  std::vector<SetSpec> sets;
  int repeats = 5;
  std::uint64_t base_seed = 0;
};

// Canonical study shapes with the published per-set sample sizes (gender:
// 31,000 / 15,000 / 16,000 by age pair; age: 8,900; accent: 4,900 female /
// 8,100 male; stuttering: whole pool, 1 repeat).
StudySpec default_study_spec(StudyKind kind);

// Key-value config round-trip (documented schema; see README).
StudySpec load_study_spec(const std::string& path);
void save_study_spec(const std::string& path, const StudySpec& spec);

// One sampled evaluation cell: bona fide draw for (set, repeat) plus the
// study-wide synthetic class.
struct EvaluationSet {
  std::string set_name;
  int repeat_index = 0;
  std::vector<std::string> bona_ids;
};

struct StudySets {
  std::vector<EvaluationSet> sets;         // repeats * |spec.sets| entries
  std::vector<std::string> synthetic_ids;  // identical for every set
};

// Samples without replacement.  Repeat r draws with a sub-seed derived from
// base_seed + r and the set name, so results depend on neither set order nor
// other sets.  Undersized pools are a hard error naming cell and shortfall.
StudySets build_sets(const Manifest& manifest, const StudySpec& spec,
                     std::uint64_t base_seed);

struct MetricQuad {
  double fpr1 = 0.0;  // at t_eer
  double fpr2 = 0.0;  // at t_fpr (8% FPR operating point)
  double fpr3 = 0.0;  // at t_fnr (8% FNR operating point)
  double eer = 0.0;
  double operator[](int i) const;
};

// FPRs of the set's bona fide scores at the three calibrated thresholds plus
// the set-local EER against the synthetic class.
MetricQuad evaluate_set(const std::vector<double>& bona_scores,
                        const std::vector<double>& spoof_scores,
                        const ThresholdSet& thresholds);

struct SetResult {
  std::string set_name;
  std::string delta_group;
  std::size_t samples = 0;
  std::vector<MetricQuad> per_repeat;
  MetricQuad mean;
  MetricQuad sd;     // population SD over repeats
  MetricQuad delta;  // of means, within delta_group
};

struct StudyResult {
  StudyKind kind = StudyKind::kGender;
  std::string detector_id;
  std::uint64_t base_seed = 0;
  int repeats = 0;
  ThresholdSet thresholds;
  std::size_t synthetic_count = 0;
  std::vector<SetResult> sets;
};

// build_sets + per-set evaluation + aggregation.  Records must cover every
// sampled id; the synthetic class is the records' whole spoof population.
StudyResult run_study(const std::vector<ScoreRecord>& records,
                      const StudySpec& spec, const ThresholdSet& thresholds,
                      const std::string& detector_id = "");

// Whole stuttering pool vs the same synthetic class, absolute metrics.
MetricQuad stuttering_study(const std::vector<ScoreRecord>& records,
                            const ThresholdSet& thresholds);

// Structured result file (JSON) and flat per-set CSV export.
void save_study_result(const std::string& path, const StudyResult& result);
StudyResult load_study_result(const std::string& path);
std::string study_result_csv(const StudyResult& result);

}  // namespace ssdbias

#endif  // SSDBIAS_STUDY_HPP_
