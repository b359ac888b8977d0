// ssdbias/manifest.hpp

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

#ifndef SSDBIAS_MANIFEST_HPP_
#define SSDBIAS_MANIFEST_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace ssdbias {

enum class Label { kBonafide, kSpoof };
enum class Gender { kMale, kFemale, kOther, kUnknown };
enum class AgeGroup {
  kTeens, k20s, k30s, k40s, k50s, k60s, k70s, k80s, k90s, kUnknown
};
enum class Accent { kUs, kCa, kUk, kAu, kSa, kOther, kUnknown };
enum class Fluency { kFluent, kStuttering, kUnknown };

const char* to_string(Label v);
const char* to_string(Gender v);
const char* to_string(AgeGroup v);
const char* to_string(Accent v);
const char* to_string(Fluency v);

Label parse_label(const std::string& s);           // strict: throws on junk
Gender parse_gender(const std::string& s);         // lenient: junk -> kOther
AgeGroup parse_age_group(const std::string& s);    // lenient: junk -> kUnknown
Accent parse_accent_tag(const std::string& s);     // strict canonical tags
Fluency parse_fluency(const std::string& s);

// One audited utterance.  Demographics degrade to the unknown value rather
// than dropping the entry; filtering happens at study time.
struct ManifestEntry {
  std::string utt_id;
  std::string path;  // optional; empty when the manifest is score-only
  Label label = Label::kBonafide;
  Gender gender = Gender::kUnknown;
  AgeGroup age_group = AgeGroup::kUnknown;
  Accent accent = Accent::kUnknown;
  Fluency fluency = Fluency::kUnknown;
  bool validated = false;
};

// Free-text accent labels -> canonical tags.  Ships as an editable data file
// (data/accent_map.tsv); unmapped non-empty labels become kOther.
struct AccentMap {
  std::map<std::string, Accent> table;

  static AccentMap defaults();
  static AccentMap from_file(const std::string& path);
  Accent canonicalize(const std::string& raw) const;
};

// Counts of every degradation applied while loading, keyed by reason.
struct LoadReport {
  std::size_t entries = 0;
  std::map<std::string, std::size_t> degraded;

  void count(const std::string& reason) { ++degraded[reason]; }
  std::string summary() const;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::unordered_map<std::string, std::size_t> index_by_id;
  // Scores carried inline by native_csv manifests (column `score`).
  std::unordered_map<std::string, double> inline_scores;
  bool has_scores = false;
  LoadReport report;

  const ManifestEntry* find(const std::string& utt_id) const;
};

enum class ManifestFormat { kCvcTsv, kAsvspoofProtocol, kNativeCsv };

ManifestFormat parse_manifest_format(const std::string& s);

// cvc_tsv: tab-separated with header (client_id, path, age, gender, accents,
// optional votes), label fixed to bonafide; asvspoof_protocol: 5-token lines
// `SPEAKER UTT - SYSTEM KEY`; native_csv: header
// `utt_id,label,gender,age_group,accent,fluency[,score]`.
Manifest load_manifest(const std::string& path, ManifestFormat format,
                       const AccentMap& accents = AccentMap::defaults());

// Two-column `utt_id score` (whitespace- or comma-separated).  Duplicate ids
// are an error naming the id and line number.
std::unordered_map<std::string, double> load_scores(const std::string& path);

enum class ScoreOrientation { kHigherSynthetic, kHigherBonafide };

// Manifest entry + score, in the engine's fixed orientation.
struct ScoreRecord {
  std::string utt_id;
  double score = 0.0;  // higher => synthetic, always
  Label label = Label::kBonafide;
  Gender gender = Gender::kUnknown;
  AgeGroup age_group = AgeGroup::kUnknown;
  Accent accent = Accent::kUnknown;
  Fluency fluency = Fluency::kUnknown;
};

// Attaches scores to every manifest entry, negating when the source orients
// higher => bonafide.  Missing ids are reported in one aggregate error.
std::vector<ScoreRecord> join_scores(
    const Manifest& manifest,
    const std::unordered_map<std::string, double>& scores,
    ScoreOrientation orientation);

// Canonical CSV emission (`utt_id,label,...,score` when scores present).
void write_native_csv(const std::string& path,
                      const std::vector<ManifestEntry>& entries,
                      const std::unordered_map<std::string, double>* scores);

}  // namespace ssdbias

#endif  // SSDBIAS_MANIFEST_HPP_
