// ssdbias/study.cpp

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

#include "ssdbias/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "ssdbias/error.hpp"
#include "ssdbias/rng.hpp"
#include "ssdbias/serialize.hpp"

namespace ssdbias {

const char* study_kind_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::kGender: return "gender";
    case StudyKind::kAge: return "age";
    case StudyKind::kAccent: return "accent";
    case StudyKind::kStuttering: return "stuttering";
  }
  return "unknown";
}

StudyKind parse_study_kind(const std::string& s) {
  if (s == "gender") return StudyKind::kGender;
  if (s == "age") return StudyKind::kAge;
  if (s == "accent") return StudyKind::kAccent;
  if (s == "stuttering") return StudyKind::kStuttering;
  throw Error(Errc::kBadConfig, "unknown study kind: " + s);
}

double MetricQuad::operator[](int i) const {
  switch (i) {
    case 0: return fpr1;
    case 1: return fpr2;
    case 2: return fpr3;
    case 3: return eer;
  }
  throw Error(Errc::kBadConfig, "metric index out of range");
}

namespace {

double& quad_ref(MetricQuad& q, int i) {
  switch (i) {
    case 0: return q.fpr1;
    case 1: return q.fpr2;
    case 2: return q.fpr3;
    default: return q.eer;
  }
}

const char* kMetricNames[4] = {"FPR1", "FPR2", "FPR3", "EER"};

SetSpec make_set(std::string name, std::optional<Gender> g,
                 std::optional<AgeGroup> a, std::optional<Accent> ac,
                 std::size_t samples, std::string delta_group) {
  SetSpec s;
  s.name = std::move(name);
  s.gender = g;
  s.age_group = a;
  s.accent = ac;
  s.samples = samples;
  s.delta_group = std::move(delta_group);
  return s;
}

}  // namespace

StudySpec default_study_spec(StudyKind kind) {
  StudySpec spec;
  spec.kind = kind;
  spec.repeats = 5;
  switch (kind) {
    case StudyKind::kGender:
      // Male/female pairs for three age groups of US-accent speech; delta is
      // taken within each pair.
      spec.sets = {
          make_set("US-20s-M", Gender::kMale, AgeGroup::k20s, Accent::kUs, 31000, "20s"),
          make_set("US-20s-F", Gender::kFemale, AgeGroup::k20s, Accent::kUs, 31000, "20s"),
          make_set("US-30s-M", Gender::kMale, AgeGroup::k30s, Accent::kUs, 15000, "30s"),
          make_set("US-30s-F", Gender::kFemale, AgeGroup::k30s, Accent::kUs, 15000, "30s"),
          make_set("US-60s-M", Gender::kMale, AgeGroup::k60s, Accent::kUs, 16000, "60s"),
          make_set("US-60s-F", Gender::kFemale, AgeGroup::k60s, Accent::kUs, 16000, "60s"),
      };
      break;
    case StudyKind::kAge:
      // Six age groups, one gender (male template; edit for female), US accent.
      spec.sets = {
          make_set("US-teens-M", Gender::kMale, AgeGroup::kTeens, Accent::kUs, 8900, "age"),
          make_set("US-20s-M", Gender::kMale, AgeGroup::k20s, Accent::kUs, 8900, "age"),
          make_set("US-30s-M", Gender::kMale, AgeGroup::k30s, Accent::kUs, 8900, "age"),
          make_set("US-40s-M", Gender::kMale, AgeGroup::k40s, Accent::kUs, 8900, "age"),
          make_set("US-50s-M", Gender::kMale, AgeGroup::k50s, Accent::kUs, 8900, "age"),
          make_set("US-60s-M", Gender::kMale, AgeGroup::k60s, Accent::kUs, 8900, "age"),
      };
      break;
    case StudyKind::kAccent:
      // Five accents, one gender (female template; male uses 8,100 per set),
      // ages pooled.
      spec.sets = {
          make_set("US-F", Gender::kFemale, std::nullopt, Accent::kUs, 4900, "accent"),
          make_set("CA-F", Gender::kFemale, std::nullopt, Accent::kCa, 4900, "accent"),
          make_set("UK-F", Gender::kFemale, std::nullopt, Accent::kUk, 4900, "accent"),
          make_set("AU-F", Gender::kFemale, std::nullopt, Accent::kAu, 4900, "accent"),
          make_set("SA-F", Gender::kFemale, std::nullopt, Accent::kSa, 4900, "accent"),
      };
      break;
    case StudyKind::kStuttering: {
      spec.repeats = 1;  // whole pool, nothing to resample
      SetSpec s = make_set("stuttering", std::nullopt, std::nullopt, std::nullopt,
                           0, "fluency");
      s.fluency = Fluency::kStuttering;
      spec.sets = {s};
      break;
    }
  }
  return spec;
}

namespace {

// Strict config-value parsers: filters accept the canonical vocabulary or
// "any" (= unconstrained); anything else is a config error.
std::optional<Gender> filter_gender(const std::string& v, const std::string& ctx) {
  if (v == "any") return std::nullopt;
  for (Gender g : {Gender::kMale, Gender::kFemale, Gender::kOther, Gender::kUnknown}) {
    if (v == to_string(g)) return g;
  }
  throw Error(Errc::kBadConfig, ctx + ": bad gender '" + v + "'");
}

std::optional<AgeGroup> filter_age(const std::string& v, const std::string& ctx) {
  if (v == "any") return std::nullopt;
  for (int i = 0; i <= static_cast<int>(AgeGroup::kUnknown); ++i) {
    const AgeGroup a = static_cast<AgeGroup>(i);
    if (v == to_string(a)) return a;
  }
  throw Error(Errc::kBadConfig, ctx + ": bad age_group '" + v + "'");
}

std::optional<Accent> filter_accent(const std::string& v, const std::string& ctx) {
  if (v == "any") return std::nullopt;
  try {
    return parse_accent_tag(v);
  } catch (const Error&) {
    throw Error(Errc::kBadConfig, ctx + ": bad accent '" + v + "'");
  }
}

std::optional<Fluency> filter_fluency(const std::string& v, const std::string& ctx) {
  if (v == "any") return std::nullopt;
  for (Fluency f : {Fluency::kFluent, Fluency::kStuttering, Fluency::kUnknown}) {
    if (v == to_string(f)) return f;
  }
  throw Error(Errc::kBadConfig, ctx + ": bad fluency '" + v + "'");
}

std::string trim_ws(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

StudySpec load_study_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open study spec: " + path);
  StudySpec spec;
  spec.sets.clear();
  SetSpec* current = nullptr;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim_ws(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string ctx = path + " line " + std::to_string(line_no);
    if (t == "[set]") {
      spec.sets.emplace_back();
      current = &spec.sets.back();
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::kBadFormat, ctx + ": want 'key = value'");
    }
    const std::string key = trim_ws(t.substr(0, eq));
    const std::string value = trim_ws(t.substr(eq + 1));
    if (current == nullptr) {
      if (key == "kind") {
        spec.kind = parse_study_kind(value);
      } else if (key == "repeats") {
        spec.repeats = std::stoi(value);
      } else if (key == "base_seed") {
        spec.base_seed = std::stoull(value);
      } else {
        throw Error(Errc::kBadFormat, ctx + ": unknown study key '" + key + "'");
      }
    } else {
      if (key == "name") {
        current->name = value;
      } else if (key == "gender") {
        current->gender = filter_gender(value, ctx);
      } else if (key == "age_group") {
        current->age_group = filter_age(value, ctx);
      } else if (key == "accent") {
        current->accent = filter_accent(value, ctx);
      } else if (key == "fluency") {
        current->fluency = filter_fluency(value, ctx);
      } else if (key == "samples") {
        current->samples = static_cast<std::size_t>(std::stoull(value));
      } else if (key == "delta_group") {
        current->delta_group = value;
      } else {
        throw Error(Errc::kBadFormat, ctx + ": unknown set key '" + key + "'");
      }
    }
  }
  if (spec.sets.empty()) {
    throw Error(Errc::kBadFormat, path + ": study spec has no [set] blocks");
  }
  if (spec.repeats < 1) {
    throw Error(Errc::kBadConfig, path + ": repeats must be >= 1");
  }
  for (const SetSpec& s : spec.sets) {
    if (s.name.empty()) {
      throw Error(Errc::kBadConfig, path + ": every set needs a name");
    }
  }
  return spec;
}

void save_study_spec(const std::string& path, const StudySpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot create study spec: " + path);
  out << "kind = " << study_kind_name(spec.kind) << '\n'
      << "repeats = " << spec.repeats << '\n'
      << "base_seed = " << spec.base_seed << '\n';
  for (const SetSpec& s : spec.sets) {
    out << "\n[set]\nname = " << s.name << '\n';
    out << "gender = " << (s.gender ? to_string(*s.gender) : "any") << '\n';
    out << "age_group = " << (s.age_group ? to_string(*s.age_group) : "any") << '\n';
    out << "accent = " << (s.accent ? to_string(*s.accent) : "any") << '\n';
    out << "fluency = " << (s.fluency ? to_string(*s.fluency) : "any") << '\n';
    out << "samples = " << s.samples << '\n';
    out << "delta_group = " << s.delta_group << '\n';
  }
  if (!out) throw Error(Errc::kIoError, "write failed: " + path);
}

namespace {

bool matches(const ManifestEntry& e, const SetSpec& s) {
  if (e.label != Label::kBonafide) return false;
  if (s.gender && e.gender != *s.gender) return false;
  if (s.age_group && e.age_group != *s.age_group) return false;
  if (s.accent && e.accent != *s.accent) return false;
  if (s.fluency && e.fluency != *s.fluency) return false;
  return true;
}

}  // namespace

StudySets build_sets(const Manifest& manifest, const StudySpec& spec,
                     std::uint64_t base_seed) {
  if (spec.repeats < 1) {
    throw Error(Errc::kBadConfig, "study needs at least one repeat");
  }
  StudySets out;
  for (const ManifestEntry& e : manifest.entries) {
    if (e.label == Label::kSpoof) out.synthetic_ids.push_back(e.utt_id);
  }

  for (const SetSpec& s : spec.sets) {
    std::vector<std::string> pool;
    for (const ManifestEntry& e : manifest.entries) {
      if (matches(e, s)) pool.push_back(e.utt_id);
    }
    const std::size_t want = s.samples == 0 ? pool.size() : s.samples;
    if (pool.size() < want || pool.empty()) {
      throw Error(Errc::kUndersizedPool,
                  "set '" + s.name + "': pool has " + std::to_string(pool.size()) +
                      " eligible bona fide entries, need " + std::to_string(want) +
                      " (short by " + std::to_string(want - pool.size()) + ")");
    }
    for (int r = 0; r < spec.repeats; ++r) {
      EvaluationSet es;
      es.set_name = s.name;
      es.repeat_index = r;
      if (want == pool.size()) {
        es.bona_ids = pool;  // forced draw: the whole pool, in manifest order
      } else {
        // Partial Fisher-Yates over a fresh copy; the sub-seed mixes the
        // pinned per-repeat seed (base_seed + r) with the set name so draws
        // are independent of set order.
        std::vector<std::string> shuffled = pool;
        Rng rng(mix_seed((base_seed + static_cast<std::uint64_t>(r)) ^
                         hash_name(s.name)));
        for (std::size_t i = 0; i < want; ++i) {
          const std::size_t j =
              i + static_cast<std::size_t>(rng.bounded(shuffled.size() - i));
          std::swap(shuffled[i], shuffled[j]);
        }
        shuffled.resize(want);
        es.bona_ids = std::move(shuffled);
      }
      out.sets.push_back(std::move(es));
    }
  }
  return out;
}

MetricQuad evaluate_set(const std::vector<double>& bona_scores,
                        const std::vector<double>& spoof_scores,
                        const ThresholdSet& thresholds) {
  MetricQuad q;
  q.fpr1 = fpr_at_threshold(bona_scores, thresholds.t_eer);
  q.fpr2 = fpr_at_threshold(bona_scores, thresholds.t_fpr);
  q.fpr3 = fpr_at_threshold(bona_scores, thresholds.t_fnr);
  ScoreSet set;
  set.bona = bona_scores;
  set.spoof = spoof_scores;
  q.eer = compute_eer(set).eer;
  return q;
}

StudyResult run_study(const std::vector<ScoreRecord>& records,
                      const StudySpec& spec, const ThresholdSet& thresholds,
                      const std::string& detector_id) {
  // Records double as the manifest: same demographics, same uniqueness rule.
  Manifest view;
  std::unordered_map<std::string, double> score_of;
  for (const ScoreRecord& r : records) {
    ManifestEntry e;
    e.utt_id = r.utt_id;
    e.label = r.label;
    e.gender = r.gender;
    e.age_group = r.age_group;
    e.accent = r.accent;
    e.fluency = r.fluency;
    e.validated = true;
    if (view.index_by_id.count(e.utt_id) != 0) {
      throw Error(Errc::kDuplicateId, "duplicate record id '" + e.utt_id + "'");
    }
    view.index_by_id.emplace(e.utt_id, view.entries.size());
    view.entries.push_back(std::move(e));
    score_of.emplace(r.utt_id, r.score);
  }

  const StudySets sets = build_sets(view, spec, spec.base_seed);
  std::vector<double> spoof_scores;
  spoof_scores.reserve(sets.synthetic_ids.size());
  for (const std::string& id : sets.synthetic_ids) {
    spoof_scores.push_back(score_of.at(id));
  }
  if (spoof_scores.empty()) {
    throw Error(Errc::kEmptyInput, "study records contain no synthetic class");
  }

  StudyResult result;
  result.kind = spec.kind;
  result.detector_id = detector_id;
  result.base_seed = spec.base_seed;
  result.repeats = spec.repeats;
  result.thresholds = thresholds;
  result.synthetic_count = spoof_scores.size();

  std::size_t cursor = 0;  // build_sets emits repeats consecutively per set
  for (const SetSpec& s : spec.sets) {
    SetResult sr;
    sr.set_name = s.name;
    sr.delta_group = s.delta_group;
    for (int r = 0; r < spec.repeats; ++r, ++cursor) {
      const EvaluationSet& es = sets.sets[cursor];
      std::vector<double> bona_scores;
      bona_scores.reserve(es.bona_ids.size());
      for (const std::string& id : es.bona_ids) {
        bona_scores.push_back(score_of.at(id));
      }
      sr.per_repeat.push_back(evaluate_set(bona_scores, spoof_scores, thresholds));
    }
    sr.samples = sets.sets[cursor - 1].bona_ids.size();
    const double n = static_cast<double>(spec.repeats);
    for (int metric = 0; metric < 4; ++metric) {
      double mean = 0.0;
      for (const MetricQuad& q : sr.per_repeat) mean += q[metric];
      mean /= n;
      double var = 0.0;
      for (const MetricQuad& q : sr.per_repeat) {
        var += (q[metric] - mean) * (q[metric] - mean);
      }
      quad_ref(sr.mean, metric) = mean;
      quad_ref(sr.sd, metric) = std::sqrt(var / n);  // population SD
    }
    result.sets.push_back(std::move(sr));
  }

  // Delta of per-set means within each delta group.
  for (int metric = 0; metric < 4; ++metric) {
    std::unordered_map<std::string, double> group_min;
    for (const SetResult& sr : result.sets) {
      const auto it = group_min.find(sr.delta_group);
      if (it == group_min.end() || sr.mean[metric] < it->second) {
        group_min[sr.delta_group] = sr.mean[metric];
      }
    }
    for (SetResult& sr : result.sets) {
      quad_ref(sr.delta, metric) = sr.mean[metric] - group_min.at(sr.delta_group);
    }
  }
  return result;
}

MetricQuad stuttering_study(const std::vector<ScoreRecord>& records,
                            const ThresholdSet& thresholds) {
  std::vector<double> bona, spoof;
  for (const ScoreRecord& r : records) {
    if (r.label == Label::kSpoof) {
      spoof.push_back(r.score);
    } else if (r.fluency == Fluency::kStuttering) {
      bona.push_back(r.score);
    }
  }
  if (bona.empty()) {
    throw Error(Errc::kEmptyInput, "no stuttering bona fide records");
  }
  if (spoof.empty()) {
    throw Error(Errc::kEmptyInput, "no synthetic records");
  }
  return evaluate_set(bona, spoof, thresholds);
}

namespace {

using nlohmann::json;

json quad_to_json(const MetricQuad& q) {
  return json::array({q.fpr1, q.fpr2, q.fpr3, q.eer});
}

MetricQuad quad_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(Errc::kBadFormat, "metric quadruple must have four entries");
  }
  MetricQuad q;
  q.fpr1 = j.at(0).get<double>();
  q.fpr2 = j.at(1).get<double>();
  q.fpr3 = j.at(2).get<double>();
  q.eer = j.at(3).get<double>();
  return q;
}

}  // namespace

void save_study_result(const std::string& path, const StudyResult& result) {
  json sets = json::array();
  for (const SetResult& sr : result.sets) {
    json per_repeat = json::array();
    for (const MetricQuad& q : sr.per_repeat) per_repeat.push_back(quad_to_json(q));
    sets.push_back(json{{"name", sr.set_name},
                        {"delta_group", sr.delta_group},
                        {"samples", sr.samples},
                        {"per_repeat", per_repeat},
                        {"mean", quad_to_json(sr.mean)},
                        {"sd", quad_to_json(sr.sd)},
                        {"delta", quad_to_json(sr.delta)}});
  }
  json j{{"format", "ssdbias-study-result"},
         {"version", 1},
         {"kind", study_kind_name(result.kind)},
         {"detector_id", result.detector_id},
         {"base_seed", result.base_seed},
         {"repeats", result.repeats},
         {"synthetic_count", result.synthetic_count},
         {"thresholds", threshold_set_to_json(result.thresholds)},
         {"sets", sets}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot create result file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::kIoError, "write failed: " + path);
}

StudyResult load_study_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open result file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::kBadFormat, "result file " + path + ": " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "ssdbias-study-result") {
      throw Error(Errc::kBadFormat, "not a study result file: " + path);
    }
    StudyResult result;
    result.kind = parse_study_kind(j.at("kind").get<std::string>());
    result.detector_id = j.value("detector_id", std::string());
    result.base_seed = j.at("base_seed").get<std::uint64_t>();
    result.repeats = j.at("repeats").get<int>();
    result.synthetic_count = j.at("synthetic_count").get<std::size_t>();
    result.thresholds = threshold_set_from_json(j.at("thresholds"));
    for (const json& js : j.at("sets")) {
      SetResult sr;
      sr.set_name = js.at("name").get<std::string>();
      sr.delta_group = js.at("delta_group").get<std::string>();
      sr.samples = js.at("samples").get<std::size_t>();
      for (const json& q : js.at("per_repeat")) {
        sr.per_repeat.push_back(quad_from_json(q));
      }
      sr.mean = quad_from_json(js.at("mean"));
      sr.sd = quad_from_json(js.at("sd"));
      sr.delta = quad_from_json(js.at("delta"));
      result.sets.push_back(std::move(sr));
    }
    return result;
  } catch (const json::exception& e) {
    throw Error(Errc::kBadFormat, "result file " + path + ": " + e.what());
  }
}

std::string study_result_csv(const StudyResult& result) {
  std::ostringstream out;
  out << "set,metric,mean,sd,delta\n";
  char buf[40];
  for (const SetResult& sr : result.sets) {
    for (int metric = 0; metric < 4; ++metric) {
      out << sr.set_name << ',' << kMetricNames[metric];
      for (double v : {sr.mean[metric], sr.sd[metric], sr.delta[metric]}) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace ssdbias
