// ssdbias/metrics.cpp

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

#include "ssdbias/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ssdbias/error.hpp"
#include "ssdbias/serialize.hpp"

namespace ssdbias {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_scores(const ScoreSet& scores) {
  if (scores.bona.empty() || scores.spoof.empty()) {
    throw Error(Errc::kEmptyInput, "both score classes must be non-empty");
  }
  for (double s : scores.bona) {
    if (!std::isfinite(s)) throw Error(Errc::kBadConfig, "non-finite bona score");
  }
  for (double s : scores.spoof) {
    if (!std::isfinite(s)) throw Error(Errc::kBadConfig, "non-finite spoof score");
  }
}

// Fraction of `sorted` that is >= t, by binary search.
double frac_at_least(const std::vector<double>& sorted, double t) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

// Fraction of `sorted` that is < t.
double frac_below(const std::vector<double>& sorted, double t) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

}  // namespace

std::vector<double> candidate_thresholds(const ScoreSet& scores) {
  check_scores(scores);
  std::vector<double> pooled;
  pooled.reserve(scores.bona.size() + scores.spoof.size());
  pooled.insert(pooled.end(), scores.bona.begin(), scores.bona.end());
  pooled.insert(pooled.end(), scores.spoof.begin(), scores.spoof.end());
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  std::vector<double> candidates;
  candidates.reserve(pooled.size() + 1);
  candidates.push_back(-kInf);
  for (std::size_t i = 0; i + 1 < pooled.size(); ++i) {
    candidates.push_back((pooled[i] + pooled[i + 1]) / 2.0);
  }
  candidates.push_back(kInf);
  return candidates;
}

double fpr_at_threshold(std::span<const double> bona_scores, double t) {
  if (bona_scores.empty()) {
    throw Error(Errc::kEmptyInput, "fpr over an empty score list");
  }
  std::size_t flagged = 0;
  for (double s : bona_scores) {
    if (s >= t) ++flagged;
  }
  return static_cast<double>(flagged) / static_cast<double>(bona_scores.size());
}

double fnr_at_threshold(std::span<const double> spoof_scores, double t) {
  if (spoof_scores.empty()) {
    throw Error(Errc::kEmptyInput, "fnr over an empty score list");
  }
  std::size_t missed = 0;
  for (double s : spoof_scores) {
    if (s < t) ++missed;
  }
  return static_cast<double>(missed) / static_cast<double>(spoof_scores.size());
}

EerResult compute_eer(const ScoreSet& scores) {
  const std::vector<double> candidates = candidate_thresholds(scores);
  std::vector<double> bona_sorted(scores.bona);
  std::vector<double> spoof_sorted(scores.spoof);
  std::sort(bona_sorted.begin(), bona_sorted.end());
  std::sort(spoof_sorted.begin(), spoof_sorted.end());

  EerResult best;
  double best_gap = kInf;
  for (double t : candidates) {
    const double fpr = frac_at_least(bona_sorted, t);
    const double fnr = frac_below(spoof_sorted, t);
    const double gap = std::abs(fpr - fnr);
    // Strict '<' keeps the first (lowest) threshold among tied candidates.
    if (gap < best_gap) {
      best_gap = gap;
      best.eer = (fpr + fnr) / 2.0;
      best.threshold = t;
    }
  }
  return best;
}

ThresholdSet calibrate(const ScoreSet& reference, double fpr_target,
                       double fnr_target, const std::string& reference_id) {
  for (double target : {fpr_target, fnr_target}) {
    if (!(target >= 0.0 && target <= 1.0)) {  // rejects NaN too
      throw Error(Errc::kBadConfig, "rate targets are fractions in [0, 1]");
    }
  }
  const std::vector<double> candidates = candidate_thresholds(reference);
  std::vector<double> bona_sorted(reference.bona);
  std::vector<double> spoof_sorted(reference.spoof);
  std::sort(bona_sorted.begin(), bona_sorted.end());
  std::sort(spoof_sorted.begin(), spoof_sorted.end());

  ThresholdSet out;
  out.fpr_target = fpr_target;
  out.fnr_target = fnr_target;
  out.reference_id = reference_id;
  out.t_eer = compute_eer(reference).threshold;

  bool found_fpr = false;
  for (double t : candidates) {  // ascending: first hit is the smallest
    if (frac_at_least(bona_sorted, t) <= fpr_target) {
      out.t_fpr = t;
      found_fpr = true;
      break;
    }
  }
  bool found_fnr = false;
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    if (frac_below(spoof_sorted, *it) <= fnr_target) {  // descending: largest
      out.t_fnr = *it;
      found_fnr = true;
      break;
    }
  }
  if (!found_fpr) {
    throw Error(Errc::kBadConfig, "fpr target unattainable on this reference");
  }
  if (!found_fnr) {
    throw Error(Errc::kBadConfig, "fnr target unattainable on this reference");
  }
  return out;
}

std::vector<double> delta(std::span<const double> values) {
  if (values.empty()) {
    throw Error(Errc::kEmptyInput, "delta over an empty group");
  }
  const double lo = *std::min_element(values.begin(), values.end());
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] - lo;
  return out;
}

using nlohmann::json;

json json_from_maybe_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double maybe_inf_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw Error(Errc::kBadFormat, "bad numeric literal: " + s);
  }
  return j.get<double>();
}

json threshold_set_to_json(const ThresholdSet& t) {
  return json{{"t_eer", json_from_maybe_inf(t.t_eer)},
              {"t_fpr", json_from_maybe_inf(t.t_fpr)},
              {"t_fnr", json_from_maybe_inf(t.t_fnr)},
              {"fpr_target", t.fpr_target},
              {"fnr_target", t.fnr_target},
              {"reference_id", t.reference_id}};
}

ThresholdSet threshold_set_from_json(const json& j) {
  ThresholdSet out;
  out.t_eer = maybe_inf_from_json(j.at("t_eer"));
  out.t_fpr = maybe_inf_from_json(j.at("t_fpr"));
  out.t_fnr = maybe_inf_from_json(j.at("t_fnr"));
  out.fpr_target = j.at("fpr_target").get<double>();
  out.fnr_target = j.at("fnr_target").get<double>();
  out.reference_id = j.value("reference_id", std::string());
  return out;
}

void save_thresholds(const std::string& path, const ThresholdSet& thresholds) {
  json j = threshold_set_to_json(thresholds);
  j["format"] = "ssdbias-thresholds";
  j["version"] = 1;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::kIoError, "cannot create threshold file: " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw Error(Errc::kIoError, "write failed: " + path);
  }
}

ThresholdSet load_thresholds(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kIoError, "cannot open threshold file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::kBadFormat, "threshold file " + path + ": " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "ssdbias-thresholds") {
      throw Error(Errc::kBadFormat, "not a threshold file: " + path);
    }
    return threshold_set_from_json(j);
  } catch (const json::exception& e) {
    throw Error(Errc::kBadFormat, "threshold file " + path + ": " + e.what());
  }
}

}  // namespace ssdbias
