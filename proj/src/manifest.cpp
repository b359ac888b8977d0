// ssdbias/manifest.cpp

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

#include "ssdbias/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ssdbias/error.hpp"

namespace ssdbias {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

const char* to_string(Label v) {
  return v == Label::kBonafide ? "bonafide" : "spoof";
}

const char* to_string(Gender v) {
  switch (v) {
    case Gender::kMale: return "male";
    case Gender::kFemale: return "female";
    case Gender::kOther: return "other";
    case Gender::kUnknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(AgeGroup v) {
  switch (v) {
    case AgeGroup::kTeens: return "teens";
    case AgeGroup::k20s: return "20s";
    case AgeGroup::k30s: return "30s";
    case AgeGroup::k40s: return "40s";
    case AgeGroup::k50s: return "50s";
    case AgeGroup::k60s: return "60s";
    case AgeGroup::k70s: return "70s";
    case AgeGroup::k80s: return "80s";
    case AgeGroup::k90s: return "90s";
    case AgeGroup::kUnknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(Accent v) {
  switch (v) {
    case Accent::kUs: return "US";
    case Accent::kCa: return "CA";
    case Accent::kUk: return "UK";
    case Accent::kAu: return "AU";
    case Accent::kSa: return "SA";
    case Accent::kOther: return "other";
    case Accent::kUnknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(Fluency v) {
  switch (v) {
    case Fluency::kFluent: return "fluent";
    case Fluency::kStuttering: return "stuttering";
    case Fluency::kUnknown: return "unknown";
  }
  return "unknown";
}

Label parse_label(const std::string& s) {
  const std::string v = lower(trim(s));
  if (v == "bonafide" || v == "bona-fide" || v == "bona_fide") {
    return Label::kBonafide;
  }
  if (v == "spoof" || v == "synthetic") return Label::kSpoof;
  throw Error(Errc::kBadFormat, "unknown label: '" + s + "'");
}

Gender parse_gender(const std::string& s) {
  const std::string v = lower(trim(s));
  if (v.empty()) return Gender::kUnknown;
  if (v == "male" || v == "m" || v == "male_masculine") return Gender::kMale;
  if (v == "female" || v == "f" || v == "female_feminine") return Gender::kFemale;
  if (v == "unknown") return Gender::kUnknown;
  return Gender::kOther;
}

AgeGroup parse_age_group(const std::string& s) {
  const std::string v = lower(trim(s));
  if (v == "teens") return AgeGroup::kTeens;
  if (v == "twenties" || v == "20s") return AgeGroup::k20s;
  if (v == "thirties" || v == "30s") return AgeGroup::k30s;
  // The corpus vocabulary spells it "fourties"; accept both spellings.
  if (v == "fourties" || v == "forties" || v == "40s") return AgeGroup::k40s;
  if (v == "fifties" || v == "50s") return AgeGroup::k50s;
  if (v == "sixties" || v == "60s") return AgeGroup::k60s;
  if (v == "seventies" || v == "70s") return AgeGroup::k70s;
  if (v == "eighties" || v == "80s") return AgeGroup::k80s;
  if (v == "nineties" || v == "90s") return AgeGroup::k90s;
  return AgeGroup::kUnknown;
}

Accent parse_accent_tag(const std::string& s) {
  const std::string v = trim(s);
  if (v == "US") return Accent::kUs;
  if (v == "CA") return Accent::kCa;
  if (v == "UK") return Accent::kUk;
  if (v == "AU") return Accent::kAu;
  if (v == "SA") return Accent::kSa;
  if (v == "other") return Accent::kOther;
  if (v == "unknown") return Accent::kUnknown;
  throw Error(Errc::kBadFormat, "unknown accent tag: '" + s + "'");
}

Fluency parse_fluency(const std::string& s) {
  const std::string v = lower(trim(s));
  if (v == "fluent") return Fluency::kFluent;
  if (v == "stuttering") return Fluency::kStuttering;
  return Fluency::kUnknown;
}

AccentMap AccentMap::defaults() {
  AccentMap map;
  map.table = {
      {"united states english", Accent::kUs},
      {"canadian english", Accent::kCa},
      {"england english", Accent::kUk},
      {"australian english", Accent::kAu},
      {"india and south asia (india, pakistan, sri lanka)", Accent::kSa},
  };
  return map;
}

AccentMap AccentMap::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::kIoError, "cannot open accent map: " + path);
  }
  AccentMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cols = split(t, '\t');
    if (cols.size() != 2) {
      throw Error(Errc::kBadFormat, "accent map " + path + " line " +
                                        std::to_string(line_no) +
                                        ": want 'label<TAB>tag'");
    }
    map.table[lower(trim(cols[0]))] = parse_accent_tag(cols[1]);
  }
  return map;
}

Accent AccentMap::canonicalize(const std::string& raw) const {
  const std::string key = lower(trim(raw));
  if (key.empty()) return Accent::kUnknown;
  const auto it = table.find(key);
  return it == table.end() ? Accent::kOther : it->second;
}

std::string LoadReport::summary() const {
  std::ostringstream out;
  out << "entries=" << entries;
  for (const auto& [reason, count] : degraded) {
    out << "; " << reason << "=" << count;
  }
  return out.str();
}

const ManifestEntry* Manifest::find(const std::string& utt_id) const {
  const auto it = index_by_id.find(utt_id);
  return it == index_by_id.end() ? nullptr : &entries[it->second];
}

ManifestFormat parse_manifest_format(const std::string& s) {
  const std::string v = lower(trim(s));
  if (v == "cvc_tsv" || v == "cvc-tsv" || v == "cvc") return ManifestFormat::kCvcTsv;
  if (v == "asvspoof_protocol" || v == "asvspoof") {
    return ManifestFormat::kAsvspoofProtocol;
  }
  if (v == "native_csv" || v == "native-csv" || v == "native") {
    return ManifestFormat::kNativeCsv;
  }
  throw Error(Errc::kBadConfig, "unknown manifest format: " + s);
}

namespace {

void add_entry(Manifest& m, ManifestEntry entry, const std::string& path,
               std::size_t line_no) {
  if (m.index_by_id.count(entry.utt_id) != 0) {
    throw Error(Errc::kDuplicateId, path + " line " + std::to_string(line_no) +
                                        ": duplicate utt_id '" + entry.utt_id + "'");
  }
  m.index_by_id.emplace(entry.utt_id, m.entries.size());
  m.entries.push_back(std::move(entry));
  ++m.report.entries;
}

std::size_t require_column(const std::vector<std::string>& header,
                           const std::string& name, const std::string& path) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (lower(trim(header[i])) == name) return i;
  }
  throw Error(Errc::kMissingField, path + ": missing mandatory column '" + name + "'");
}

std::ptrdiff_t optional_column(const std::vector<std::string>& header,
                               const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (lower(trim(header[i])) == name) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::string cell(const std::vector<std::string>& cols, std::ptrdiff_t idx) {
  if (idx < 0 || static_cast<std::size_t>(idx) >= cols.size()) return "";
  return cols[static_cast<std::size_t>(idx)];
}

Manifest load_cvc_tsv(const std::string& path, const AccentMap& accents) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open manifest: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::kBadFormat, path + ": empty manifest");
  }
  const auto header = split(trim(line), '\t');
  const std::ptrdiff_t c_path =
      static_cast<std::ptrdiff_t>(require_column(header, "path", path));
  const std::ptrdiff_t c_age =
      static_cast<std::ptrdiff_t>(require_column(header, "age", path));
  const std::ptrdiff_t c_gender =
      static_cast<std::ptrdiff_t>(require_column(header, "gender", path));
  std::ptrdiff_t c_accents = optional_column(header, "accents");
  if (c_accents < 0) c_accents = optional_column(header, "accent");
  if (c_accents < 0) {
    throw Error(Errc::kMissingField, path + ": missing mandatory column 'accents'");
  }
  const std::ptrdiff_t c_up = optional_column(header, "up_votes");
  const std::ptrdiff_t c_down = optional_column(header, "down_votes");

  Manifest m;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cols = split(line, '\t');
    ManifestEntry e;
    e.utt_id = trim(cell(cols, c_path));
    if (e.utt_id.empty()) {
      throw Error(Errc::kBadFormat,
                  path + " line " + std::to_string(line_no) + ": empty path cell");
    }
    e.path = e.utt_id;
    e.label = Label::kBonafide;
    e.fluency = Fluency::kFluent;

    // Vote columns, when present, gate trust in the demographic annotations.
    bool validated = true;
    if (c_up >= 0 && c_down >= 0) {
      const std::string up_s = trim(cell(cols, c_up));
      const std::string down_s = trim(cell(cols, c_down));
      long up = 0, down = 0;
      try {
        up = up_s.empty() ? 0 : std::stol(up_s);
        down = down_s.empty() ? 0 : std::stol(down_s);
      } catch (const std::exception&) {
        m.report.count("unparseable-votes");
      }
      validated = up > down && up >= 2;
    }
    e.validated = validated;

    if (!validated) {
      m.report.count("unvalidated-demographics-dropped");
    } else {
      const std::string age_raw = cell(cols, c_age);
      e.age_group = parse_age_group(age_raw);
      if (e.age_group == AgeGroup::kUnknown && !trim(age_raw).empty()) {
        m.report.count("unparseable-age");
      } else if (trim(age_raw).empty()) {
        m.report.count("missing-age");
      }
      const std::string gender_raw = cell(cols, c_gender);
      e.gender = parse_gender(gender_raw);
      if (e.gender == Gender::kOther) m.report.count("other-gender");
      if (trim(gender_raw).empty()) m.report.count("missing-gender");
      const std::string accent_raw = cell(cols, c_accents);
      e.accent = accents.canonicalize(accent_raw);
      if (e.accent == Accent::kUnknown) m.report.count("missing-accent");
      if (e.accent == Accent::kOther) m.report.count("unmapped-accent");
    }
    add_entry(m, std::move(e), path, line_no);
  }
  return m;
}

Manifest load_asvspoof(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open manifest: " + path);
  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream tokens(t);
    std::vector<std::string> tok;
    std::string w;
    while (tokens >> w) tok.push_back(w);
    if (tok.size() < 5) {
      throw Error(Errc::kBadFormat, path + " line " + std::to_string(line_no) +
                                        ": want 'SPEAKER UTT - SYSTEM KEY'");
    }
    ManifestEntry e;
    e.utt_id = tok[1];
    e.label = parse_label(tok[4]);  // throws kBadFormat on junk keys
    e.validated = true;
    add_entry(m, std::move(e), path, line_no);
  }
  return m;
}

Manifest load_native_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open manifest: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::kBadFormat, path + ": empty manifest");
  }
  const auto header = split(trim(line), ',');
  const auto c_id = static_cast<std::ptrdiff_t>(require_column(header, "utt_id", path));
  const auto c_label =
      static_cast<std::ptrdiff_t>(require_column(header, "label", path));
  const auto c_gender =
      static_cast<std::ptrdiff_t>(require_column(header, "gender", path));
  const auto c_age =
      static_cast<std::ptrdiff_t>(require_column(header, "age_group", path));
  const auto c_accent =
      static_cast<std::ptrdiff_t>(require_column(header, "accent", path));
  const auto c_fluency =
      static_cast<std::ptrdiff_t>(require_column(header, "fluency", path));
  const std::ptrdiff_t c_score = optional_column(header, "score");
  const std::ptrdiff_t c_path = optional_column(header, "path");

  Manifest m;
  m.has_scores = c_score >= 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cols = split(line, ',');
    ManifestEntry e;
    e.utt_id = trim(cell(cols, c_id));
    if (e.utt_id.empty()) {
      throw Error(Errc::kBadFormat,
                  path + " line " + std::to_string(line_no) + ": empty utt_id");
    }
    try {
      e.label = parse_label(cell(cols, c_label));
    } catch (const Error&) {
      throw Error(Errc::kBadFormat, path + " line " + std::to_string(line_no) +
                                        ": bad label '" + cell(cols, c_label) + "'");
    }
    e.gender = parse_gender(cell(cols, c_gender));
    const std::string age_raw = trim(cell(cols, c_age));
    e.age_group = parse_age_group(age_raw);
    if (e.age_group == AgeGroup::kUnknown && !age_raw.empty() &&
        age_raw != "unknown") {
      m.report.count("unparseable-age");
    }
    const std::string accent_raw = trim(cell(cols, c_accent));
    try {
      e.accent = parse_accent_tag(accent_raw);
    } catch (const Error&) {
      e.accent = accent_raw.empty() ? Accent::kUnknown : Accent::kOther;
      m.report.count("unmapped-accent");
    }
    e.fluency = parse_fluency(cell(cols, c_fluency));
    e.path = trim(cell(cols, c_path));
    e.validated = true;
    if (c_score >= 0) {
      const std::string score_raw = trim(cell(cols, c_score));
      if (!score_raw.empty()) {
        char* end = nullptr;
        const double v = std::strtod(score_raw.c_str(), &end);
        if (end == nullptr || *end != '\0' || !std::isfinite(v)) {
          throw Error(Errc::kBadFormat, path + " line " + std::to_string(line_no) +
                                            ": bad score '" + score_raw + "'");
        }
        m.inline_scores[e.utt_id] = v;
      }
    }
    add_entry(m, std::move(e), path, line_no);
  }
  return m;
}

}  // namespace

Manifest load_manifest(const std::string& path, ManifestFormat format,
                       const AccentMap& accents) {
  switch (format) {
    case ManifestFormat::kCvcTsv: return load_cvc_tsv(path, accents);
    case ManifestFormat::kAsvspoofProtocol: return load_asvspoof(path);
    case ManifestFormat::kNativeCsv: return load_native_csv(path);
  }
  throw Error(Errc::kBadConfig, "unknown manifest format");
}

std::unordered_map<std::string, double> load_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open score file: " + path);
  std::unordered_map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream tokens(t);
    std::string id, score_s, extra;
    if (!(tokens >> id >> score_s) || (tokens >> extra)) {
      throw Error(Errc::kBadFormat, path + " line " + std::to_string(line_no) +
                                        ": want 'utt_id score'");
    }
    char* end = nullptr;
    const double v = std::strtod(score_s.c_str(), &end);
    if (end == nullptr || *end != '\0' || !std::isfinite(v)) {
      throw Error(Errc::kBadFormat, path + " line " + std::to_string(line_no) +
                                        ": non-numeric score '" + score_s + "'");
    }
    if (!out.emplace(id, v).second) {
      throw Error(Errc::kDuplicateId, path + " line " + std::to_string(line_no) +
                                          ": duplicate utt_id '" + id + "'");
    }
  }
  return out;
}

std::vector<ScoreRecord> join_scores(
    const Manifest& manifest,
    const std::unordered_map<std::string, double>& scores,
    ScoreOrientation orientation) {
  std::vector<ScoreRecord> out;
  out.reserve(manifest.entries.size());
  std::vector<std::string> missing;
  for (const ManifestEntry& e : manifest.entries) {
    const auto it = scores.find(e.utt_id);
    if (it == scores.end()) {
      missing.push_back(e.utt_id);
      continue;
    }
    ScoreRecord r;
    r.utt_id = e.utt_id;
    r.score = orientation == ScoreOrientation::kHigherBonafide ? -it->second
                                                               : it->second;
    r.label = e.label;
    r.gender = e.gender;
    r.age_group = e.age_group;
    r.accent = e.accent;
    r.fluency = e.fluency;
    out.push_back(std::move(r));
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << missing.size() << " manifest entries have no score:";
    const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) msg << ' ' << missing[i];
    if (shown < missing.size()) {
      msg << " (and " << missing.size() - shown << " more)";
    }
    throw Error(Errc::kMissingScores, msg.str());
  }
  return out;
}

void write_native_csv(const std::string& path,
                      const std::vector<ManifestEntry>& entries,
                      const std::unordered_map<std::string, double>* scores) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot create manifest: " + path);
  bool any_path = false;
  for (const ManifestEntry& e : entries) any_path = any_path || !e.path.empty();
  out << "utt_id,label,gender,age_group,accent,fluency";
  if (any_path) out << ",path";
  if (scores) out << ",score";
  out << '\n';
  char buf[40];
  for (const ManifestEntry& e : entries) {
    out << e.utt_id << ',' << to_string(e.label) << ',' << to_string(e.gender)
        << ',' << to_string(e.age_group) << ',' << to_string(e.accent) << ','
        << to_string(e.fluency);
    if (any_path) out << ',' << e.path;
    if (scores) {
      const auto it = scores->find(e.utt_id);
      if (it == scores->end()) {
        throw Error(Errc::kMissingScores, "no score for '" + e.utt_id + "'");
      }
      // %.17g round-trips doubles exactly through strtod.
      std::snprintf(buf, sizeof(buf), "%.17g", it->second);
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) throw Error(Errc::kIoError, "write failed: " + path);
}

}  // namespace ssdbias
