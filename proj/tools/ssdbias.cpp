// ssdbias/tools/ssdbias.cpp

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

// Command-line entry point.  One subcommand per pipeline stage with file
// handoffs, so externally produced detector scores can join at the natural
// boundary (the score file).  Exit codes: 0 success, 1 usage error, 2 data
// error, 3 internal error.

#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ssdbias/audio.hpp"
#include "ssdbias/error.hpp"
#include "ssdbias/features.hpp"
#include "ssdbias/gmm.hpp"
#include "ssdbias/manifest.hpp"
#include "ssdbias/metrics.hpp"
#include "ssdbias/report.hpp"
#include "ssdbias/rng.hpp"
#include "ssdbias/study.hpp"

namespace {

using namespace ssdbias;
namespace fs = std::filesystem;

// Cache files are named by a sanitized id stem plus the full 64-bit id hash,
// so arbitrary utterance ids (including relative paths) map to unique flat
// file names deterministically.
std::string cache_file_name(const std::string& utt_id) {
  std::string stem;
  for (char c : utt_id) {
    const unsigned char u = static_cast<unsigned char>(c);
    stem += (std::isalnum(u) || c == '.' || c == '_' || c == '-') ? c : '_';
  }
  if (stem.size() > 80) stem.resize(80);
  char suffix[32];
  std::snprintf(suffix, sizeof(suffix), "-%016llx.feat",
                static_cast<unsigned long long>(hash_name(utt_id)));
  return stem + suffix;
}

// Feature flags shared by extract and train-gmm.  Negative sentinel = keep
// the front-end's documented default.
struct FeatureFlags {
  std::string kind = "lfcc";
  double window_ms = -1.0;
  double hop_ms = -1.0;
  int n_fft = -1;
  int n_filters = -1;
  int n_coeffs = -1;
  int delta_window = -1;
  double f_min_hz = -1.0;
  double f_max_hz = -1.0;
};

void add_feature_flags(CLI::App* cmd, FeatureFlags* flags) {
  cmd->add_option("--feature", flags->kind, "Front-end: lfcc, mfcc, or logspec")
      ->default_val("lfcc");
  cmd->add_option("--window-ms", flags->window_ms, "Analysis window (ms)");
  cmd->add_option("--hop-ms", flags->hop_ms, "Hop between frames (ms)");
  cmd->add_option("--n-fft", flags->n_fft, "FFT size (power of two)");
  cmd->add_option("--n-filters", flags->n_filters, "Filterbank size");
  cmd->add_option("--n-coeffs", flags->n_coeffs, "Cepstral coefficients kept");
  cmd->add_option("--delta-window", flags->delta_window,
                  "Delta regression half-width (0 = statics only)");
  cmd->add_option("--f-min", flags->f_min_hz, "Filterbank lower edge (Hz)");
  cmd->add_option("--f-max", flags->f_max_hz, "Filterbank upper edge (Hz)");
}

FeatureConfig resolve_feature_config(const FeatureFlags& flags) {
  FeatureConfig cfg;
  switch (parse_feature_kind(flags.kind)) {
    case FeatureKind::kLfcc: cfg = FeatureConfig::lfcc_defaults(); break;
    case FeatureKind::kMfcc: cfg = FeatureConfig::mfcc_defaults(); break;
    case FeatureKind::kLogSpec: cfg = FeatureConfig::logspec_defaults(); break;
  }
  if (flags.window_ms >= 0) cfg.window_ms = flags.window_ms;
  if (flags.hop_ms >= 0) cfg.hop_ms = flags.hop_ms;
  if (flags.n_fft >= 0) cfg.n_fft = flags.n_fft;
  if (flags.n_filters >= 0) cfg.n_filters = flags.n_filters;
  if (flags.n_coeffs >= 0) cfg.n_coeffs = flags.n_coeffs;
  if (flags.delta_window >= 0) cfg.delta_window = flags.delta_window;
  if (flags.f_min_hz >= 0) cfg.f_min_hz = flags.f_min_hz;
  if (flags.f_max_hz >= 0) cfg.f_max_hz = flags.f_max_hz;
  return cfg;
}

std::string describe_feature_config(const FeatureConfig& cfg) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s window_ms=%g hop_ms=%g n_fft=%d n_filters=%d n_coeffs=%d "
                "band=[%g,%g]Hz delta_window=%d dims=%d",
                feature_kind_name(cfg.kind), cfg.window_ms, cfg.hop_ms,
                cfg.n_fft, cfg.n_filters, cfg.n_coeffs, cfg.f_min_hz,
                cfg.f_max_hz, cfg.delta_window, cfg.output_dims());
  return buf;
}

// Manifest flags shared by every manifest-consuming subcommand.
struct ManifestFlags {
  std::string path;
  std::string format = "native-csv";
  std::string accent_map;
};

void add_manifest_flags(CLI::App* cmd, ManifestFlags* flags,
                        const char* path_help) {
  cmd->add_option("--manifest", flags->path, path_help)
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", flags->format,
                  "Manifest format: cvc-tsv, asvspoof, or native-csv")
      ->default_val("native-csv");
  cmd->add_option("--accent-map", flags->accent_map,
                  "TSV mapping free-text accent labels to canonical tags")
      ->check(CLI::ExistingFile);
}

Manifest load_manifest_cli(const ManifestFlags& flags) {
  const AccentMap accents = flags.accent_map.empty()
                                ? AccentMap::defaults()
                                : AccentMap::from_file(flags.accent_map);
  Manifest m = load_manifest(flags.path, parse_manifest_format(flags.format),
                             accents);
  std::cerr << "manifest " << flags.path << ": " << m.report.summary() << '\n';
  return m;
}

// Runs fn(0..n-1) across `jobs` worker threads pulling indices from a shared
// counter.  Output slots are owned by index, so results are independent of
// the thread count.  The first exception wins and is rethrown after join.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (jobs < 1) jobs = 1;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  if (err) std::rethrow_exception(err);
}

std::string default_cache_dir() {
  const char* env = std::getenv("SSDBIAS_CACHE_DIR");
  return env != nullptr && *env != '\0' ? env : "features";
}

std::string basename_of(const std::string& path) {
  return fs::path(path).filename().string();
}

void write_text_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot create " + path);
  out << text;
  if (!out) throw Error(Errc::kIoError, "write failed: " + path);
}

// ---------------------------------------------------------------------------
// extract: manifest + audio dir -> feature cache
// ---------------------------------------------------------------------------

struct ExtractOptions {
  ManifestFlags manifest;
  FeatureFlags feature;
  std::string audio_root;
  std::string out_dir = default_cache_dir();
  int sample_rate = 16000;
  int jobs = 1;
};

void run_extract(const ExtractOptions& opt) {
  const FeatureConfig cfg = resolve_feature_config(opt.feature);
  cfg.validate(opt.sample_rate);
  const Manifest manifest = load_manifest_cli(opt.manifest);
  std::cerr << "extract: " << describe_feature_config(cfg)
            << " rate=" << opt.sample_rate << " entries="
            << manifest.entries.size() << " jobs=" << opt.jobs << " out="
            << opt.out_dir << '\n';
  fs::create_directories(opt.out_dir);
  parallel_for(manifest.entries.size(), opt.jobs, [&](std::size_t i) {
    const ManifestEntry& e = manifest.entries[i];
    if (e.path.empty()) {
      throw Error(Errc::kBadConfig,
                  "entry '" + e.utt_id + "' has no audio path");
    }
    const fs::path wav = opt.audio_root.empty()
                             ? fs::path(e.path)
                             : fs::path(opt.audio_root) / e.path;
    AudioBuffer buf = read_wav(wav.string());
    buf = to_mono(buf);
    buf = resample(buf, opt.sample_rate);
    const FeatureMatrix feat = extract_features(buf, cfg);
    write_feature_cache((fs::path(opt.out_dir) / cache_file_name(e.utt_id)).string(),
                        feat);
  });
  std::cerr << "extract: wrote " << manifest.entries.size()
            << " feature files\n";
}

// ---------------------------------------------------------------------------
// train-gmm: feature caches -> detector model file
// ---------------------------------------------------------------------------

struct TrainOptionsCli {
  ManifestFlags manifest;
  FeatureFlags feature;
  std::string features_dir = default_cache_dir();
  std::string out;
  std::string dataset_id;
  int components = 512;
  int max_iter = 100;
  std::uint64_t seed = 7;
};

RealMatrix load_class_frames(const Manifest& manifest, Label label,
                             const std::string& dir, const FeatureConfig& cfg) {
  RealMatrix frames;
  frames.cols = static_cast<std::size_t>(cfg.output_dims());
  for (const ManifestEntry& e : manifest.entries) {
    if (e.label != label) continue;
    const std::string path = (fs::path(dir) / cache_file_name(e.utt_id)).string();
    const FeatureMatrix feat = read_feature_cache(path);
    if (feat.dims() != frames.cols) {
      throw Error(Errc::kDimensionMismatch,
                  "cached features for '" + e.utt_id + "' have " +
                      std::to_string(feat.dims()) + " dims, config wants " +
                      std::to_string(frames.cols));
    }
    frames.values.insert(frames.values.end(), feat.values.values.begin(),
                         feat.values.values.end());
    frames.rows += feat.frames();
  }
  return frames;
}

void run_train(const TrainOptionsCli& opt) {
  const FeatureConfig cfg = resolve_feature_config(opt.feature);
  const Manifest manifest = load_manifest_cli(opt.manifest);
  const RealMatrix bona = load_class_frames(manifest, Label::kBonafide,
                                            opt.features_dir, cfg);
  const RealMatrix spoof = load_class_frames(manifest, Label::kSpoof,
                                             opt.features_dir, cfg);
  std::cerr << "train-gmm: " << describe_feature_config(cfg)
            << " components=" << opt.components << " seed=" << opt.seed
            << " max_iter=" << opt.max_iter << " bona_frames=" << bona.rows
            << " spoof_frames=" << spoof.rows << '\n';
  TrainOptions train;
  train.n_components = opt.components;
  train.em.max_iter = opt.max_iter;
  train.dataset_id =
      opt.dataset_id.empty() ? basename_of(opt.manifest.path) : opt.dataset_id;
  const DetectorModel detector =
      train_detector(bona, spoof, cfg, opt.seed, train);
  save_detector(opt.out, detector);
  std::cerr << "train-gmm: wrote " << opt.out << '\n';
}

// ---------------------------------------------------------------------------
// score: model or score-file + manifest -> native csv with scores
// ---------------------------------------------------------------------------

struct ScoreOptions {
  ManifestFlags manifest;
  std::string model;
  std::string scores;
  std::string orientation = "higher-synthetic";
  std::string features_dir = default_cache_dir();
  std::string out;
  int jobs = 1;
};

ScoreOrientation parse_orientation(const std::string& s) {
  if (s == "higher-synthetic") return ScoreOrientation::kHigherSynthetic;
  if (s == "higher-bonafide") return ScoreOrientation::kHigherBonafide;
  throw Error(Errc::kBadConfig, "unknown score orientation: " + s);
}

void run_score(const ScoreOptions& opt) {
  if (opt.model.empty() == opt.scores.empty()) {
    throw Error(Errc::kBadConfig,
                "score needs exactly one of --model or --scores");
  }
  const Manifest manifest = load_manifest_cli(opt.manifest);
  std::unordered_map<std::string, double> scores;
  if (!opt.model.empty()) {
    const DetectorModel detector = load_detector(opt.model);
    std::cerr << "score: model=" << opt.model << " ("
              << describe_feature_config(detector.feature_config)
              << " components=" << detector.bona_model.n_components
              << " seed=" << detector.seed << ") entries="
              << manifest.entries.size() << " jobs=" << opt.jobs << '\n';
    std::vector<double> by_index(manifest.entries.size());
    parallel_for(manifest.entries.size(), opt.jobs, [&](std::size_t i) {
      const std::string path =
          (fs::path(opt.features_dir) / cache_file_name(manifest.entries[i].utt_id))
              .string();
      by_index[i] = score_features(detector, read_feature_cache(path));
    });
    for (std::size_t i = 0; i < by_index.size(); ++i) {
      scores.emplace(manifest.entries[i].utt_id, by_index[i]);
    }
  } else {
    std::cerr << "score: importing " << opt.scores << " orientation="
              << opt.orientation << '\n';
    // join_scores validates coverage and fixes the orientation; the joined
    // records then carry engine-oriented scores into the output csv.
    const std::vector<ScoreRecord> records = join_scores(
        manifest, load_scores(opt.scores), parse_orientation(opt.orientation));
    for (const ScoreRecord& r : records) scores.emplace(r.utt_id, r.score);
  }
  write_native_csv(opt.out, manifest.entries, &scores);
  std::size_t bona = 0;
  for (const ManifestEntry& e : manifest.entries) {
    bona += e.label == Label::kBonafide ? 1 : 0;
  }
  std::cerr << "score: wrote " << manifest.entries.size() << " records ("
            << bona << " bona fide, " << manifest.entries.size() - bona
            << " synthetic) to " << opt.out << '\n';
}

// ---------------------------------------------------------------------------
// calibrate: reference scores -> threshold file
// ---------------------------------------------------------------------------

struct CalibrateOptions {
  std::string ref;
  std::string reference_id;
  std::string out;
  double fpr_target = 0.08;
  double fnr_target = 0.08;
};

ScoreSet split_scored_manifest(const Manifest& manifest,
                               const std::string& path) {
  if (!manifest.has_scores) {
    throw Error(Errc::kMissingScores,
                path + " carries no score column; run `score` first");
  }
  ScoreSet set;
  for (const ManifestEntry& e : manifest.entries) {
    const double s = manifest.inline_scores.at(e.utt_id);
    (e.label == Label::kBonafide ? set.bona : set.spoof).push_back(s);
  }
  return set;
}

void run_calibrate(const CalibrateOptions& opt) {
  Manifest manifest = load_manifest(opt.ref, ManifestFormat::kNativeCsv);
  const ScoreSet ref = split_scored_manifest(manifest, opt.ref);
  const std::string ref_id =
      opt.reference_id.empty() ? basename_of(opt.ref) : opt.reference_id;
  std::cerr << "calibrate: ref=" << opt.ref << " (" << ref.bona.size()
            << " bona fide, " << ref.spoof.size() << " synthetic) fpr_target="
            << opt.fpr_target << " fnr_target=" << opt.fnr_target << '\n';
  const ThresholdSet thresholds =
      calibrate(ref, opt.fpr_target, opt.fnr_target, ref_id);
  std::cerr << "calibrate: t_eer=" << thresholds.t_eer
            << " (FPR=" << fpr_at_threshold(ref.bona, thresholds.t_eer)
            << ") t_fpr=" << thresholds.t_fpr
            << " (FPR=" << fpr_at_threshold(ref.bona, thresholds.t_fpr)
            << ") t_fnr=" << thresholds.t_fnr
            << " (FNR=" << fnr_at_threshold(ref.spoof, thresholds.t_fnr)
            << ")\n";
  save_thresholds(opt.out, thresholds);
  std::cerr << "calibrate: wrote " << opt.out << '\n';
}

// ---------------------------------------------------------------------------
// study: spec + scored records + thresholds -> study result file
// ---------------------------------------------------------------------------

struct StudyOptions {
  std::string records;
  std::string thresholds;
  std::string kind = "gender";
  std::string spec_path;
  std::string emit_spec;
  std::string detector_id;
  std::string out;
  std::string csv;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int repeats = 0;
  std::size_t samples = 0;
  bool samples_given = false;
};

void run_study_cmd(const StudyOptions& opt) {
  StudySpec spec = opt.spec_path.empty()
                       ? default_study_spec(parse_study_kind(opt.kind))
                       : load_study_spec(opt.spec_path);
  if (opt.seed_given) spec.base_seed = opt.seed;
  if (opt.repeats > 0) spec.repeats = opt.repeats;
  if (opt.samples_given) {
    for (SetSpec& s : spec.sets) s.samples = opt.samples;
  }
  if (!opt.emit_spec.empty()) {
    save_study_spec(opt.emit_spec, spec);
    std::cerr << "study: wrote spec template " << opt.emit_spec << '\n';
    return;
  }
  if (opt.records.empty() || opt.thresholds.empty() || opt.out.empty()) {
    throw Error(Errc::kBadConfig,
                "study needs --records, --thresholds, and --out");
  }
  const Manifest manifest = load_manifest(opt.records, ManifestFormat::kNativeCsv);
  if (!manifest.has_scores) {
    throw Error(Errc::kMissingScores,
                opt.records + " carries no score column; run `score` first");
  }
  // Inline scores are already engine-oriented (higher => synthetic).
  const std::vector<ScoreRecord> records = join_scores(
      manifest, manifest.inline_scores, ScoreOrientation::kHigherSynthetic);
  const ThresholdSet thresholds = load_thresholds(opt.thresholds);
  std::cerr << "study: kind=" << study_kind_name(spec.kind) << " base_seed="
            << spec.base_seed << " repeats=" << spec.repeats << " records="
            << records.size() << " thresholds=(" << thresholds.t_eer << ", "
            << thresholds.t_fpr << ", " << thresholds.t_fnr << ") ref="
            << thresholds.reference_id << '\n';
  for (const SetSpec& s : spec.sets) {
    std::cerr << "study:   set " << s.name << " samples="
              << (s.samples == 0 ? std::string("all") : std::to_string(s.samples))
              << " delta_group=" << s.delta_group << '\n';
  }
  const StudyResult result = run_study(records, spec, thresholds,
                                       opt.detector_id);
  save_study_result(opt.out, result);
  std::cerr << "study: synthetic=" << result.synthetic_count << " wrote "
            << opt.out << '\n';
  if (!opt.csv.empty()) {
    write_text_file(opt.csv, study_result_csv(result));
    std::cerr << "study: wrote " << opt.csv << '\n';
  }
}

// ---------------------------------------------------------------------------
// report: study result(s) -> bias table / fluency summary
// ---------------------------------------------------------------------------

struct ReportOptions {
  std::vector<std::string> results;
  std::vector<std::string> fluency_pairs;
  std::string format = "markdown";
  std::string mode = "delta";
  std::string out = "-";
};

TableFormat parse_table_format(const std::string& s) {
  if (s == "markdown") return TableFormat::kMarkdown;
  if (s == "csv") return TableFormat::kCsv;
  throw Error(Errc::kBadConfig, "unknown table format: " + s);
}

TableMode parse_table_mode(const std::string& s) {
  if (s == "delta") return TableMode::kDelta;
  if (s == "absolute") return TableMode::kAbsolute;
  throw Error(Errc::kBadConfig, "unknown table mode: " + s);
}

void run_report(const ReportOptions& opt) {
  if (!opt.fluency_pairs.empty()) {
    std::vector<FluencyResult> results;
    for (const std::string& pair : opt.fluency_pairs) {
      const std::size_t comma = pair.find(',');
      if (comma == std::string::npos) {
        throw Error(Errc::kBadConfig,
                    "--fluency-pair wants 'fluent.json,stuttering.json'");
      }
      const StudyResult fluent = load_study_result(pair.substr(0, comma));
      const StudyResult stutter = load_study_result(pair.substr(comma + 1));
      if (fluent.sets.empty() || stutter.sets.empty()) {
        throw Error(Errc::kEmptyInput, "fluency result has no sets: " + pair);
      }
      FluencyResult r;
      r.detector_id = fluent.detector_id;
      r.fluent = fluent.sets.front().mean;
      r.stuttering = stutter.sets.front().mean;
      results.push_back(std::move(r));
    }
    std::cerr << "report: fluency summary over " << results.size()
              << " detectors\n";
    write_text_file(opt.out, summarize_fluency(results));
    return;
  }
  if (opt.results.empty()) {
    throw Error(Errc::kBadConfig,
                "report needs result files or --fluency-pair");
  }
  std::vector<StudyResult> results;
  for (const std::string& path : opt.results) {
    results.push_back(load_study_result(path));
  }
  std::cerr << "report: " << results.size() << " detectors, format="
            << opt.format << " mode=" << opt.mode << '\n';
  write_text_file(opt.out, render_bias_table(results,
                                             parse_table_format(opt.format),
                                             parse_table_mode(opt.mode)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness audit harness for synthetic-speech detectors"};
  app.require_subcommand(1);

  ExtractOptions extract_opt;
  CLI::App* extract = app.add_subcommand(
      "extract", "Decode audio and write per-utterance feature caches");
  add_manifest_flags(extract, &extract_opt.manifest,
                     "Utterance manifest naming the audio files");
  add_feature_flags(extract, &extract_opt.feature);
  extract->add_option("--audio-root", extract_opt.audio_root,
                      "Directory manifest paths are relative to");
  extract->add_option("--out-dir", extract_opt.out_dir,
                      "Cache directory (default $SSDBIAS_CACHE_DIR or ./features)");
  extract->add_option("--sample-rate", extract_opt.sample_rate,
                      "Pipeline rate; inputs are resampled to this")
      ->default_val(16000);
  extract->add_option("--jobs", extract_opt.jobs, "Parallel decode workers")
      ->default_val(1);
  extract->callback([&] { run_extract(extract_opt); });

  TrainOptionsCli train_opt;
  CLI::App* train = app.add_subcommand(
      "train-gmm", "Fit the two-class mixture detector from cached features");
  add_manifest_flags(train, &train_opt.manifest,
                     "Training manifest with bona fide and synthetic labels");
  add_feature_flags(train, &train_opt.feature);
  train->add_option("--features", train_opt.features_dir,
                    "Feature cache directory from `extract`");
  train->add_option("--components", train_opt.components,
                    "Mixture components per class")
      ->default_val(512);
  train->add_option("--seed", train_opt.seed, "Training seed")->default_val(7);
  train->add_option("--max-iter", train_opt.max_iter,
                    "EM iteration cap")
      ->default_val(100);
  train->add_option("--dataset-id", train_opt.dataset_id,
                    "Provenance tag stored in the model file");
  train->add_option("--out", train_opt.out, "Model file to write")->required();
  train->callback([&] { run_train(train_opt); });

  ScoreOptions score_opt;
  CLI::App* score = app.add_subcommand(
      "score", "Score a manifest with a model (or import external scores)");
  add_manifest_flags(score, &score_opt.manifest,
                     "Manifest of utterances to score");
  score->add_option("--model", score_opt.model, "Detector model file")
      ->check(CLI::ExistingFile);
  score->add_option("--scores", score_opt.scores,
                    "External `utt_id score` file to import instead")
      ->check(CLI::ExistingFile);
  score->add_option("--orientation", score_opt.orientation,
                    "External score polarity: higher-synthetic or "
                    "higher-bonafide")
      ->default_val("higher-synthetic");
  score->add_option("--features", score_opt.features_dir,
                    "Feature cache directory from `extract`");
  score->add_option("--out", score_opt.out, "Scored records csv to write")
      ->required();
  score->add_option("--jobs", score_opt.jobs, "Parallel scoring workers")
      ->default_val(1);
  score->callback([&] { run_score(score_opt); });

  CalibrateOptions cal_opt;
  CLI::App* cal = app.add_subcommand(
      "calibrate", "Derive the three operating thresholds from reference scores");
  cal->add_option("--ref", cal_opt.ref, "Scored records csv of the reference set")
      ->required()
      ->check(CLI::ExistingFile);
  cal->add_option("--fpr-target", cal_opt.fpr_target,
                  "False positive rate target (fraction)")
      ->default_val(0.08);
  cal->add_option("--fnr-target", cal_opt.fnr_target,
                  "False negative rate target (fraction)")
      ->default_val(0.08);
  cal->add_option("--reference-id", cal_opt.reference_id,
                  "Provenance tag stored in the threshold file");
  cal->add_option("--out", cal_opt.out, "Threshold file to write")->required();
  cal->callback([&] { run_calibrate(cal_opt); });

  StudyOptions study_opt;
  CLI::App* study = app.add_subcommand(
      "study", "Run a stratified demographic study over scored records");
  study->add_option("--records", study_opt.records,
                    "Scored records csv (native format with score column)")
      ->check(CLI::ExistingFile);
  study->add_option("--thresholds", study_opt.thresholds,
                    "Threshold file from `calibrate`")
      ->check(CLI::ExistingFile);
  study->add_option("--study", study_opt.kind,
                    "Built-in study: gender, age, accent, or stuttering")
      ->default_val("gender");
  study->add_option("--spec", study_opt.spec_path,
                    "Study spec file overriding the built-in template")
      ->check(CLI::ExistingFile);
  study->add_option("--emit-spec", study_opt.emit_spec,
                    "Write the resolved spec to this file and exit");
  study->add_option("--detector-id", study_opt.detector_id,
                    "Detector label recorded in the result");
  study->add_option("--seed", study_opt.seed, "Base sampling seed")
      ->each([&](const std::string&) { study_opt.seed_given = true; });
  study->add_option("--repeats", study_opt.repeats,
                    "Resampling repeats per set");
  study->add_option("--samples", study_opt.samples,
                    "Override every set's sample count (0 = whole pool)")
      ->each([&](const std::string&) { study_opt.samples_given = true; });
  study->add_option("--out", study_opt.out, "Study result file to write");
  study->add_option("--csv", study_opt.csv,
                    "Also write a flat csv of the per-set statistics");
  study->callback([&] { run_study_cmd(study_opt); });

  ReportOptions report_opt;
  CLI::App* report = app.add_subcommand(
      "report", "Render bias tables from study results");
  report->add_option("results", report_opt.results,
                     "Study result files, one per detector")
      ->check(CLI::ExistingFile);
  report->add_option("--format", report_opt.format, "markdown or csv")
      ->default_val("markdown");
  report->add_option("--mode", report_opt.mode,
                     "delta (bias vs group minimum) or absolute")
      ->default_val("delta");
  report->add_option("--fluency-pair", report_opt.fluency_pairs,
                     "fluent.json,stuttering.json result pair per detector");
  report->add_option("--out", report_opt.out, "Output file (- = stdout)")
      ->default_val("-");
  report->callback([&] { run_report(report_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << " [" << errc_name(e.code()) << "]\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
