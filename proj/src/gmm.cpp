// ssdbias/gmm.cpp

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

#include "ssdbias/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "ssdbias/error.hpp"
#include "ssdbias/rng.hpp"

namespace ssdbias {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)

void check_frames(const RealMatrix& frames) {
  if (frames.rows == 0 || frames.cols == 0) {
    throw Error(Errc::kEmptyInput, "no training frames");
  }
  for (double v : frames.values) {
    if (!std::isfinite(v)) {
      throw Error(Errc::kBadConfig, "non-finite value in training frames");
    }
  }
}

// Biased per-dimension variance of the whole dataset, floored.  Used as the
// fallback spread for degenerate clusters and rescued components.
std::vector<double> dataset_variance(const RealMatrix& frames, double floor) {
  const std::size_t n = frames.rows, dim = frames.cols;
  std::vector<double> mean(dim, 0.0), var(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) mean[d] += frames.at(i, d);
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double c = frames.at(i, d) - mean[d];
      var[d] += c * c;
    }
  }
  for (double& v : var) v = std::max(v / static_cast<double>(n), floor);
  return var;
}

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double c = a[d] - b[d];
    acc += c * c;
  }
  return acc;
}

// Per-component cached Gaussian terms: log w_k - 0.5*sum_d ln(2 pi s2_kd)
// plus precision 1/s2 per dimension.  Lets scoring loops avoid re-deriving
// constants per frame.
struct MixtureEvaluator {
  explicit MixtureEvaluator(const GmmModel& model) : model_(&model) {
    log_const.resize(model.n_components);
    inv_var = RealMatrix(model.means.rows, model.means.cols);
    for (int k = 0; k < model.n_components; ++k) {
      double c = model.weights[static_cast<std::size_t>(k)] > 0.0
                     ? std::log(model.weights[static_cast<std::size_t>(k)])
                     : -std::numeric_limits<double>::infinity();
      for (int d = 0; d < model.dim; ++d) {
        const double s2 = model.variances.at(k, d);
        c -= 0.5 * (kLog2Pi + std::log(s2));
        inv_var.at(k, d) = 1.0 / s2;
      }
      log_const[static_cast<std::size_t>(k)] = c;
    }
  }

  // log-sum-exp over components of log w_k + log N(x; mu_k, s2_k).
  double log_density(std::span<const double> x, std::vector<double>* terms) const {
    const int K = model_->n_components;
    double best = -std::numeric_limits<double>::infinity();
    if (terms) terms->resize(static_cast<std::size_t>(K));
    scratch_.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
      double m = 0.0;
      const auto mu = model_->means.row(static_cast<std::size_t>(k));
      const auto iv = inv_var.row(static_cast<std::size_t>(k));
      for (int d = 0; d < model_->dim; ++d) {
        const double c = x[static_cast<std::size_t>(d)] - mu[static_cast<std::size_t>(d)];
        m += c * c * iv[static_cast<std::size_t>(d)];
      }
      const double term = log_const[static_cast<std::size_t>(k)] - 0.5 * m;
      scratch_[static_cast<std::size_t>(k)] = term;
      best = std::max(best, term);
    }
    if (!std::isfinite(best)) return best;  // all weights zero: impossible
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
      acc += std::exp(scratch_[static_cast<std::size_t>(k)] - best);
    }
    if (terms) *terms = scratch_;
    return best + std::log(acc);
  }

  const GmmModel* model_;
  std::vector<double> log_const;
  RealMatrix inv_var;
  mutable std::vector<double> scratch_;
};

}  // namespace

void GmmModel::validate() const {
  if (n_components <= 0 || dim <= 0) {
    throw Error(Errc::kBadConfig, "model has empty geometry");
  }
  if (weights.size() != static_cast<std::size_t>(n_components) ||
      means.rows != static_cast<std::size_t>(n_components) ||
      means.cols != static_cast<std::size_t>(dim) ||
      variances.rows != means.rows || variances.cols != means.cols) {
    throw Error(Errc::kBadConfig, "model field shapes disagree");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(Errc::kBadConfig, "negative mixture weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(Errc::kBadConfig, "mixture weights do not sum to 1");
  }
  for (double v : variances.values) {
    if (!(v > 0.0)) throw Error(Errc::kBadConfig, "non-positive variance");
  }
}

GmmModel kmeanspp_init(const RealMatrix& frames, int n_components,
                       std::uint64_t seed, const EmOptions& opts) {
  check_frames(frames);
  const std::size_t n = frames.rows, dim = frames.cols;
  const std::size_t K = static_cast<std::size_t>(n_components);
  if (n_components <= 0) {
    throw Error(Errc::kBadConfig, "need at least one component");
  }
  if (n < K) {
    throw Error(Errc::kInsufficientData,
                "fewer frames (" + std::to_string(n) + ") than components (" +
                    std::to_string(K) + ")");
  }

  Rng rng(seed);
  RealMatrix centers(K, dim);
  std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());

  // k-means++ seeding: first center uniform, then proportional to the
  // squared distance from the nearest chosen center.
  std::size_t first = static_cast<std::size_t>(rng.bounded(n));
  std::copy_n(frames.row(first).begin(), dim, centers.row(0).begin());
  for (std::size_t k = 1; k < K; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      min_dist[i] = std::min(min_dist[i], sq_distance(frames.row(i), centers.row(k - 1)));
      total += min_dist[i];
    }
    std::size_t pick;
    if (total > 0.0) {
      const double u = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += min_dist[i];
        if (u < acc) { pick = i; break; }
      }
    } else {
      pick = static_cast<std::size_t>(rng.bounded(n));  // all points coincide
    }
    std::copy_n(frames.row(pick).begin(), dim, centers.row(k).begin());
  }

  // Lloyd refinement; ties go to the lowest component index, empty clusters
  // keep their previous center.
  std::vector<std::size_t> assign(n, 0);
  for (int it = 0; it < opts.kmeans_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t k = 0; k < K; ++k) {
        const double d2 = sq_distance(frames.row(i), centers.row(k));
        if (d2 < best) { best = d2; arg = k; }
      }
      assign[i] = arg;
    }
    RealMatrix sums(K, dim);
    std::vector<std::size_t> counts(K, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[assign[i]];
      for (std::size_t d = 0; d < dim; ++d) sums.at(assign[i], d) += frames.at(i, d);
    }
    for (std::size_t k = 0; k < K; ++k) {
      if (counts[k] == 0) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        centers.at(k, d) = sums.at(k, d) / static_cast<double>(counts[k]);
      }
    }
  }

  // Final assignment -> initial mixture statistics.
  std::vector<std::size_t> counts(K, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t k = 0; k < K; ++k) {
      const double d2 = sq_distance(frames.row(i), centers.row(k));
      if (d2 < best) { best = d2; arg = k; }
    }
    assign[i] = arg;
    ++counts[arg];
  }

  const std::vector<double> fallback_var = dataset_variance(frames, opts.variance_floor);
  GmmModel model;
  model.n_components = n_components;
  model.dim = static_cast<int>(dim);
  model.weights.assign(K, 0.0);
  model.means = centers;
  model.variances = RealMatrix(K, dim);
  RealMatrix sq_sums(K, dim);
  RealMatrix sums(K, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      sums.at(assign[i], d) += frames.at(i, d);
      sq_sums.at(assign[i], d) += frames.at(i, d) * frames.at(i, d);
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    model.weights[k] = static_cast<double>(counts[k]) / static_cast<double>(n);
    for (std::size_t d = 0; d < dim; ++d) {
      if (counts[k] >= 2) {
        const double m = sums.at(k, d) / static_cast<double>(counts[k]);
        model.means.at(k, d) = m;
        model.variances.at(k, d) = std::max(
            sq_sums.at(k, d) / static_cast<double>(counts[k]) - m * m,
            opts.variance_floor);
      } else {
        // Singleton or empty cluster: keep the center, use the dataset spread.
        model.variances.at(k, d) = fallback_var[d];
      }
    }
  }
  return model;
}

GmmModel em_refine(GmmModel model, const RealMatrix& frames,
                   const EmOptions& opts, EmTrace* trace) {
  check_frames(frames);
  model.validate();
  if (model.dim != static_cast<int>(frames.cols)) {
    throw Error(Errc::kDimensionMismatch, "frame dim does not match model");
  }
  const std::size_t n = frames.rows, dim = frames.cols;
  const std::size_t K = static_cast<std::size_t>(model.n_components);
  const std::vector<double> fallback_var = dataset_variance(frames, opts.variance_floor);
  const double rescue_mass = 1e-8 * static_cast<double>(n);

  if (trace) {
    trace->mean_log_likelihood.clear();
    trace->converged = false;
  }

  std::vector<double> terms;
  std::vector<double> frame_ll(n);
  double prev_ll = -std::numeric_limits<double>::infinity();

  for (int it = 0; it < opts.max_iter; ++it) {
    MixtureEvaluator eval(model);

    // E-step: responsibilities accumulated straight into M-step statistics.
    std::vector<double> mass(K, 0.0);
    RealMatrix mean_acc(K, dim), sq_acc(K, dim);
    double ll_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lse = eval.log_density(frames.row(i), &terms);
      frame_ll[i] = lse;
      ll_sum += lse;
      for (std::size_t k = 0; k < K; ++k) {
        const double r = std::exp(terms[k] - lse);
        if (r == 0.0) continue;
        mass[k] += r;
        for (std::size_t d = 0; d < dim; ++d) {
          const double x = frames.at(i, d);
          mean_acc.at(k, d) += r * x;
          sq_acc.at(k, d) += r * x * x;
        }
      }
    }
    const double mean_ll = ll_sum / static_cast<double>(n);
    if (trace) trace->mean_log_likelihood.push_back(mean_ll);

    if (it > 0) {
      const double denom = std::max(std::abs(prev_ll), 1e-12);
      if ((mean_ll - prev_ll) / denom < opts.rel_tol) {
        if (trace) trace->converged = true;
        break;  // model that produced mean_ll is already current
      }
    }
    prev_ll = mean_ll;

    // M-step with empty-component rescue: a starved component restarts at
    // the frame the current mixture explains worst.
    for (std::size_t k = 0; k < K; ++k) {
      if (mass[k] < rescue_mass) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < n; ++i) {
          if (frame_ll[i] < frame_ll[worst]) worst = i;
        }
        mass[k] = 1.0;
        for (std::size_t d = 0; d < dim; ++d) {
          model.means.at(k, d) = frames.at(worst, d);
          model.variances.at(k, d) = fallback_var[d];
        }
      } else {
        for (std::size_t d = 0; d < dim; ++d) {
          const double m = mean_acc.at(k, d) / mass[k];
          model.means.at(k, d) = m;
          model.variances.at(k, d) =
              std::max(sq_acc.at(k, d) / mass[k] - m * m, opts.variance_floor);
        }
      }
    }
    double total_mass = 0.0;
    for (double m : mass) total_mass += m;
    for (std::size_t k = 0; k < K; ++k) model.weights[k] = mass[k] / total_mass;
  }
  return model;
}

GmmModel fit_em(const RealMatrix& frames, int n_components, std::uint64_t seed,
                const EmOptions& opts, EmTrace* trace) {
  GmmModel init = kmeanspp_init(frames, n_components, seed, opts);
  return em_refine(std::move(init), frames, opts, trace);
}

double log_density(const GmmModel& model, std::span<const double> frame) {
  if (frame.size() != static_cast<std::size_t>(model.dim)) {
    throw Error(Errc::kDimensionMismatch, "frame length does not match model dim");
  }
  return MixtureEvaluator(model).log_density(frame, nullptr);
}

double score_features(const DetectorModel& detector, const FeatureMatrix& feat) {
  if (feat.frames() == 0) {
    throw Error(Errc::kEmptyInput, "cannot score an empty feature matrix");
  }
  if (feat.dims() != static_cast<std::size_t>(detector.bona_model.dim)) {
    throw Error(Errc::kDimensionMismatch, "feature dims do not match detector");
  }
  const MixtureEvaluator bona(detector.bona_model);
  const MixtureEvaluator spoof(detector.spoof_model);
  double acc = 0.0;
  for (std::size_t f = 0; f < feat.frames(); ++f) {
    const auto row = feat.values.row(f);
    acc += spoof.log_density(row, nullptr) - bona.log_density(row, nullptr);
  }
  return acc / static_cast<double>(feat.frames());
}

DetectorModel train_detector(const RealMatrix& bona_frames,
                             const RealMatrix& spoof_frames,
                             const FeatureConfig& cfg, std::uint64_t seed,
                             const TrainOptions& opts) {
  if (bona_frames.cols != spoof_frames.cols) {
    throw Error(Errc::kDimensionMismatch, "class pools disagree on feature dim");
  }
  if (bona_frames.cols != static_cast<std::size_t>(cfg.output_dims())) {
    throw Error(Errc::kDimensionMismatch,
                "feature pools do not match the feature config dims");
  }
  DetectorModel det;
  det.feature_config = cfg;
  det.dataset_id = opts.dataset_id;
  det.seed = seed;
  det.bona_model =
      fit_em(bona_frames, opts.n_components, mix_seed(seed), opts.em);
  det.spoof_model =
      fit_em(spoof_frames, opts.n_components, mix_seed(seed + 1), opts.em);
  return det;
}

namespace {

using nlohmann::json;

json config_to_json(const FeatureConfig& cfg) {
  return json{{"kind", feature_kind_name(cfg.kind)},
              {"window_ms", cfg.window_ms},
              {"hop_ms", cfg.hop_ms},
              {"n_fft", cfg.n_fft},
              {"n_filters", cfg.n_filters},
              {"n_coeffs", cfg.n_coeffs},
              {"f_min_hz", cfg.f_min_hz},
              {"f_max_hz", cfg.f_max_hz},
              {"delta_window", cfg.delta_window},
              {"log_floor", cfg.log_floor},
              {"window_fn", window_fn_name(cfg.window_fn)}};
}

FeatureConfig config_from_json(const json& j) {
  FeatureConfig cfg;
  cfg.kind = parse_feature_kind(j.at("kind").get<std::string>());
  cfg.window_ms = j.at("window_ms").get<double>();
  cfg.hop_ms = j.at("hop_ms").get<double>();
  cfg.n_fft = j.at("n_fft").get<int>();
  cfg.n_filters = j.at("n_filters").get<int>();
  cfg.n_coeffs = j.at("n_coeffs").get<int>();
  cfg.f_min_hz = j.at("f_min_hz").get<double>();
  cfg.f_max_hz = j.at("f_max_hz").get<double>();
  cfg.delta_window = j.at("delta_window").get<int>();
  cfg.log_floor = j.at("log_floor").get<double>();
  cfg.window_fn = parse_window_fn(j.at("window_fn").get<std::string>());
  return cfg;
}

json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix matrix_from_json(const json& j) {
  RealMatrix m(j.size(), j.empty() ? 0 : j.front().size());
  for (std::size_t r = 0; r < m.rows; ++r) {
    const json& row = j.at(r);
    if (row.size() != m.cols) {
      throw Error(Errc::kBadFormat, "ragged matrix in model file");
    }
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = row.at(c).get<double>();
  }
  return m;
}

json gmm_to_json(const GmmModel& g) {
  return json{{"n_components", g.n_components},
              {"dim", g.dim},
              {"weights", g.weights},
              {"means", matrix_to_json(g.means)},
              {"variances", matrix_to_json(g.variances)}};
}

GmmModel gmm_from_json(const json& j) {
  GmmModel g;
  g.n_components = j.at("n_components").get<int>();
  g.dim = j.at("dim").get<int>();
  g.weights = j.at("weights").get<std::vector<double>>();
  g.means = matrix_from_json(j.at("means"));
  g.variances = matrix_from_json(j.at("variances"));
  g.validate();
  return g;
}

}  // namespace

void save_detector(const std::string& path, const DetectorModel& detector) {
  json j{{"format", "ssdbias-detector"},
         {"version", 1},
         {"seed", detector.seed},
         {"dataset_id", detector.dataset_id},
         {"feature_config", config_to_json(detector.feature_config)},
         {"bona", gmm_to_json(detector.bona_model)},
         {"spoof", gmm_to_json(detector.spoof_model)}};
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::kIoError, "cannot create model file: " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw Error(Errc::kIoError, "write failed: " + path);
  }
}

DetectorModel load_detector(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kIoError, "cannot open model file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::kBadFormat, "model file " + path + ": " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "ssdbias-detector") {
      throw Error(Errc::kBadFormat, "not a detector model file: " + path);
    }
    DetectorModel det;
    det.seed = j.at("seed").get<std::uint64_t>();
    det.dataset_id = j.value("dataset_id", std::string());
    det.feature_config = config_from_json(j.at("feature_config"));
    det.bona_model = gmm_from_json(j.at("bona"));
    det.spoof_model = gmm_from_json(j.at("spoof"));
    if (det.bona_model.dim != det.spoof_model.dim) {
      throw Error(Errc::kBadFormat, "class models disagree on dim: " + path);
    }
    return det;
  } catch (const json::exception& e) {
    throw Error(Errc::kBadFormat, "model file " + path + ": " + e.what());
  }
}

}  // namespace ssdbias
