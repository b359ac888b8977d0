// ssdbias/gmm.hpp

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

#ifndef SSDBIAS_GMM_HPP_
#define SSDBIAS_GMM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssdbias/features.hpp"
#include "ssdbias/matrix.hpp"

namespace ssdbias {

// Diagonal-covariance Gaussian mixture.  weights lie on the simplex (sum 1
// within 1e-9); every variance >= the floor it was trained with.
struct GmmModel {
  int n_components = 0;
  int dim = 0;
  std::vector<double> weights;
  RealMatrix means;      // n_components x dim
  RealMatrix variances;  // n_components x dim

  void validate() const;  // throws Errc::kBadConfig on violated invariants
};

struct EmOptions {
  int max_iter = 100;
  double rel_tol = 1e-6;        // relative mean-log-likelihood improvement
  double variance_floor = 1e-6;  // absolute, per dimension
  int kmeans_iters = 10;        // Lloyd iterations after k-means++ seeding
};

// Per-iteration mean log-likelihood trace; non-decreasing within -1e-8 slack.
struct EmTrace {
  std::vector<double> mean_log_likelihood;
  bool converged = false;
};

// k-means++ seeding followed by Lloyd refinement; means from cluster centers,
// variances from per-cluster diagonal spread (floored), weights from counts.
GmmModel kmeanspp_init(const RealMatrix& frames, int n_components,
                       std::uint64_t seed, const EmOptions& opts = {});

// EM from an explicit starting model.  Exposed separately from fit_em so
// invariance properties can be tested under matched initialization.
GmmModel em_refine(GmmModel model, const RealMatrix& frames,
                   const EmOptions& opts = {}, EmTrace* trace = nullptr);

// kmeanspp_init + em_refine.  Throws Errc::kInsufficientData when
// N < n_components and Errc::kBadConfig on non-finite frames.
GmmModel fit_em(const RealMatrix& frames, int n_components, std::uint64_t seed,
                const EmOptions& opts = {}, EmTrace* trace = nullptr);

// log sum_k w_k N(frame; mu_k, diag sigma2_k), evaluated via log-sum-exp.
// Finite for every finite frame thanks to the variance floor.
double log_density(const GmmModel& model, std::span<const double> frame);

// Two-class detector: one mixture per class over the same feature space.
struct DetectorModel {
  GmmModel bona_model;
  GmmModel spoof_model;
  FeatureConfig feature_config;
  std::string dataset_id;
  std::uint64_t seed = 0;
};

struct TrainOptions {
  int n_components = 512;
  EmOptions em;
  std::string dataset_id;
};

// Mean over frames of log p(frame|spoof) - log p(frame|bona).
// Higher => synthetic; thresholding at 0 is the most-probable-class rule.
double score_features(const DetectorModel& detector, const FeatureMatrix& feat);

// Fits the two class models with sub-seeds derived from `seed` (bona first).
DetectorModel train_detector(const RealMatrix& bona_frames,
                             const RealMatrix& spoof_frames,
                             const FeatureConfig& cfg, std::uint64_t seed,
                             const TrainOptions& opts = {});

// JSON model file; doubles serialized losslessly (round-trips bit-exactly).
void save_detector(const std::string& path, const DetectorModel& detector);
DetectorModel load_detector(const std::string& path);

}  // namespace ssdbias

#endif  // SSDBIAS_GMM_HPP_
