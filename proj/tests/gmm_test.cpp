// ssdbias/tests/gmm_test.cpp

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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ssdbias/error.hpp"

namespace ssdbias {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

struct TempPath {
  std::string path;
  explicit TempPath(std::string p) : path(std::move(p)) {}
  ~TempPath() { std::remove(path.c_str()); }
};

GmmModel single_gaussian(std::vector<double> mean, std::vector<double> var) {
  GmmModel g;
  g.n_components = 1;
  g.dim = static_cast<int>(mean.size());
  g.weights = {1.0};
  g.means = RealMatrix(1, mean.size());
  g.variances = RealMatrix(1, mean.size());
  for (std::size_t d = 0; d < mean.size(); ++d) {
    g.means.at(0, d) = mean[d];
    g.variances.at(0, d) = var[d];
  }
  return g;
}

// Density by direct per-component summation in linear space; no log-sum-exp.
double direct_log_density(const GmmModel& g, const std::vector<double>& x) {
  double p = 0.0;
  for (int k = 0; k < g.n_components; ++k) {
    double term = g.weights[static_cast<std::size_t>(k)];
    for (int d = 0; d < g.dim; ++d) {
      const double s2 = g.variances.at(k, d);
      const double c = x[static_cast<std::size_t>(d)] - g.means.at(k, d);
      term *= std::exp(-0.5 * c * c / s2) / std::sqrt(2.0 * M_PI * s2);
    }
    p += term;
  }
  return std::log(p);
}

TEST_CASE("log density matches the closed form for one gaussian") {
  const GmmModel std1d = single_gaussian({0.0}, {1.0});
  const double at_mean = log_density(std1d, std::vector<double>{0.0});
  CHECK(at_mean == doctest::Approx(-0.5 * kLog2Pi).epsilon(1e-14));
  CHECK(at_mean == doctest::Approx(-0.91893853320467274).epsilon(1e-14));
  CHECK(log_density(std1d, std::vector<double>{2.0}) ==
        doctest::Approx(-0.5 * kLog2Pi - 2.0).epsilon(1e-14));

  // Diagonal multivariate factorizes across dimensions.
  const GmmModel g3 = single_gaussian({1.0, -2.0, 0.5}, {1.0, 4.0, 0.25});
  const std::vector<double> x{1.5, -1.0, 0.0};
  double expected = 0.0;
  const double mu[3] = {1.0, -2.0, 0.5};
  const double s2[3] = {1.0, 4.0, 0.25};
  for (int d = 0; d < 3; ++d) {
    const double c = x[static_cast<std::size_t>(d)] - mu[d];
    expected += -0.5 * (kLog2Pi + std::log(s2[d])) - 0.5 * c * c / s2[d];
  }
  CHECK(log_density(g3, x) == doctest::Approx(expected).epsilon(1e-14));

  CHECK_THROWS_AS(log_density(g3, std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("log density matches direct summation on random mixtures") {
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int K = 1 + static_cast<int>(rng() % 16);
    const int dim = 1 + static_cast<int>(rng() % 8);
    GmmModel g;
    g.n_components = K;
    g.dim = dim;
    g.means = RealMatrix(static_cast<std::size_t>(K), static_cast<std::size_t>(dim));
    g.variances =
        RealMatrix(static_cast<std::size_t>(K), static_cast<std::size_t>(dim));
    g.weights.resize(static_cast<std::size_t>(K));
    double wsum = 0.0;
    for (int k = 0; k < K; ++k) {
      g.weights[static_cast<std::size_t>(k)] = 0.05 + unit(rng);
      wsum += g.weights[static_cast<std::size_t>(k)];
      for (int d = 0; d < dim; ++d) {
        g.means.at(k, d) = 6.0 * unit(rng) - 3.0;
        g.variances.at(k, d) = 0.5 + 1.5 * unit(rng);
      }
    }
    for (double& w : g.weights) w /= wsum;

    for (int probe = 0; probe < 5; ++probe) {
      const int near = static_cast<int>(rng() % static_cast<unsigned>(K));
      std::vector<double> x(static_cast<std::size_t>(dim));
      for (int d = 0; d < dim; ++d) {
        x[static_cast<std::size_t>(d)] = g.means.at(near, d) + unit(rng) - 0.5;
      }
      const double got = log_density(g, x);
      const double want = direct_log_density(g, x);
      CHECK(std::abs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("model validation enforces the invariants") {
  GmmModel good = single_gaussian({0.0, 1.0}, {1.0, 2.0});
  good.validate();

  GmmModel bad = good;
  bad.weights = {0.7};  // does not sum to 1
  bad.weights[0] = 0.7;
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = good;
  bad.variances.at(0, 1) = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = good;
  bad.means = RealMatrix(2, 2);  // wrong component count
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = good;
  bad.n_components = 0;
  CHECK_THROWS_AS(bad.validate(), Error);

  GmmModel negw = good;
  negw.weights = {-0.5};
  try {
    negw.validate();
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadConfig);
  }
}

RealMatrix random_frames(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealMatrix frames(n, dim);
  // A few latent blobs so the data has real cluster structure.
  const int blobs = 1 + static_cast<int>(rng() % 4);
  std::vector<std::vector<double>> centers(static_cast<std::size_t>(blobs),
                                           std::vector<double>(dim));
  for (auto& c : centers) {
    for (double& v : c) v = 10.0 * unit(rng) - 5.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = centers[rng() % centers.size()];
    for (std::size_t d = 0; d < dim; ++d) {
      frames.at(i, d) = c[d] + noise(rng);
    }
  }
  return frames;
}

TEST_CASE("em keeps the likelihood non-decreasing") {
  std::mt19937_64 rng(271828);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 1 + rng() % 8;
    const int K = 1 + static_cast<int>(rng() % 16);
    const std::size_t n = static_cast<std::size_t>(K) + 20 + rng() % 180;
    const RealMatrix frames = random_frames(rng, n, dim);

    EmOptions opts;
    opts.max_iter = 30;
    EmTrace trace;
    const GmmModel model = fit_em(frames, K, rng(), opts, &trace);

    REQUIRE(!trace.mean_log_likelihood.empty());
    for (std::size_t i = 1; i < trace.mean_log_likelihood.size(); ++i) {
      CHECK(trace.mean_log_likelihood[i] >=
            trace.mean_log_likelihood[i - 1] - 1e-8);
    }

    model.validate();
    double wsum = 0.0;
    for (double w : model.weights) {
      CHECK(w >= 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-9);
    for (double v : model.variances.values) {
      CHECK(v >= opts.variance_floor);
    }
  }
}

TEST_CASE("em recovers a planted two-component mixture") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t n = 10000;
  RealMatrix frames(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double center = (i % 2 == 0) ? -5.0 : 5.0;
    frames.at(i, 0) = center + noise(rng);
  }

  EmTrace trace;
  const GmmModel model = fit_em(frames, 2, 42, EmOptions{}, &trace);
  REQUIRE(model.n_components == 2);
  double lo = model.means.at(0, 0), hi = model.means.at(1, 0);
  if (lo > hi) std::swap(lo, hi);
  CHECK(std::abs(lo - (-5.0)) < 0.1);
  CHECK(std::abs(hi - 5.0) < 0.1);
  CHECK(model.weights[0] == doctest::Approx(0.5).epsilon(0.05));
  CHECK(model.variances.at(0, 0) == doctest::Approx(1.0).epsilon(0.2));
  CHECK(model.variances.at(1, 0) == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("degenerate training inputs are rejected with distinct codes") {
  RealMatrix frames(3, 2);
  frames.at(0, 0) = 1.0;
  frames.at(1, 1) = 2.0;
  frames.at(2, 0) = -1.0;

  try {
    fit_em(frames, 4, 0);
    FAIL("expected insufficient-data");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInsufficientData);
  }

  try {
    fit_em(frames, 0, 0);
    FAIL("expected bad-config");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadConfig);
  }

  RealMatrix with_nan = frames;
  with_nan.at(1, 0) = std::nan("");
  try {
    fit_em(with_nan, 2, 0);
    FAIL("expected bad-config");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadConfig);
  }

  RealMatrix empty;
  try {
    fit_em(empty, 1, 0);
    FAIL("expected empty-input");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kEmptyInput);
  }
}

TEST_CASE("duplicating the dataset leaves em fixed points unchanged") {
  std::mt19937_64 rng(17);
  const RealMatrix frames = random_frames(rng, 120, 3);
  RealMatrix doubled(240, 3);
  for (std::size_t i = 0; i < 120; ++i) {
    for (std::size_t d = 0; d < 3; ++d) {
      doubled.at(i, d) = frames.at(i, d);
      doubled.at(i + 120, d) = frames.at(i, d);
    }
  }

  const GmmModel init = kmeanspp_init(frames, 4, 99);
  EmOptions opts;
  opts.max_iter = 12;
  opts.rel_tol = -1.0;  // never converge early: both runs do all 12 iterations
  const GmmModel a = em_refine(init, frames, opts);
  const GmmModel b = em_refine(init, doubled, opts);

  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(a.weights[k] == doctest::Approx(b.weights[k]).epsilon(1e-9));
    for (std::size_t d = 0; d < 3; ++d) {
      CHECK(a.means.at(k, d) == doctest::Approx(b.means.at(k, d)).epsilon(1e-9));
      CHECK(a.variances.at(k, d) ==
            doctest::Approx(b.variances.at(k, d)).epsilon(1e-9));
    }
  }
}

TEST_CASE("initialization is deterministic in the seed") {
  std::mt19937_64 rng(23);
  const RealMatrix frames = random_frames(rng, 200, 4);
  const GmmModel a = kmeanspp_init(frames, 8, 1234);
  const GmmModel b = kmeanspp_init(frames, 8, 1234);
  CHECK(a.weights == b.weights);
  CHECK(a.means.values == b.means.values);
  CHECK(a.variances.values == b.variances.values);
  a.validate();

  const GmmModel c = kmeanspp_init(frames, 8, 1235);
  c.validate();  // a different seed still yields a sound model
}

TEST_CASE("identical class models score exactly zero") {
  const GmmModel g = single_gaussian({0.5, -0.5}, {1.0, 2.0});
  DetectorModel det;
  det.bona_model = g;
  det.spoof_model = g;
  det.feature_config = FeatureConfig::lfcc_defaults();

  FeatureMatrix feat;
  feat.values = RealMatrix(5, 2);
  for (std::size_t i = 0; i < 5; ++i) {
    feat.values.at(i, 0) = 0.3 * static_cast<double>(i);
    feat.values.at(i, 1) = -1.0 + 0.2 * static_cast<double>(i);
  }
  CHECK(score_features(det, feat) == 0.0);
}

TEST_CASE("scores rank by the likelier class and average over frames") {
  DetectorModel det;
  det.bona_model = single_gaussian({-5.0}, {1.0});
  det.spoof_model = single_gaussian({5.0}, {1.0});

  FeatureMatrix synth;
  synth.values = RealMatrix(1, 1);
  synth.values.at(0, 0) = 5.0;
  CHECK(score_features(det, synth) > 0.0);

  FeatureMatrix bona;
  bona.values = RealMatrix(1, 1);
  bona.values.at(0, 0) = -5.0;
  CHECK(score_features(det, bona) < 0.0);

  // Closed form: equal variances cancel constants, so a frame at x scores
  // ((x+5)^2 - (x-5)^2)/2 = 10x; the utterance score is the frame mean.
  FeatureMatrix pair;
  pair.values = RealMatrix(2, 1);
  pair.values.at(0, 0) = 1.0;
  pair.values.at(1, 0) = -1.0;
  CHECK(std::abs(score_features(det, pair)) < 1e-12);
  FeatureMatrix one;
  one.values = RealMatrix(1, 1);
  one.values.at(0, 0) = 1.0;
  CHECK(score_features(det, one) == doctest::Approx(10.0).epsilon(1e-12));

  FeatureMatrix empty;
  CHECK_THROWS_AS(score_features(det, empty), Error);
  FeatureMatrix wrong;
  wrong.values = RealMatrix(1, 3);
  CHECK_THROWS_AS(score_features(det, wrong), Error);
}

TEST_CASE("trained detectors separate the classes they were fit on") {
  std::mt19937_64 rng(1001);
  std::normal_distribution<double> noise(0.0, 0.5);
  RealMatrix bona(300, 2), spoof(300, 2);
  for (std::size_t i = 0; i < 300; ++i) {
    bona.at(i, 0) = -2.0 + noise(rng);
    bona.at(i, 1) = 0.0 + noise(rng);
    spoof.at(i, 0) = 2.0 + noise(rng);
    spoof.at(i, 1) = 1.0 + noise(rng);
  }

  FeatureConfig cfg = FeatureConfig::lfcc_defaults();
  cfg.n_coeffs = 2;  // 2 static coefficients: pretend dims match the pools
  cfg.n_filters = 2;
  REQUIRE(cfg.output_dims() == 6);
  // Pools carry raw 2-D points, so use a config whose dims agree instead.
  FeatureConfig cfg2 = cfg;
  cfg2.kind = FeatureKind::kLogSpec;
  cfg2.n_fft = 2;  // output_dims = 2
  REQUIRE(cfg2.output_dims() == 2);

  TrainOptions train;
  train.n_components = 4;
  train.dataset_id = "unit-fixture";
  const DetectorModel det = train_detector(bona, spoof, cfg2, 7, train);
  CHECK(det.seed == 7);
  CHECK(det.dataset_id == "unit-fixture");

  FeatureMatrix probe_bona;
  probe_bona.values = RealMatrix(1, 2);
  probe_bona.values.at(0, 0) = -2.0;
  probe_bona.values.at(0, 1) = 0.0;
  FeatureMatrix probe_spoof;
  probe_spoof.values = RealMatrix(1, 2);
  probe_spoof.values.at(0, 0) = 2.0;
  probe_spoof.values.at(0, 1) = 1.0;
  CHECK(score_features(det, probe_bona) < 0.0);
  CHECK(score_features(det, probe_spoof) > 0.0);

  // Same seed, same data: bit-identical retrain.
  const DetectorModel det2 = train_detector(bona, spoof, cfg2, 7, train);
  CHECK(det.bona_model.means.values == det2.bona_model.means.values);
  CHECK(det.spoof_model.variances.values == det2.spoof_model.variances.values);

  RealMatrix mismatched(10, 3);
  CHECK_THROWS_AS(train_detector(bona, mismatched, cfg2, 7, train), Error);
}

TEST_CASE("model files round trip bit-exactly") {
  std::mt19937_64 rng(4242);
  const RealMatrix bona = random_frames(rng, 80, 2);
  const RealMatrix spoof = random_frames(rng, 80, 2);
  FeatureConfig cfg = FeatureConfig::logspec_defaults();
  cfg.n_fft = 2;
  TrainOptions train;
  train.n_components = 3;
  train.dataset_id = "roundtrip";
  const DetectorModel det = train_detector(bona, spoof, cfg, 11, train);

  const TempPath p("gmm_model.json");
  save_detector(p.path, det);
  const DetectorModel back = load_detector(p.path);
  CHECK(back.seed == det.seed);
  CHECK(back.dataset_id == det.dataset_id);
  CHECK(back.feature_config == det.feature_config);
  CHECK(back.bona_model.weights == det.bona_model.weights);
  CHECK(back.bona_model.means.values == det.bona_model.means.values);
  CHECK(back.bona_model.variances.values == det.bona_model.variances.values);
  CHECK(back.spoof_model.weights == det.spoof_model.weights);
  CHECK(back.spoof_model.means.values == det.spoof_model.means.values);
  CHECK(back.spoof_model.variances.values == det.spoof_model.variances.values);

  try {
    load_detector("missing_model.json");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kIoError);
  }

  const TempPath junk("gmm_junk.json");
  {
    std::ofstream out(junk.path);
    out << "{\"format\": \"something-else\"}\n";
  }
  try {
    load_detector(junk.path);
    FAIL("expected format error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadFormat);
  }

  const TempPath garbled("gmm_garbled.json");
  {
    std::ofstream out(garbled.path);
    out << "not json at all\n";
  }
  try {
    load_detector(garbled.path);
    FAIL("expected format error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadFormat);
  }
}

}  // namespace
}  // namespace ssdbias
