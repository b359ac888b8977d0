// ssdbias/tests/features_test.cpp

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

#include "ssdbias/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ssdbias/dsp.hpp"
#include "ssdbias/error.hpp"

namespace ssdbias {
namespace {

AudioBuffer mono_buffer(int rate, std::vector<double> samples) {
  AudioBuffer buf;
  buf.sample_rate = rate;
  buf.channel_count = 1;
  buf.source_channels = 1;
  buf.samples = std::move(samples);
  return buf;
}

AudioBuffer one_second(int rate) {
  std::vector<double> samples(static_cast<std::size_t>(rate));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = 0.25 * std::sin(0.013 * static_cast<double>(i));
  }
  return mono_buffer(rate, std::move(samples));
}

struct TempPath {
  std::string path;
  explicit TempPath(std::string p) : path(std::move(p)) {}
  ~TempPath() { std::remove(path.c_str()); }
};

TEST_CASE("feature kind names round trip") {
  CHECK(parse_feature_kind("lfcc") == FeatureKind::kLfcc);
  CHECK(parse_feature_kind("mfcc") == FeatureKind::kMfcc);
  CHECK(parse_feature_kind("logspec") == FeatureKind::kLogSpec);
  CHECK(feature_kind_name(FeatureKind::kMfcc) == std::string("mfcc"));
  CHECK_THROWS_AS(parse_feature_kind("plp"), Error);
}

TEST_CASE("default configurations carry the documented geometry") {
  const FeatureConfig lfcc = FeatureConfig::lfcc_defaults();
  CHECK(lfcc.output_dims() == 60);
  CHECK(lfcc.window_samples(16000) == 480);
  CHECK(lfcc.hop_samples(16000) == 240);
  lfcc.validate(16000);

  const FeatureConfig mfcc = FeatureConfig::mfcc_defaults();
  CHECK(mfcc.output_dims() == 72);
  CHECK(mfcc.window_samples(16000) == 400);
  CHECK(mfcc.hop_samples(16000) == 160);
  mfcc.validate(16000);

  const FeatureConfig spec = FeatureConfig::logspec_defaults();
  CHECK(spec.output_dims() == 1025);
  CHECK(spec.window_samples(16000) == 2048);
  CHECK(spec.hop_samples(16000) == 512);
  spec.validate(16000);
}

TEST_CASE("one second of 16 kHz audio yields the documented shapes") {
  const AudioBuffer buf = one_second(16000);

  const FeatureMatrix lfcc = extract_features(buf, FeatureConfig::lfcc_defaults());
  CHECK(lfcc.frames() == 65);  // 1 + (16000 - 480) / 240
  CHECK(lfcc.dims() == 60);
  CHECK(lfcc.kind == FeatureKind::kLfcc);
  CHECK(lfcc.frame_hop_ms == 15.0);

  const FeatureMatrix mfcc = extract_features(buf, FeatureConfig::mfcc_defaults());
  CHECK(mfcc.frames() == 98);  // 1 + (16000 - 400) / 160
  CHECK(mfcc.dims() == 72);

  const FeatureMatrix spec =
      extract_features(buf, FeatureConfig::logspec_defaults());
  CHECK(spec.frames() == 28);  // 1 + (16000 - 2048) / 512
  CHECK(spec.dims() == 1025);
}

TEST_CASE("short input zero-pads to exactly one frame") {
  const AudioBuffer buf = mono_buffer(16000, std::vector<double>(100, 0.5));
  const FeatureMatrix lfcc = extract_features(buf, FeatureConfig::lfcc_defaults());
  CHECK(lfcc.frames() == 1);
  CHECK(lfcc.dims() == 60);
}

TEST_CASE("frame count follows the formula over random geometries") {
  std::mt19937_64 rng(20260822);
  const int ffts[4] = {8, 16, 32, 64};
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_fft = ffts[rng() % 4];
    const int window = 1 + static_cast<int>(rng() % static_cast<unsigned>(n_fft));
    const int hop = 1 + static_cast<int>(rng() % static_cast<unsigned>(2 * window));
    const std::size_t len = rng() % 3000;
    const AudioBuffer buf = mono_buffer(16000, std::vector<double>(len, 0.1));
    const RealMatrix power =
        stft_power(buf, window, hop, n_fft, WindowFn::kRectangular);
    const std::size_t expected =
        len >= static_cast<std::size_t>(window)
            ? 1 + (len - static_cast<std::size_t>(window)) /
                      static_cast<std::size_t>(hop)
            : 1;
    REQUIRE(power.rows == expected);
    REQUIRE(power.cols == static_cast<std::size_t>(n_fft) / 2 + 1);
  }
}

TEST_CASE("stft places tones in the right bins") {
  // DC with a rectangular window: bin 0 holds (sum of samples)^2.
  const AudioBuffer dc = mono_buffer(8, std::vector<double>(8, 1.0));
  const RealMatrix p0 = stft_power(dc, 8, 8, 8, WindowFn::kRectangular);
  REQUIRE(p0.rows == 1);
  CHECK(p0.at(0, 0) == doctest::Approx(64.0).epsilon(1e-12));
  for (std::size_t b = 1; b <= 4; ++b) {
    CHECK(std::abs(p0.at(0, b)) < 1e-20);
  }

  // cos(2 pi 2 n / 8) concentrates in bin 2 with magnitude N/2 = 4.
  std::vector<double> tone(8);
  for (int n = 0; n < 8; ++n) tone[n] = std::cos(2.0 * M_PI * 2.0 * n / 8.0);
  const RealMatrix p2 =
      stft_power(mono_buffer(8, tone), 8, 8, 8, WindowFn::kRectangular);
  CHECK(p2.at(0, 2) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(std::abs(p2.at(0, 0)) < 1e-24);
  CHECK(std::abs(p2.at(0, 1)) < 1e-24);
  CHECK(std::abs(p2.at(0, 3)) < 1e-24);

  CHECK_THROWS_AS(stft_power(dc, 8, 0, 8, WindowFn::kRectangular), Error);
  CHECK_THROWS_AS(stft_power(dc, 16, 8, 8, WindowFn::kRectangular), Error);
  CHECK_THROWS_AS(stft_power(dc, 8, 8, 12, WindowFn::kRectangular), Error);
}

TEST_CASE("analysis windows match the textbook forms") {
  const auto ham = dsp::make_window(WindowFn::kHamming, 9);
  CHECK(ham[0] == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(ham[8] == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(ham[4] == doctest::Approx(1.0).epsilon(1e-12));

  const auto han = dsp::make_window(WindowFn::kHanning, 9);
  CHECK(std::abs(han[0]) < 1e-15);
  CHECK(han[4] == doctest::Approx(1.0).epsilon(1e-12));

  const auto rect = dsp::make_window(WindowFn::kRectangular, 5);
  for (double v : rect) CHECK(v == 1.0);
  CHECK(dsp::make_window(WindowFn::kHanning, 1) == std::vector<double>{1.0});
}

TEST_CASE("dct matrix is orthonormal and inverts by transpose") {
  const std::size_t n = 32;
  const RealMatrix d = dsp::dct2_matrix(n, n);

  // D D^T = I.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += d.at(i, k) * d.at(j, k);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }

  // Forward then transpose recovers arbitrary vectors to 1e-9.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(n), y(n, 0.0), back(n, 0.0);
    for (double& v : x) v = dist(rng);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t t = 0; t < n; ++t) y[k] += d.at(k, t) * x[t];
    }
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t k = 0; k < n; ++k) back[t] += d.at(k, t) * y[k];
    }
    for (std::size_t t = 0; t < n; ++t) {
      CHECK(std::abs(back[t] - x[t]) < 1e-9);
    }
  }

  // Closed forms: a constant vector maps to coefficient zero only, and the
  // sampled cosine at index k0 maps to sqrt(n/2) at k0 only.
  std::vector<double> ones(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    double c = 0.0;
    for (std::size_t t = 0; t < n; ++t) c += d.at(k, t) * ones[t];
    if (k == 0) {
      CHECK(c == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-12));
    } else {
      CHECK(std::abs(c) < 1e-12);
    }
  }
  const std::size_t k0 = 5;
  std::vector<double> cosv(n);
  for (std::size_t t = 0; t < n; ++t) {
    cosv[t] = std::cos(M_PI * (static_cast<double>(t) + 0.5) *
                       static_cast<double>(k0) / static_cast<double>(n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    double c = 0.0;
    for (std::size_t t = 0; t < n; ++t) c += d.at(k, t) * cosv[t];
    if (k == k0) {
      CHECK(c == doctest::Approx(std::sqrt(n / 2.0)).epsilon(1e-12));
    } else {
      CHECK(std::abs(c) < 1e-12);
    }
  }

  // Truncation keeps the leading rows unchanged.
  const RealMatrix trunc = dsp::dct2_matrix(4, n);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      CHECK(trunc.at(k, t) == d.at(k, t));
    }
  }
}

TEST_CASE("filterbank triangles hit exact values on aligned bins") {
  // Bin spacing 1 Hz, boundaries at 0,1,2,3,4: each filter peaks on one bin.
  const FilterBank fb = linear_filterbank(3, 8, 8, 0.0, 4.0);
  REQUIRE(fb.weights.rows == 3);
  REQUIRE(fb.weights.cols == 5);
  const double expected[3][5] = {
      {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t b = 0; b < 5; ++b) {
      CHECK(fb.weights.at(i, b) == expected[i][b]);
    }
  }
  CHECK(fb.center_hz == std::vector<double>{1.0, 2.0, 3.0});
}

void check_filterbank_shape(const FilterBank& fb, int n_fft, int rate) {
  for (std::size_t i = 0; i < fb.weights.rows; ++i) {
    // Weights live in [0, 1] and nonzero entries form one contiguous run.
    std::size_t first = fb.weights.cols, last = 0;
    for (std::size_t b = 0; b < fb.weights.cols; ++b) {
      const double w = fb.weights.at(i, b);
      CHECK(w >= 0.0);
      CHECK(w <= 1.0 + 1e-12);
      if (w > 0.0) {
        first = std::min(first, b);
        last = std::max(last, b);
      }
    }
    REQUIRE(first <= last);  // every filter covers at least one bin
    for (std::size_t b = first; b <= last; ++b) {
      CHECK(fb.weights.at(i, b) > 0.0);
    }
    if (i + 1 < fb.weights.rows) {
      CHECK(fb.center_hz[i] < fb.center_hz[i + 1]);
    }
  }

  // Adjacent triangles are complementary, so the filterbank sums to one at
  // every bin between the first and last centers.
  for (std::size_t b = 0; b < fb.weights.cols; ++b) {
    const double f = static_cast<double>(b) * rate / n_fft;
    if (f <= fb.center_hz.front() || f >= fb.center_hz.back()) continue;
    double sum = 0.0;
    for (std::size_t i = 0; i < fb.weights.rows; ++i) sum += fb.weights.at(i, b);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("filterbanks tile their bands") {
  check_filterbank_shape(linear_filterbank(20, 512, 16000, 0.0, 4000.0), 512,
                         16000);
  check_filterbank_shape(mel_filterbank(40, 512, 16000, 0.0, 8000.0), 512,
                         16000);

  // Linear boundaries are equally spaced in Hz.
  const FilterBank lin = linear_filterbank(20, 512, 16000, 0.0, 4000.0);
  const double hz_step = 4000.0 / 21.0;
  for (std::size_t i = 0; i < lin.center_hz.size(); ++i) {
    CHECK(lin.center_hz[i] ==
          doctest::Approx(hz_step * static_cast<double>(i + 1)).epsilon(1e-12));
  }

  // Mel boundaries are equally spaced on the mel scale.
  const FilterBank mel = mel_filterbank(40, 512, 16000, 0.0, 8000.0);
  const double mel_step = hz_to_mel(8000.0) / 41.0;
  for (std::size_t i = 0; i < mel.center_hz.size(); ++i) {
    CHECK(hz_to_mel(mel.center_hz[i]) ==
          doctest::Approx(mel_step * static_cast<double>(i + 1)).epsilon(1e-9));
  }

  CHECK_THROWS_AS(linear_filterbank(0, 512, 16000, 0.0, 4000.0), Error);
  CHECK_THROWS_AS(linear_filterbank(20, 512, 16000, 4000.0, 4000.0), Error);
  CHECK_THROWS_AS(mel_filterbank(20, 512, 16000, 0.0, 9000.0), Error);
}

TEST_CASE("mel scale fixtures") {
  CHECK(hz_to_mel(0.0) == 0.0);
  CHECK(hz_to_mel(700.0) ==
        doctest::Approx(2595.0 * std::log10(2.0)).epsilon(1e-14));
  for (double hz : {17.0, 440.0, 1234.5, 7999.0}) {
    CHECK(mel_to_hz(hz_to_mel(hz)) == doctest::Approx(hz).epsilon(1e-12));
  }
}

TEST_CASE("cepstra of flat filter energies isolate coefficient zero") {
  FilterBank fb;
  fb.weights = RealMatrix(3, 5);
  fb.weights.at(0, 1) = 1.0;
  fb.weights.at(1, 2) = 1.0;
  fb.weights.at(2, 3) = 1.0;
  fb.center_hz = {1.0, 2.0, 3.0};

  RealMatrix power(2, 5);
  for (std::size_t b = 0; b < 5; ++b) {
    power.at(0, b) = 2.5;
    power.at(1, b) = 0.125;
  }
  const double floor = 1e-10;
  const RealMatrix c = cepstra(power, fb, 3, floor);
  REQUIRE(c.rows == 2);
  REQUIRE(c.cols == 3);
  CHECK(c.at(0, 0) ==
        doctest::Approx(std::sqrt(3.0) * std::log(2.5 + floor)).epsilon(1e-12));
  CHECK(c.at(1, 0) ==
        doctest::Approx(std::sqrt(3.0) * std::log(0.125 + floor)).epsilon(1e-12));
  CHECK(std::abs(c.at(0, 1)) < 1e-12);
  CHECK(std::abs(c.at(0, 2)) < 1e-12);

  RealMatrix wrong(2, 4);
  CHECK_THROWS_AS(cepstra(wrong, fb, 3, floor), Error);
  CHECK_THROWS_AS(cepstra(power, fb, 4, floor), Error);
}

TEST_CASE("delta regression is exact on a ramp") {
  const std::size_t frames = 20, dims = 3;
  FeatureMatrix feat;
  feat.kind = FeatureKind::kLfcc;
  feat.frame_hop_ms = 15.0;
  feat.values = RealMatrix(frames, dims);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t d = 0; d < dims; ++d) {
      feat.values.at(t, d) = 0.5 * static_cast<double>(t) + static_cast<double>(d);
    }
  }
  const FeatureMatrix out = add_deltas(feat, 2);
  REQUIRE(out.frames() == frames);
  REQUIRE(out.dims() == 3 * dims);
  CHECK(out.kind == feat.kind);
  CHECK(out.frame_hop_ms == feat.frame_hop_ms);

  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t d = 0; d < dims; ++d) {
      CHECK(out.values.at(t, d) == feat.values.at(t, d));  // statics copied
    }
  }
  // Interior deltas equal the slope exactly; edge replication halves the
  // first frame's value (numerator covers only the forward half).
  for (std::size_t t = 2; t + 2 < frames; ++t) {
    for (std::size_t d = 0; d < dims; ++d) {
      CHECK(out.values.at(t, dims + d) == 0.5);
    }
  }
  CHECK(out.values.at(0, dims) == 0.25);
  // Delta-deltas vanish where the delta column is already flat.
  for (std::size_t t = 4; t + 4 < frames; ++t) {
    for (std::size_t d = 0; d < dims; ++d) {
      CHECK(out.values.at(t, 2 * dims + d) == 0.0);
    }
  }

  // A single frame has no slope anywhere.
  FeatureMatrix single;
  single.values = RealMatrix(1, 2);
  single.values.at(0, 0) = 3.0;
  single.values.at(0, 1) = -1.0;
  const FeatureMatrix s = add_deltas(single, 2);
  CHECK(s.values.at(0, 2) == 0.0);
  CHECK(s.values.at(0, 4) == 0.0);

  CHECK_THROWS_AS(add_deltas(single, 0), Error);
  FeatureMatrix empty;
  CHECK_THROWS_AS(add_deltas(empty, 2), Error);
}

TEST_CASE("logspec is decibels of power with an additive floor") {
  // Silence hits the floor exactly: 10 log10(1e-10) = -100 dB.
  FeatureConfig cfg = FeatureConfig::logspec_defaults();
  const AudioBuffer silence = mono_buffer(16000, std::vector<double>(4096, 0.0));
  const FeatureMatrix quiet = extract_logspec(silence, cfg);
  REQUIRE(quiet.frames() == 5);  // 1 + (4096 - 2048) / 512
  for (double v : quiet.values.values) {
    CHECK(v == doctest::Approx(-100.0).epsilon(1e-12));
  }

  // DC through a rectangular window lands in bin zero at 20 log10(window).
  cfg.window_fn = WindowFn::kRectangular;
  const AudioBuffer dc = mono_buffer(16000, std::vector<double>(2048, 1.0));
  const FeatureMatrix loud = extract_logspec(dc, cfg);
  REQUIRE(loud.frames() == 1);
  CHECK(loud.values.at(0, 0) ==
        doctest::Approx(10.0 * std::log10(2048.0 * 2048.0 + 1e-10)).epsilon(1e-12));

  // The window must cover the FFT exactly at the buffer's rate.
  const AudioBuffer wrong_rate = mono_buffer(8000, std::vector<double>(4096, 0.0));
  CHECK_THROWS_AS(extract_logspec(wrong_rate, FeatureConfig::logspec_defaults()),
                  Error);
}

TEST_CASE("configuration validation rejects broken geometry") {
  auto expect_bad = [](FeatureConfig cfg, int rate) {
    try {
      cfg.validate(rate);
      FAIL("expected config rejection");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kBadConfig);
    }
  };

  FeatureConfig cfg = FeatureConfig::lfcc_defaults();
  cfg.hop_ms = 40.0;  // hop beyond window
  expect_bad(cfg, 16000);

  cfg = FeatureConfig::lfcc_defaults();
  cfg.n_fft = 500;  // not a power of two
  expect_bad(cfg, 16000);

  cfg = FeatureConfig::lfcc_defaults();
  cfg.window_ms = 40.0;  // 640 samples > 512-point FFT
  expect_bad(cfg, 16000);

  cfg = FeatureConfig::lfcc_defaults();
  cfg.f_max_hz = 9000.0;  // above Nyquist
  expect_bad(cfg, 16000);

  cfg = FeatureConfig::lfcc_defaults();
  cfg.f_min_hz = 4000.0;  // empty band
  expect_bad(cfg, 16000);

  cfg = FeatureConfig::lfcc_defaults();
  cfg.n_coeffs = 21;  // more coefficients than filters
  expect_bad(cfg, 16000);

  cfg = FeatureConfig::lfcc_defaults();
  cfg.hop_ms = 0.001;  // rounds to zero samples
  expect_bad(cfg, 16000);

  expect_bad(FeatureConfig::lfcc_defaults(), 0);

  // Extractors insist on a matching kind tag.
  const AudioBuffer buf = one_second(16000);
  CHECK_THROWS_AS(extract_lfcc(buf, FeatureConfig::mfcc_defaults()), Error);
  CHECK_THROWS_AS(extract_mfcc(buf, FeatureConfig::lfcc_defaults()), Error);
  CHECK_THROWS_AS(extract_logspec(buf, FeatureConfig::lfcc_defaults()), Error);
}

TEST_CASE("feature cache round trips bit-exactly") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  FeatureMatrix feat;
  feat.kind = FeatureKind::kMfcc;
  feat.frame_hop_ms = 10.0;
  feat.values = RealMatrix(17, 72);
  for (double& v : feat.values.values) v = dist(rng);

  const TempPath p("features_cache.feat");
  write_feature_cache(p.path, feat);
  const FeatureMatrix back = read_feature_cache(p.path);
  CHECK(back.kind == FeatureKind::kMfcc);
  CHECK(back.frame_hop_ms == 10.0);
  REQUIRE(back.frames() == 17);
  REQUIRE(back.dims() == 72);
  for (std::size_t i = 0; i < feat.values.values.size(); ++i) {
    CHECK(back.values.values[i] == feat.values.values[i]);
  }

  try {
    read_feature_cache("absent_cache_file.feat");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kIoError);
  }

  const TempPath junk("features_junk.feat");
  {
    std::ofstream out(junk.path, std::ios::binary);
    out << "XXXX not a cache";
  }
  try {
    read_feature_cache(junk.path);
    FAIL("expected format error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadFormat);
  }

  // Bump the version field of a valid file: refused as unsupported.
  const TempPath vers("features_version.feat");
  {
    std::ifstream in(p.path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    bytes[4] = 2;
    std::ofstream out(vers.path, std::ios::binary);
    out << bytes;
  }
  try {
    read_feature_cache(vers.path);
    FAIL("expected unsupported-version error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kUnsupported);
  }

  // Chop the payload: refused as truncated.
  const TempPath trunc("features_trunc.feat");
  {
    std::ifstream in(p.path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    bytes.resize(bytes.size() - 9);
    std::ofstream out(trunc.path, std::ios::binary);
    out << bytes;
  }
  try {
    read_feature_cache(trunc.path);
    FAIL("expected truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBadFormat);
  }
}

TEST_CASE("extraction is deterministic across calls") {
  const AudioBuffer buf = one_second(16000);
  const FeatureConfig cfg = FeatureConfig::lfcc_defaults();
  const FeatureMatrix a = extract_features(buf, cfg);
  const FeatureMatrix b = extract_features(buf, cfg);
  REQUIRE(a.values.values.size() == b.values.values.size());
  for (std::size_t i = 0; i < a.values.values.size(); ++i) {
    CHECK(a.values.values[i] == b.values.values[i]);
  }
}

}  // namespace
}  // namespace ssdbias
