// ssdbias/features.hpp

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

#ifndef SSDBIAS_FEATURES_HPP_
#define SSDBIAS_FEATURES_HPP_

#include <cstdint>
#include <string>

#include "ssdbias/audio.hpp"
#include "ssdbias/dsp.hpp"
#include "ssdbias/matrix.hpp"

namespace ssdbias {

enum class FeatureKind : std::uint32_t { kLfcc = 0, kMfcc = 1, kLogSpec = 2 };

const char* feature_kind_name(FeatureKind kind);
FeatureKind parse_feature_kind(const std::string& name);

// Front-end configuration.  window_ms/hop_ms are converted to sample counts
// at the buffer's rate (rounded to nearest).  The named constructors hold the
// documented defaults for the three front-ends; every field stays overridable.
struct FeatureConfig {
  FeatureKind kind = FeatureKind::kLfcc;
  double window_ms = 30.0;
  double hop_ms = 15.0;
  int n_fft = 512;
  int n_filters = 20;
  int n_coeffs = 20;
  double f_min_hz = 0.0;
  double f_max_hz = 4000.0;
  int delta_window = 2;
  double log_floor = 1e-10;
  WindowFn window_fn = WindowFn::kHamming;

  // 60-dim: 20 static cepstra + deltas + delta-deltas, linear filterbank
  // limited to 0-4 kHz, 30 ms windows, 15 ms hop.
  static FeatureConfig lfcc_defaults();
  // 72-dim: 24 static cepstra + deltas + delta-deltas from 40 mel filters,
  // 25 ms windows, 10 ms hop, full band.
  static FeatureConfig mfcc_defaults();
  // 1025-dim dB-scale power spectrogram: 2048-sample window = FFT size,
  // 512-sample hop (128 ms / 32 ms at the 16 kHz pipeline rate).
  static FeatureConfig logspec_defaults();

  // Throws Errc::kBadConfig unless the full invariant set holds at the given
  // sample rate (f_min < f_max <= Nyquist, n_coeffs <= n_filters,
  // window >= hop > 0, power-of-two n_fft >= window length).
  void validate(int sample_rate) const;

  int window_samples(int sample_rate) const;
  int hop_samples(int sample_rate) const;
  int output_dims() const;  // 3*n_coeffs for cepstral kinds, n_fft/2+1 for LOGSPEC
};

bool operator==(const FeatureConfig& a, const FeatureConfig& b);

// Triangular filterbank over FFT bins.  weights is n_filters x (n_fft/2+1);
// every weight >= 0, each row has contiguous support and unit peak.
struct FilterBank {
  RealMatrix weights;
  std::vector<double> center_hz;
};

// Feature rows tagged with their kind and hop for provenance.
struct FeatureMatrix {
  RealMatrix values;
  FeatureKind kind = FeatureKind::kLfcc;
  double frame_hop_ms = 0.0;

  std::size_t frames() const { return values.rows; }
  std::size_t dims() const { return values.cols; }
};

// Frame count = 1 + floor((len - window_len)/hop) for len >= window_len;
// shorter signals are zero-padded to exactly one window.  Each cell is the
// squared magnitude of the corresponding DFT bin of the windowed frame.
// Errors: hop = 0, window_len > n_fft, or n_fft not a power of two.
RealMatrix stft_power(const AudioBuffer& buf, int window_len, int hop, int n_fft,
                      WindowFn window_fn);

// n_filters triangles whose n_filters+2 boundary points are equally spaced in
// Hz over [f_min, f_max].
FilterBank linear_filterbank(int n_filters, int n_fft, int sample_rate,
                             double f_min_hz, double f_max_hz);

// As linear_filterbank with boundaries equally spaced on the mel scale.
FilterBank mel_filterbank(int n_filters, int n_fft, int sample_rate,
                          double f_min_hz, double f_max_hz);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Per frame: e = fb . power_row; DCT-II (orthonormal) of ln(e + log_floor);
// first n_coeffs coefficients kept, coefficient 0 included.
RealMatrix cepstra(const RealMatrix& power, const FilterBank& fb, int n_coeffs,
                   double log_floor);

// Appends delta and delta-delta columns computed by the standard regression
//   d_t = sum_{n=1..N} n (c_{t+n} - c_{t-n}) / (2 sum n^2)
// with first/last-frame replication at the edges; layout [static|d|dd].
FeatureMatrix add_deltas(const FeatureMatrix& feat, int delta_window);

FeatureMatrix extract_lfcc(const AudioBuffer& buf, const FeatureConfig& cfg);
FeatureMatrix extract_mfcc(const AudioBuffer& buf, const FeatureConfig& cfg);
FeatureMatrix extract_logspec(const AudioBuffer& buf, const FeatureConfig& cfg);

// Dispatches on cfg.kind.
FeatureMatrix extract_features(const AudioBuffer& buf, const FeatureConfig& cfg);

// Cache layout (little-endian): magic "SSFC", u32 version = 1, u32 kind,
// u64 frames, u64 dims, f64 frame_hop_ms, then frames*dims float64 row-major.
void write_feature_cache(const std::string& path, const FeatureMatrix& feat);
FeatureMatrix read_feature_cache(const std::string& path);

}  // namespace ssdbias

#endif  // SSDBIAS_FEATURES_HPP_
