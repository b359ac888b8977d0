// ssdbias/features.cpp

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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>

#include "ssdbias/error.hpp"

namespace ssdbias {

const char* feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLfcc: return "lfcc";
    case FeatureKind::kMfcc: return "mfcc";
    case FeatureKind::kLogSpec: return "logspec";
  }
  return "unknown";
}

FeatureKind parse_feature_kind(const std::string& name) {
  if (name == "lfcc") return FeatureKind::kLfcc;
  if (name == "mfcc") return FeatureKind::kMfcc;
  if (name == "logspec") return FeatureKind::kLogSpec;
  throw Error(Errc::kBadConfig, "unknown feature kind: " + name);
}

FeatureConfig FeatureConfig::lfcc_defaults() {
  return FeatureConfig{};  // member initializers hold the documented values
}

FeatureConfig FeatureConfig::mfcc_defaults() {
  FeatureConfig cfg;
  cfg.kind = FeatureKind::kMfcc;
  cfg.window_ms = 25.0;
  cfg.hop_ms = 10.0;
  cfg.n_fft = 512;
  cfg.n_filters = 40;
  cfg.n_coeffs = 24;
  cfg.f_min_hz = 0.0;
  cfg.f_max_hz = 8000.0;
  cfg.delta_window = 2;
  cfg.window_fn = WindowFn::kHamming;
  return cfg;
}

FeatureConfig FeatureConfig::logspec_defaults() {
  FeatureConfig cfg;
  cfg.kind = FeatureKind::kLogSpec;
  cfg.window_ms = 128.0;  // 2048 samples at the 16 kHz pipeline rate
  cfg.hop_ms = 32.0;      // 512 samples
  cfg.n_fft = 2048;
  cfg.n_filters = 0;
  cfg.n_coeffs = 0;
  cfg.f_min_hz = 0.0;
  cfg.f_max_hz = 8000.0;
  cfg.delta_window = 0;
  cfg.window_fn = WindowFn::kHanning;
  return cfg;
}

int FeatureConfig::window_samples(int sample_rate) const {
  return static_cast<int>(std::llround(window_ms * sample_rate / 1000.0));
}

int FeatureConfig::hop_samples(int sample_rate) const {
  return static_cast<int>(std::llround(hop_ms * sample_rate / 1000.0));
}

int FeatureConfig::output_dims() const {
  return kind == FeatureKind::kLogSpec ? n_fft / 2 + 1 : 3 * n_coeffs;
}

void FeatureConfig::validate(int sample_rate) const {
  if (sample_rate <= 0) {
    throw Error(Errc::kBadConfig, "sample rate must be positive");
  }
  if (window_ms <= 0 || hop_ms <= 0 || window_ms < hop_ms) {
    throw Error(Errc::kBadConfig, "need window_ms >= hop_ms > 0");
  }
  if (!dsp::is_power_of_two(static_cast<std::size_t>(n_fft))) {
    throw Error(Errc::kBadConfig, "n_fft must be a power of two");
  }
  if (window_samples(sample_rate) > n_fft) {
    throw Error(Errc::kBadConfig, "window exceeds n_fft at this sample rate");
  }
  if (hop_samples(sample_rate) == 0) {
    throw Error(Errc::kBadConfig, "hop rounds to zero samples at this rate");
  }
  if (!(f_min_hz < f_max_hz)) {
    throw Error(Errc::kBadConfig, "need f_min < f_max");
  }
  if (f_max_hz > sample_rate / 2.0) {
    throw Error(Errc::kBadConfig, "f_max above Nyquist");
  }
  if (log_floor <= 0) {
    throw Error(Errc::kBadConfig, "log_floor must be positive");
  }
  if (kind != FeatureKind::kLogSpec) {
    if (n_filters < 1 || n_coeffs < 1 || n_coeffs > n_filters) {
      throw Error(Errc::kBadConfig, "need 1 <= n_coeffs <= n_filters");
    }
    if (delta_window < 1) {
      throw Error(Errc::kBadConfig, "delta window must be >= 1");
    }
  }
}

bool operator==(const FeatureConfig& a, const FeatureConfig& b) {
  return a.kind == b.kind && a.window_ms == b.window_ms && a.hop_ms == b.hop_ms &&
         a.n_fft == b.n_fft && a.n_filters == b.n_filters &&
         a.n_coeffs == b.n_coeffs && a.f_min_hz == b.f_min_hz &&
         a.f_max_hz == b.f_max_hz && a.delta_window == b.delta_window &&
         a.log_floor == b.log_floor && a.window_fn == b.window_fn;
}

RealMatrix stft_power(const AudioBuffer& buf, int window_len, int hop, int n_fft,
                      WindowFn window_fn) {
  if (hop <= 0) {
    throw Error(Errc::kBadConfig, "stft hop must be positive");
  }
  if (window_len <= 0 || window_len > n_fft) {
    throw Error(Errc::kBadConfig, "stft window must satisfy 0 < window <= n_fft");
  }
  if (!dsp::is_power_of_two(static_cast<std::size_t>(n_fft))) {
    throw Error(Errc::kBadConfig, "stft n_fft must be a power of two");
  }
  if (buf.channel_count != 1) {
    throw Error(Errc::kBadConfig, "stft requires mono input");
  }

  const std::size_t len = buf.samples.size();
  const std::size_t w = static_cast<std::size_t>(window_len);
  const std::size_t h = static_cast<std::size_t>(hop);
  const std::size_t n_frames = (len >= w) ? 1 + (len - w) / h : 1;
  const std::size_t n_bins = static_cast<std::size_t>(n_fft) / 2 + 1;

  const std::vector<double> window = dsp::make_window(window_fn, w);
  RealMatrix power(n_frames, n_bins);
  std::vector<std::complex<double>> work(static_cast<std::size_t>(n_fft));

  for (std::size_t f = 0; f < n_frames; ++f) {
    const std::size_t start = f * h;
    std::fill(work.begin(), work.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t src = start + i;
      const double s = (src < len) ? buf.samples[src] : 0.0;  // short-input pad
      work[i] = std::complex<double>(s * window[i], 0.0);
    }
    dsp::fft_radix2(work);
    for (std::size_t b = 0; b < n_bins; ++b) {
      power.at(f, b) = std::norm(work[b]);
    }
  }
  return power;
}

namespace {

double bin_hz(std::size_t bin, int sample_rate, int n_fft) {
  return static_cast<double>(bin) * sample_rate / n_fft;
}

// Shared triangle construction over precomputed boundary points in Hz.
FilterBank build_triangles(const std::vector<double>& bounds_hz, int n_fft,
                           int sample_rate) {
  const std::size_t n_filters = bounds_hz.size() - 2;
  const std::size_t n_bins = static_cast<std::size_t>(n_fft) / 2 + 1;
  FilterBank fb;
  fb.weights = RealMatrix(n_filters, n_bins);
  fb.center_hz.resize(n_filters);
  for (std::size_t i = 0; i < n_filters; ++i) {
    const double lo = bounds_hz[i];
    const double mid = bounds_hz[i + 1];
    const double hi = bounds_hz[i + 2];
    fb.center_hz[i] = mid;
    for (std::size_t b = 0; b < n_bins; ++b) {
      const double f = bin_hz(b, sample_rate, n_fft);
      double w = 0.0;
      if (f > lo && f <= mid) {
        w = (f - lo) / (mid - lo);
      } else if (f > mid && f < hi) {
        w = (hi - f) / (hi - mid);
      }
      fb.weights.at(i, b) = w;
    }
  }
  return fb;
}

void check_band(int n_filters, int sample_rate, double f_min, double f_max) {
  if (n_filters < 1) {
    throw Error(Errc::kBadConfig, "filterbank needs at least one filter");
  }
  if (!(f_min < f_max)) {
    throw Error(Errc::kBadConfig, "filterbank needs f_min < f_max");
  }
  if (f_max > sample_rate / 2.0) {
    throw Error(Errc::kBadConfig, "filterbank f_max above Nyquist");
  }
}

}  // namespace

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

FilterBank linear_filterbank(int n_filters, int n_fft, int sample_rate,
                             double f_min_hz, double f_max_hz) {
  check_band(n_filters, sample_rate, f_min_hz, f_max_hz);
  std::vector<double> bounds(static_cast<std::size_t>(n_filters) + 2);
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    bounds[k] = f_min_hz + (f_max_hz - f_min_hz) * static_cast<double>(k) /
                               static_cast<double>(n_filters + 1);
  }
  return build_triangles(bounds, n_fft, sample_rate);
}

FilterBank mel_filterbank(int n_filters, int n_fft, int sample_rate,
                          double f_min_hz, double f_max_hz) {
  check_band(n_filters, sample_rate, f_min_hz, f_max_hz);
  const double mel_lo = hz_to_mel(f_min_hz);
  const double mel_hi = hz_to_mel(f_max_hz);
  std::vector<double> bounds(static_cast<std::size_t>(n_filters) + 2);
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    bounds[k] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(k) /
                                       static_cast<double>(n_filters + 1));
  }
  return build_triangles(bounds, n_fft, sample_rate);
}

RealMatrix cepstra(const RealMatrix& power, const FilterBank& fb, int n_coeffs,
                   double log_floor) {
  if (power.cols != fb.weights.cols) {
    throw Error(Errc::kDimensionMismatch,
                "power bin count does not match filterbank");
  }
  const std::size_t n_filters = fb.weights.rows;
  if (n_coeffs < 1 || static_cast<std::size_t>(n_coeffs) > n_filters) {
    throw Error(Errc::kBadConfig, "need 1 <= n_coeffs <= n_filters");
  }
  const RealMatrix dct =
      dsp::dct2_matrix(static_cast<std::size_t>(n_coeffs), n_filters);
  RealMatrix out(power.rows, static_cast<std::size_t>(n_coeffs));
  std::vector<double> log_energy(n_filters);
  for (std::size_t f = 0; f < power.rows; ++f) {
    for (std::size_t i = 0; i < n_filters; ++i) {
      double e = 0.0;
      for (std::size_t b = 0; b < power.cols; ++b) {
        e += fb.weights.at(i, b) * power.at(f, b);
      }
      log_energy[i] = std::log(e + log_floor);
    }
    for (std::size_t k = 0; k < static_cast<std::size_t>(n_coeffs); ++k) {
      double c = 0.0;
      for (std::size_t i = 0; i < n_filters; ++i) {
        c += dct.at(k, i) * log_energy[i];
      }
      out.at(f, k) = c;
    }
  }
  return out;
}

namespace {

// One pass of the delta regression over rows of `src`, writing into `dst`
// columns [col0, col0 + dims).  Edge frames replicate.
void delta_pass(const RealMatrix& src, std::size_t src_col0, RealMatrix& dst,
                std::size_t dst_col0, std::size_t dims, int delta_window) {
  const std::ptrdiff_t t_max = static_cast<std::ptrdiff_t>(src.rows) - 1;
  double denom = 0.0;
  for (int n = 1; n <= delta_window; ++n) denom += static_cast<double>(n) * n;
  denom *= 2.0;
  for (std::size_t t = 0; t < src.rows; ++t) {
    for (std::size_t d = 0; d < dims; ++d) {
      double num = 0.0;
      for (int n = 1; n <= delta_window; ++n) {
        const std::size_t ahead = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(t) + n, t_max));
        const std::size_t behind = static_cast<std::size_t>(
            std::max<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(t) - n, 0));
        num += n * (src.at(ahead, src_col0 + d) - src.at(behind, src_col0 + d));
      }
      dst.at(t, dst_col0 + d) = num / denom;
    }
  }
}

}  // namespace

FeatureMatrix add_deltas(const FeatureMatrix& feat, int delta_window) {
  if (delta_window < 1) {
    throw Error(Errc::kBadConfig, "delta window must be >= 1");
  }
  if (feat.values.rows == 0 || feat.values.cols == 0) {
    throw Error(Errc::kEmptyInput, "add_deltas on empty features");
  }
  const std::size_t dims = feat.values.cols;
  FeatureMatrix out;
  out.kind = feat.kind;
  out.frame_hop_ms = feat.frame_hop_ms;
  out.values = RealMatrix(feat.values.rows, 3 * dims);
  for (std::size_t t = 0; t < feat.values.rows; ++t) {
    for (std::size_t d = 0; d < dims; ++d) {
      out.values.at(t, d) = feat.values.at(t, d);
    }
  }
  delta_pass(out.values, 0, out.values, dims, dims, delta_window);
  delta_pass(out.values, dims, out.values, 2 * dims, dims, delta_window);
  return out;
}

namespace {

FeatureMatrix extract_cepstral(const AudioBuffer& buf, const FeatureConfig& cfg,
                               bool mel) {
  cfg.validate(buf.sample_rate);
  const int win = cfg.window_samples(buf.sample_rate);
  const int hop = cfg.hop_samples(buf.sample_rate);
  const RealMatrix power = stft_power(buf, win, hop, cfg.n_fft, cfg.window_fn);
  const FilterBank fb =
      mel ? mel_filterbank(cfg.n_filters, cfg.n_fft, buf.sample_rate,
                           cfg.f_min_hz, cfg.f_max_hz)
          : linear_filterbank(cfg.n_filters, cfg.n_fft, buf.sample_rate,
                              cfg.f_min_hz, cfg.f_max_hz);
  FeatureMatrix stat;
  stat.kind = cfg.kind;
  stat.frame_hop_ms = cfg.hop_ms;
  stat.values = cepstra(power, fb, cfg.n_coeffs, cfg.log_floor);
  return add_deltas(stat, cfg.delta_window);
}

}  // namespace

FeatureMatrix extract_lfcc(const AudioBuffer& buf, const FeatureConfig& cfg) {
  if (cfg.kind != FeatureKind::kLfcc) {
    throw Error(Errc::kBadConfig, "extract_lfcc needs an lfcc config");
  }
  return extract_cepstral(buf, cfg, /*mel=*/false);
}

FeatureMatrix extract_mfcc(const AudioBuffer& buf, const FeatureConfig& cfg) {
  if (cfg.kind != FeatureKind::kMfcc) {
    throw Error(Errc::kBadConfig, "extract_mfcc needs an mfcc config");
  }
  return extract_cepstral(buf, cfg, /*mel=*/true);
}

FeatureMatrix extract_logspec(const AudioBuffer& buf, const FeatureConfig& cfg) {
  if (cfg.kind != FeatureKind::kLogSpec) {
    throw Error(Errc::kBadConfig, "extract_logspec needs a logspec config");
  }
  cfg.validate(buf.sample_rate);
  const int win = cfg.window_samples(buf.sample_rate);
  if (win != cfg.n_fft) {
    throw Error(Errc::kBadConfig,
                "logspec window must equal n_fft at the buffer's sample rate");
  }
  const int hop = cfg.hop_samples(buf.sample_rate);
  RealMatrix power = stft_power(buf, win, hop, cfg.n_fft, cfg.window_fn);
  for (double& v : power.values) {
    v = 10.0 * std::log10(v + cfg.log_floor);
  }
  FeatureMatrix out;
  out.kind = FeatureKind::kLogSpec;
  out.frame_hop_ms = cfg.hop_ms;
  out.values = std::move(power);
  return out;
}

FeatureMatrix extract_features(const AudioBuffer& buf, const FeatureConfig& cfg) {
  switch (cfg.kind) {
    case FeatureKind::kLfcc: return extract_lfcc(buf, cfg);
    case FeatureKind::kMfcc: return extract_mfcc(buf, cfg);
    case FeatureKind::kLogSpec: return extract_logspec(buf, cfg);
  }
  throw Error(Errc::kBadConfig, "unknown feature kind");
}

namespace {

constexpr char kCacheMagic[4] = {'S', 'S', 'F', 'C'};
constexpr std::uint32_t kCacheVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "feature cache writer assumes a little-endian host");

template <typename T>
void put_raw(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

template <typename T>
T get_raw(std::ifstream& in, const std::string& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  if (!in) {
    throw Error(Errc::kBadFormat, "truncated feature cache: " + path);
  }
  return value;
}

}  // namespace

void write_feature_cache(const std::string& path, const FeatureMatrix& feat) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::kIoError, "cannot create feature cache: " + path);
  }
  out.write(kCacheMagic, 4);
  put_raw(out, kCacheVersion);
  put_raw(out, static_cast<std::uint32_t>(feat.kind));
  put_raw(out, static_cast<std::uint64_t>(feat.frames()));
  put_raw(out, static_cast<std::uint64_t>(feat.dims()));
  put_raw(out, feat.frame_hop_ms);
  out.write(reinterpret_cast<const char*>(feat.values.values.data()),
            static_cast<std::streamsize>(feat.values.values.size() * sizeof(double)));
  if (!out) {
    throw Error(Errc::kIoError, "write failed: " + path);
  }
}

FeatureMatrix read_feature_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kIoError, "cannot open feature cache: " + path);
  }
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCacheMagic, 4) != 0) {
    throw Error(Errc::kBadFormat, "not a feature cache: " + path);
  }
  const auto version = get_raw<std::uint32_t>(in, path);
  if (version != kCacheVersion) {
    throw Error(Errc::kUnsupported, "unknown feature cache version in " + path);
  }
  const auto kind = get_raw<std::uint32_t>(in, path);
  if (kind > static_cast<std::uint32_t>(FeatureKind::kLogSpec)) {
    throw Error(Errc::kBadFormat, "bad feature kind tag in " + path);
  }
  const auto frames = get_raw<std::uint64_t>(in, path);
  const auto dims = get_raw<std::uint64_t>(in, path);
  const auto hop_ms = get_raw<double>(in, path);
  if (frames == 0 || dims == 0 || frames > (1ull << 32) || dims > (1ull << 20)) {
    throw Error(Errc::kBadFormat, "implausible feature cache geometry in " + path);
  }
  FeatureMatrix feat;
  feat.kind = static_cast<FeatureKind>(kind);
  feat.frame_hop_ms = hop_ms;
  feat.values = RealMatrix(static_cast<std::size_t>(frames),
                           static_cast<std::size_t>(dims));
  in.read(reinterpret_cast<char*>(feat.values.values.data()),
          static_cast<std::streamsize>(feat.values.values.size() * sizeof(double)));
  if (!in) {
    throw Error(Errc::kBadFormat, "truncated feature cache: " + path);
  }
  return feat;
}

}  // namespace ssdbias
