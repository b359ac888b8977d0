// ssdbias/audio.cpp

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

#include "ssdbias/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <numeric>
#include <vector>

#include "ssdbias/dsp.hpp"
#include "ssdbias/error.hpp"

namespace ssdbias {
namespace {

// WAVE format tags this engine decodes.
constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

float read_f32(const unsigned char* p) {
  std::uint32_t bits = read_u32(p);
  float out;
  std::memcpy(&out, &bits, sizeof(out));
  return out;
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kIoError, "cannot open audio file: " + path);
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(Errc::kIoError, "read failed: " + path);
  }

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(Errc::kBadFormat, "not a RIFF/WAVE file: " + path);
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits_per_sample = 0;
  std::uint32_t sample_rate = 0;
  std::size_t data_offset = 0, data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* chunk_id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t chunk_size = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw Error(Errc::kBadFormat,
                  "truncated chunk '" + std::string(chunk_id, 4) + "' in " + path);
    }
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw Error(Errc::kBadFormat, "fmt chunk too small in " + path);
      }
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      sample_rate = read_u32(bytes.data() + body + 4);
      bits_per_sample = read_u16(bytes.data() + body + 14);
      if (format == kFormatExtensible) {
        // Effective codec lives in the first two bytes of the SubFormat GUID.
        if (chunk_size < 40) {
          throw Error(Errc::kBadFormat, "extensible fmt chunk too small in " + path);
        }
        format = read_u16(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      data_offset = body;
      data_size = chunk_size;
      have_data = true;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || !have_data) {
    throw Error(Errc::kBadFormat, "missing fmt/data chunk in " + path);
  }
  if (channels == 0 || sample_rate == 0) {
    throw Error(Errc::kBadFormat, "zero channel count or sample rate in " + path);
  }

  const bool pcm16 = format == kFormatPcm && bits_per_sample == 16;
  const bool float32 = format == kFormatIeeeFloat && bits_per_sample == 32;
  if (!pcm16 && !float32) {
    throw Error(Errc::kUnsupported,
                "unsupported codec (format tag " + std::to_string(format) + ", " +
                    std::to_string(bits_per_sample) + " bits) in " + path);
  }

  const std::size_t bytes_per_sample = bits_per_sample / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  if (data_size % frame_bytes != 0) {
    throw Error(Errc::kBadFormat, "data chunk is not whole frames in " + path);
  }

  AudioBuffer buf;
  buf.sample_rate = static_cast<int>(sample_rate);
  buf.channel_count = channels;
  buf.source_channels = channels;
  const std::size_t n_values = data_size / bytes_per_sample;
  buf.samples.resize(n_values);
  const unsigned char* p = bytes.data() + data_offset;
  if (pcm16) {
    for (std::size_t i = 0; i < n_values; ++i) {
      const std::int16_t v = static_cast<std::int16_t>(read_u16(p + 2 * i));
      buf.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else {
    for (std::size_t i = 0; i < n_values; ++i) {
      buf.samples[i] = std::clamp(static_cast<double>(read_f32(p + 4 * i)), -1.0, 1.0);
    }
  }
  return buf;
}

void write_wav_pcm16(const std::string& path, const AudioBuffer& buf) {
  if (buf.sample_rate <= 0 || buf.channel_count <= 0) {
    throw Error(Errc::kBadConfig, "cannot write buffer with empty geometry");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::kIoError, "cannot create audio file: " + path);
  }
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(buf.samples.size() * 2);
  const std::uint16_t channels = static_cast<std::uint16_t>(buf.channel_count);
  const std::uint32_t rate = static_cast<std::uint32_t>(buf.sample_rate);
  const std::uint16_t block_align = static_cast<std::uint16_t>(channels * 2);
  const std::uint32_t byte_rate = rate * block_align;

  auto put_u16 = [&out](std::uint16_t v) {
    const unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                                static_cast<unsigned char>(v >> 8)};
    out.write(reinterpret_cast<const char*>(b), 2);
  };
  auto put_u32 = [&out](std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                                static_cast<unsigned char>((v >> 8) & 0xFF),
                                static_cast<unsigned char>((v >> 16) & 0xFF),
                                static_cast<unsigned char>((v >> 24) & 0xFF)};
    out.write(reinterpret_cast<const char*>(b), 4);
  };

  out.write("RIFF", 4);
  put_u32(36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16);
  put_u16(kFormatPcm);
  put_u16(channels);
  put_u32(rate);
  put_u32(byte_rate);
  put_u16(block_align);
  put_u16(16);
  out.write("data", 4);
  put_u32(data_size);
  for (double s : buf.samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    const long q = std::lround(clamped * 32768.0);
    put_u16(static_cast<std::uint16_t>(
        static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L))));
  }
  if (!out) {
    throw Error(Errc::kIoError, "write failed: " + path);
  }
}

AudioBuffer to_mono(const AudioBuffer& buf) {
  if (buf.channel_count <= 1) return buf;
  const std::size_t channels = static_cast<std::size_t>(buf.channel_count);
  const std::size_t frames = buf.samples.size() / channels;
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.channel_count = 1;
  out.source_channels = buf.source_channels;
  out.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      acc += buf.samples[f * channels + c];
    }
    out.samples[f] = acc / static_cast<double>(channels);
  }
  return out;
}

AudioBuffer resample(const AudioBuffer& buf, int target_hz) {
  if (target_hz <= 0) {
    throw Error(Errc::kBadConfig, "resample target rate must be positive");
  }
  if (buf.sample_rate <= 0) {
    throw Error(Errc::kBadConfig, "resample input has no sample rate");
  }
  if (target_hz == buf.sample_rate) return buf;
  if (buf.channel_count != 1) {
    throw Error(Errc::kBadConfig, "resample requires mono input (mix down first)");
  }

  const int g = std::gcd(buf.sample_rate, target_hz);
  const std::size_t up = static_cast<std::size_t>(target_hz / g);        // L
  const std::size_t down = static_cast<std::size_t>(buf.sample_rate / g);  // M

  // Prototype lowpass at the upsampled rate (source * L): 64 taps per phase,
  // Kaiser beta = 8.6, cutoff at the tighter of the two Nyquist limits,
  // gain L to undo zero-stuffing.
  const std::size_t taps = 64 * up + 1;
  const std::size_t center = (taps - 1) / 2;
  const double cutoff = 1.0 / static_cast<double>(std::max(up, down));
  const double beta = 8.6;
  const double i0_beta = dsp::bessel_i0(beta);
  std::vector<double> h(taps);
  for (std::size_t i = 0; i < taps; ++i) {
    const double n = static_cast<double>(i) - static_cast<double>(center);
    const double x = cutoff * n;
    const double sinc =
        (n == 0.0) ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    const double r = n / static_cast<double>(center);
    const double kaiser = dsp::bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
    h[i] = static_cast<double>(up) * cutoff * sinc * kaiser;
  }
  // Normalize each polyphase leg to unit DC gain so constants pass through
  // exactly regardless of phase.
  for (std::size_t p = 0; p < up; ++p) {
    double leg_sum = 0.0;
    for (std::size_t i = p; i < taps; i += up) leg_sum += h[i];
    if (leg_sum != 0.0) {
      for (std::size_t i = p; i < taps; i += up) h[i] /= leg_sum;
    }
  }

  const std::size_t n_in = buf.samples.size();
  const std::size_t n_out = static_cast<std::size_t>(std::llround(
      static_cast<double>(n_in) * static_cast<double>(target_hz) /
      static_cast<double>(buf.sample_rate)));

  AudioBuffer out;
  out.sample_rate = target_hz;
  out.channel_count = 1;
  out.source_channels = buf.source_channels;
  out.samples.assign(n_out, 0.0);

  // Output m sits at index m*M on the upsampled grid; only input-aligned taps
  // (every L-th) contribute.  Signal is zero-padded outside its support.
  for (std::size_t m = 0; m < n_out; ++m) {
    const std::size_t u = m * down + center;
    // Smallest tap index congruent to u mod L reachable with q <= floor(u/L).
    const std::size_t q_hi = u / up;  // input index for tap i = u - L*q_hi
    double acc = 0.0;
    for (std::size_t q = (u >= taps - 1) ? (u - (taps - 1) + up - 1) / up : 0;
         q <= q_hi; ++q) {
      const std::size_t tap = u - q * up;
      if (q >= n_in) break;
      acc += h[tap] * buf.samples[q];
    }
    out.samples[m] = acc;
  }
  return out;
}

}  // namespace ssdbias
