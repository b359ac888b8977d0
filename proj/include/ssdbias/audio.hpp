// ssdbias/audio.hpp

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

#ifndef SSDBIAS_AUDIO_HPP_
#define SSDBIAS_AUDIO_HPP_

#include <string>
#include <vector>

namespace ssdbias {

// Decoded audio.  samples are normalized to [-1, 1] and interleaved when
// channel_count > 1.  source_channels records the channel count as decoded,
// before any mixdown, for provenance.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;
  int channel_count = 1;
  int source_channels = 1;
};

// Reads a RIFF/WAVE file.  Supported codecs: PCM16 (format 1, 16-bit) and
// IEEE float32 (format 3, including the WAVE_FORMAT_EXTENSIBLE wrappers).
// PCM16 samples are scaled by 1/32768.  Distinct failures: Errc::kIoError for
// a missing/unreadable file, Errc::kBadFormat for a broken container,
// Errc::kUnsupported for any other codec.
AudioBuffer read_wav(const std::string& path);

// Writes mono or interleaved PCM16; values are clamped to [-1, 1] before
// quantization.  Used by the synthetic-corpus generator and tests.
void write_wav_pcm16(const std::string& path, const AudioBuffer& buf);

// Per-frame arithmetic mean across channels.  Mono input is returned
// unchanged (idempotent); source_channels is preserved.
AudioBuffer to_mono(const AudioBuffer& buf);

// Polyphase windowed-sinc resampler (64 taps per phase, Kaiser beta = 8.6).
// Requires mono input.  When target_hz == buf.sample_rate the samples are
// returned bit-identical.  Output length = round(n * target / source).
AudioBuffer resample(const AudioBuffer& buf, int target_hz);

}  // namespace ssdbias

#endif  // SSDBIAS_AUDIO_HPP_
