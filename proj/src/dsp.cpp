// ssdbias/dsp.cpp

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

#include "ssdbias/dsp.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "ssdbias/error.hpp"

namespace ssdbias {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kIoError: return "io-error";
    case Errc::kBadFormat: return "bad-format";
    case Errc::kUnsupported: return "unsupported";
    case Errc::kBadConfig: return "bad-config";
    case Errc::kDimensionMismatch: return "dimension-mismatch";
    case Errc::kEmptyInput: return "empty-input";
    case Errc::kInsufficientData: return "insufficient-data";
    case Errc::kDuplicateId: return "duplicate-id";
    case Errc::kMissingField: return "missing-field";
    case Errc::kMissingScores: return "missing-scores";
    case Errc::kUndersizedPool: return "undersized-pool";
  }
  return "unknown";
}

const char* window_fn_name(WindowFn fn) {
  switch (fn) {
    case WindowFn::kHamming: return "hamming";
    case WindowFn::kHanning: return "hanning";
    case WindowFn::kRectangular: return "rectangular";
  }
  return "unknown";
}

WindowFn parse_window_fn(const std::string& name) {
  if (name == "hamming") return WindowFn::kHamming;
  if (name == "hanning") return WindowFn::kHanning;
  if (name == "rectangular") return WindowFn::kRectangular;
  throw Error(Errc::kBadConfig, "unknown window function: " + name);
}

namespace dsp {

void fft_radix2(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  assert(is_power_of_two(n));
  if (n <= 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wstep(std::cos(angle), std::sin(angle));
    for (std::size_t start = 0; start < n; start += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> even = data[start + k];
        const std::complex<double> odd = data[start + k + len / 2] * w;
        data[start + k] = even + odd;
        data[start + k + len / 2] = even - odd;
        w *= wstep;
      }
    }
  }
}

std::vector<double> make_window(WindowFn fn, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (fn == WindowFn::kRectangular || length == 1) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n) {
    const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
    w[n] = (fn == WindowFn::kHamming) ? 0.54 - 0.46 * c : 0.5 - 0.5 * c;
  }
  return w;
}

RealMatrix dct2_matrix(std::size_t n_out, std::size_t n_in) {
  assert(n_out <= n_in && n_in > 0);
  RealMatrix d(n_out, n_in);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n_in));
  const double sk = std::sqrt(2.0 / static_cast<double>(n_in));
  for (std::size_t k = 0; k < n_out; ++k) {
    const double scale = (k == 0) ? s0 : sk;
    for (std::size_t n = 0; n < n_in; ++n) {
      d.at(k, n) = scale * std::cos(std::numbers::pi *
                                    (static_cast<double>(n) + 0.5) *
                                    static_cast<double>(k) /
                                    static_cast<double>(n_in));
    }
  }
  return d;
}

double bessel_i0(double x) {
  const double half = x / 2.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 100; ++k) {
    term *= (half / k) * (half / k);
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

}  // namespace dsp
}  // namespace ssdbias
