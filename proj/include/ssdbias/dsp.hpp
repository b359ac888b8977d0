// ssdbias/dsp.hpp

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

#ifndef SSDBIAS_DSP_HPP_
#define SSDBIAS_DSP_HPP_

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "ssdbias/matrix.hpp"

namespace ssdbias {

enum class WindowFn { kHamming, kHanning, kRectangular };

const char* window_fn_name(WindowFn fn);
WindowFn parse_window_fn(const std::string& name);

namespace dsp {

constexpr bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 DIT FFT.  data.size() must be a power of two;
// callers validate, this asserts.
void fft_radix2(std::vector<std::complex<double>>& data);

// Periodic analysis windows of the classic textbook forms:
//   hamming: 0.54 - 0.46 cos(2 pi n / (N-1))
//   hanning: 0.5  - 0.5  cos(2 pi n / (N-1))
std::vector<double> make_window(WindowFn fn, std::size_t length);

// Orthonormal DCT-II matrix, n_out x n_in row-major:
//   D[k][n] = s_k * cos(pi (n + 0.5) k / n_in),    s_0 = sqrt(1/n_in),
//                                                  s_k = sqrt(2/n_in) for k>0.
// Rows are orthonormal, so truncating to n_out <= n_in keeps D D^T = I.
RealMatrix dct2_matrix(std::size_t n_out, std::size_t n_in);

// Zeroth-order modified Bessel function of the first kind (power series),
// used by the Kaiser window of the resampler.
double bessel_i0(double x);

}  // namespace dsp
}  // namespace ssdbias

#endif  // SSDBIAS_DSP_HPP_
