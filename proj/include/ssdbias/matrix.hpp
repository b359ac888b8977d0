// ssdbias/matrix.hpp

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

#ifndef SSDBIAS_MATRIX_HPP_
#define SSDBIAS_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace ssdbias {

// Dense row-major matrix of doubles.  Deliberately minimal: the engine only
// needs storage plus row views; all numeric work is done by explicit loops so
// that summation order (and therefore bit-level reproducibility) stays fixed.
struct RealMatrix {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : values(r * c, 0.0), rows(r), cols(c) {}

  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

  std::span<double> row(std::size_t r) {
    return std::span<double>(values.data() + r * cols, cols);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values.data() + r * cols, cols);
  }

  bool empty() const { return rows == 0 || cols == 0; }
};

}  // namespace ssdbias

#endif  // SSDBIAS_MATRIX_HPP_
