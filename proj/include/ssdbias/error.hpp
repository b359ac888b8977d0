// ssdbias/error.hpp

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

#ifndef SSDBIAS_ERROR_HPP_
#define SSDBIAS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ssdbias {

// Every recoverable failure in the engine throws Error with a code that the
// CLI maps onto its exit-code contract (data/config problems -> exit 2).
// Anything else escaping to main() is treated as an internal error (exit 3).
enum class Errc {
  kIoError,            // file missing / unreadable / unwritable
  kBadFormat,          // structurally broken input (RIFF, TSV, JSON, cache)
  kUnsupported,        // recognized but out-of-scope encoding (e.g. ADPCM)
  kBadConfig,          // invalid parameter combination
  kDimensionMismatch,  // operand shapes disagree
  kEmptyInput,         // an operation that needs data got none
  kInsufficientData,   // fewer frames than mixture components, etc.
  kDuplicateId,        // same utterance id seen twice where ids must be unique
  kMissingField,       // required column/field absent
  kMissingScores,      // manifest entries with no score at join time
  kUndersizedPool,     // stratified cell smaller than the requested draw
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ssdbias

#endif  // SSDBIAS_ERROR_HPP_
