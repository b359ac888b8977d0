// ssdbias/serialize.hpp

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

#ifndef SSDBIAS_SERIALIZE_HPP_
#define SSDBIAS_SERIALIZE_HPP_

#include "json.hpp"
#include "ssdbias/metrics.hpp"

namespace ssdbias {

// nlohmann renders non-finite doubles as null, so infinities travel as the
// strings "inf"/"-inf" in every file format of this engine.
nlohmann::json json_from_maybe_inf(double v);
double maybe_inf_from_json(const nlohmann::json& j);

nlohmann::json threshold_set_to_json(const ThresholdSet& t);
ThresholdSet threshold_set_from_json(const nlohmann::json& j);

}  // namespace ssdbias

#endif  // SSDBIAS_SERIALIZE_HPP_
