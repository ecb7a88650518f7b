// Copyright 2026 modebell contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file Stable JSON and CSV forms for states and results.
#pragma once

#include <string>

#include <json.hpp>

#include "modebell/analytic.hpp"
#include "modebell/montecarlo.hpp"

namespace modebell {

using Json = nlohmann::ordered_json;

/// {"M": .., "N_max": .., "amplitudes": [[re, im], ..]}
Json to_json(const PureState& state);
PureState pure_state_from_json(const Json& j);

/// {"cC": .., "cD": .., "dC": .., "dD": .., "select": ..}
Json to_json(const CoincidenceTable& table);
CoincidenceTable coincidence_table_from_json(const Json& j);

Json to_json(const ChshSettings& settings);

/// {"shots": .., "accepted": .., "counts": {"1,0,1,0": n, ..}, "seed": ..}
Json to_json(const ShotSummary& summary);

/// {"settings": .., "shots": .., "accepted": .., "E_hat": .., "C_hat": ..,
///  "stderr": .., "acceptance_rate": .., "seed": ..}
Json to_json(const EstimatorResult& result);

/// CSV with mandatory header "p,d,C", '.' decimal separator and
/// newline-terminated rows; byte-stable for a given input.
std::string surface_csv(const std::vector<SurfacePoint>& surface);

/// Occupation (1,0,1,0) -> "1,0,1,0".
std::string occupation_key(const OccupationVector& occ);

}  // namespace modebell
