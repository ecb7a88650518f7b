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

/**
 * @file
 * Finite-statistics layer: i.i.d. sampling of detector-click events from
 * the exact outcome distribution, and CHSH estimation with binomial error
 * propagation.
 *
 * Reproducibility contract: all draws come from mt19937_64 with manually
 * constructed 53-bit uniforms, so results are bit-identical for a fixed
 * seed on any conforming platform. Setting k of estimate_chsh uses a
 * substream seeded with splitmix64(master_seed + k); sample_events(seed)
 * seeds with splitmix64(seed), so setting k can be reproduced standalone by
 * calling sample_events with seed = master_seed + k and that setting's
 * angles.
 */
#pragma once

#include <cstdint>

#include "modebell/protocol.hpp"

namespace modebell {

/// Raised when a setting yields zero accepted (post-selected) events.
struct NoAcceptedEventsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// splitmix64 mixing step; used to derive RNG substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// True when each party saw exactly one particle across its detector pair.
bool is_accepted(const OccupationVector& outcome);

/// One detector-click event over the output modes (c, d, C, D).
struct ShotRecord {
    OccupationVector outcome;
    bool accepted;

    static ShotRecord from_outcome(OccupationVector outcome_in) {
        const bool ok = is_accepted(outcome_in);
        return {std::move(outcome_in), ok};
    }
};

/// Counts per detector configuration from n_shots i.i.d. draws.
struct ShotSummary {
    std::uint64_t shots;
    std::uint64_t accepted;
    /// (occupation of c, d, C, D) -> count, nonzero entries in basis order.
    std::vector<std::pair<OccupationVector, std::uint64_t>> counts;
    std::uint64_t seed;

    double acceptance_rate() const {
        return shots ? static_cast<double>(accepted) / static_cast<double>(shots) : 0.0;
    }
};

ShotSummary sample_events(const OutcomeDistribution& dist, std::uint64_t n_shots,
                          std::uint64_t seed);
ShotSummary sample_events(const SystemPrep& prep, const ReferenceSpec& ref_a,
                          const ReferenceSpec& ref_b, double transmittivity,
                          std::uint64_t n_shots, std::uint64_t seed);
ShotSummary sample_events(const MixedPrep& prep, const ReferenceSpec& ref_a,
                          const ReferenceSpec& ref_b, double transmittivity,
                          std::uint64_t n_shots, std::uint64_t seed);

struct SettingEstimate {
    double e_hat;
    double std_err;  ///< sqrt((1 - e_hat^2) / accepted)
    std::uint64_t accepted;
};

struct EstimatorResult {
    ChshSettings settings;
    /// Order: (a1,b1), (a1,b2), (a2,b1), (a2,b2).
    std::array<SettingEstimate, 4> per_setting;
    double c_hat;
    double c_std_err;  ///< quadrature sum of the four setting errors
    double acceptance_rate;
    std::uint64_t shots_total;
    std::uint64_t seed;
};

/// CHSH estimate from shots_per_setting samples of each of the four setting
/// pairs. Correlators are estimated on accepted shots only. Throws
/// std::invalid_argument below 100 shots per setting (the error formulas
/// are unreliable there) and NoAcceptedEventsError if any setting accepts
/// nothing.
EstimatorResult estimate_chsh(const SystemBranches& branches, const ChshSettings& settings,
                              const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
                              double transmittivity, std::uint64_t shots_per_setting,
                              std::uint64_t seed);
EstimatorResult estimate_chsh(const SystemPrep& prep, const ChshSettings& settings,
                              const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
                              double transmittivity, std::uint64_t shots_per_setting,
                              std::uint64_t seed);
EstimatorResult estimate_chsh(const MixedPrep& prep, const ChshSettings& settings,
                              const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
                              double transmittivity, std::uint64_t shots_per_setting,
                              std::uint64_t seed);

}  // namespace modebell
