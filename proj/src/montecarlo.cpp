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

#include "modebell/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace modebell {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

bool is_accepted(const OccupationVector& outcome) {
    return outcome.size() == 4 && outcome[0] + outcome[1] == 1 &&
           outcome[2] + outcome[3] == 1;
}

namespace {

// 53-bit uniform in [0, 1); independent of the library's distribution
// implementation, so sequences are portable.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ShotSummary sample_from(const OutcomeDistribution& dist, std::uint64_t n_shots,
                        std::uint64_t raw_seed, std::uint64_t reported_seed) {
    if (n_shots < 1) throw std::invalid_argument("sample_events: n_shots must be >= 1");

    const auto dim = dist.probabilities.size();
    std::vector<double> cdf(static_cast<std::size_t>(dim));
    double cum = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        cum += dist.probabilities[i];
        cdf[static_cast<std::size_t>(i)] = cum;
    }
    const double total = cum;

    std::mt19937_64 rng(splitmix64(raw_seed));
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(dim), 0);
    for (std::uint64_t s = 0; s < n_shots; ++s) {
        const double u = uniform01(rng) * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        ++hits[idx];
    }

    ShotSummary summary{n_shots, 0, {}, reported_seed};
    const FockBasis& basis = *dist.basis;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (hits[i] == 0) continue;
        const OccupationVector& occ = basis.occupation(i);
        if (is_accepted(occ)) summary.accepted += hits[i];
        summary.counts.emplace_back(occ, hits[i]);
    }
    return summary;
}

EstimatorResult estimate_from(const SystemBranches& branches, const ChshSettings& settings,
                              const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
                              double transmittivity, std::uint64_t shots_per_setting,
                              std::uint64_t seed) {
    if (shots_per_setting < 100) {
        throw std::invalid_argument("estimate_chsh: need at least 100 shots per setting");
    }

    const std::array<std::pair<double, double>, 4> pairs = {{
        {settings.theta_a1, settings.theta_b1},
        {settings.theta_a1, settings.theta_b2},
        {settings.theta_a2, settings.theta_b1},
        {settings.theta_a2, settings.theta_b2},
    }};

    EstimatorResult result{};
    result.settings = settings;
    result.seed = seed;
    result.shots_total = 4 * shots_per_setting;

    std::uint64_t accepted_total = 0;
    double e_sum = 0.0;
    double var_sum = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const OutcomeDistribution dist =
            outcome_distribution(branches, ref_a.with_theta(pairs[k].first),
                                 ref_b.with_theta(pairs[k].second), transmittivity);
        const ShotSummary shots = sample_from(dist, shots_per_setting, seed + k, seed + k);
        if (shots.accepted == 0) {
            throw NoAcceptedEventsError("estimate_chsh: a setting accepted zero events");
        }
        std::int64_t score = 0;
        for (const auto& [occ, n] : shots.counts) {
            if (!is_accepted(occ)) continue;
            // +1 for detectors c/C (first wire of each pair), -1 for d/D.
            const int sign_a = occ[0] == 1 ? 1 : -1;
            const int sign_b = occ[2] == 1 ? 1 : -1;
            score += static_cast<std::int64_t>(n) * sign_a * sign_b;
        }
        const double n_acc = static_cast<double>(shots.accepted);
        const double e_hat = static_cast<double>(score) / n_acc;
        const double std_err = std::sqrt(std::max(1.0 - e_hat * e_hat, 0.0) / n_acc);
        result.per_setting[k] = {e_hat, std_err, shots.accepted};
        accepted_total += shots.accepted;
        e_sum += (k == 3 ? -e_hat : e_hat);
        var_sum += std_err * std_err;
    }

    result.c_hat = std::abs(e_sum);
    result.c_std_err = std::sqrt(var_sum);
    result.acceptance_rate =
        static_cast<double>(accepted_total) / static_cast<double>(result.shots_total);
    return result;
}

}  // namespace

ShotSummary sample_events(const OutcomeDistribution& dist, std::uint64_t n_shots,
                          std::uint64_t seed) {
    return sample_from(dist, n_shots, seed, seed);
}

ShotSummary sample_events(const SystemPrep& prep, const ReferenceSpec& ref_a,
                          const ReferenceSpec& ref_b, double transmittivity,
                          std::uint64_t n_shots, std::uint64_t seed) {
    return sample_from(outcome_distribution(prep, ref_a, ref_b, transmittivity), n_shots,
                       seed, seed);
}

ShotSummary sample_events(const MixedPrep& prep, const ReferenceSpec& ref_a,
                          const ReferenceSpec& ref_b, double transmittivity,
                          std::uint64_t n_shots, std::uint64_t seed) {
    return sample_from(outcome_distribution(prep, ref_a, ref_b, transmittivity), n_shots,
                       seed, seed);
}

EstimatorResult estimate_chsh(const SystemBranches& branches, const ChshSettings& settings,
                              const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
                              double transmittivity, std::uint64_t shots_per_setting,
                              std::uint64_t seed) {
    return estimate_from(branches, settings, ref_a, ref_b, transmittivity,
                         shots_per_setting, seed);
}

EstimatorResult estimate_chsh(const SystemPrep& prep, const ChshSettings& settings,
                              const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
                              double transmittivity, std::uint64_t shots_per_setting,
                              std::uint64_t seed) {
    return estimate_from(branches_of(prep), settings, ref_a, ref_b, transmittivity,
                         shots_per_setting, seed);
}

EstimatorResult estimate_chsh(const MixedPrep& prep, const ChshSettings& settings,
                              const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
                              double transmittivity, std::uint64_t shots_per_setting,
                              std::uint64_t seed) {
    return estimate_from(branches_of(prep), settings, ref_a, ref_b, transmittivity,
                         shots_per_setting, seed);
}

}  // namespace modebell
