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

#include "modebell/json_io.hpp"

#include <cstdio>

namespace modebell {

Json to_json(const PureState& state) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
        const Complex a = state.amplitudes()[i];
        amps.push_back(Json::array({a.real(), a.imag()}));
    }
    return Json{{"M", state.basis().modes()},
                {"N_max", state.basis().max_total()},
                {"amplitudes", std::move(amps)}};
}

PureState pure_state_from_json(const Json& j) {
    auto basis = FockBasis::shared(j.at("M").get<int>(), j.at("N_max").get<int>());
    const auto& amps = j.at("amplitudes");
    if (amps.size() != basis->dim()) {
        throw std::invalid_argument("pure_state_from_json: amplitude count mismatch");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] =
            Complex(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
    }
    return PureState(std::move(basis), std::move(v));
}

Json to_json(const CoincidenceTable& table) {
    return Json{{"cC", table.p_cC},
                {"cD", table.p_cD},
                {"dC", table.p_dC},
                {"dD", table.p_dD},
                {"select", table.p_select}};
}

CoincidenceTable coincidence_table_from_json(const Json& j) {
    return {j.at("cC").get<double>(), j.at("cD").get<double>(), j.at("dC").get<double>(),
            j.at("dD").get<double>(), j.at("select").get<double>()};
}

Json to_json(const ChshSettings& settings) {
    return Json{{"theta_a1", settings.theta_a1},
                {"theta_a2", settings.theta_a2},
                {"theta_b1", settings.theta_b1},
                {"theta_b2", settings.theta_b2}};
}

std::string occupation_key(const OccupationVector& occ) {
    std::string key;
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(occ[i]);
    }
    return key;
}

Json to_json(const ShotSummary& summary) {
    Json counts = Json::object();
    for (const auto& [occ, n] : summary.counts) {
        counts[occupation_key(occ)] = n;
    }
    return Json{{"shots", summary.shots},
                {"accepted", summary.accepted},
                {"counts", std::move(counts)},
                {"seed", summary.seed}};
}

Json to_json(const EstimatorResult& result) {
    static constexpr std::array<const char*, 4> kPairNames = {"a1b1", "a1b2", "a2b1",
                                                              "a2b2"};
    Json e_hat = Json::object();
    std::uint64_t accepted_total = 0;
    for (std::size_t k = 0; k < result.per_setting.size(); ++k) {
        const SettingEstimate& est = result.per_setting[k];
        accepted_total += est.accepted;
        e_hat[kPairNames[k]] = Json{{"value", est.e_hat},
                                    {"stderr", est.std_err},
                                    {"accepted", est.accepted}};
    }
    return Json{{"settings", to_json(result.settings)},
                {"shots", result.shots_total},
                {"accepted", accepted_total},
                {"E_hat", std::move(e_hat)},
                {"C_hat", result.c_hat},
                {"stderr", result.c_std_err},
                {"acceptance_rate", result.acceptance_rate},
                {"seed", result.seed}};
}

std::string surface_csv(const std::vector<SurfacePoint>& surface) {
    std::string out = "p,d,C\n";
    char row[96];
    for (const SurfacePoint& point : surface) {
        std::snprintf(row, sizeof(row), "%.12g,%.12g,%.12g\n", point.p, point.d, point.c);
        out += row;
    }
    return out;
}

}  // namespace modebell
