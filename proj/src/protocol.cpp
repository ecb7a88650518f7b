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

#include "modebell/protocol.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "modebell/optics.hpp"

namespace modebell {

namespace {

constexpr double kSelectionFloor = 1e-14;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Combined network unitary U_B(2,3; T) * U_A(0,1; T) on the four-wire basis
// (a, x_A, b, x_B), cached per (max_total, T). The beamsplitters act on
// disjoint pairs, so the order of the product is immaterial.
std::shared_ptr<const Eigen::MatrixXcd> network_unitary(int max_total, double t) {
    static std::mutex mutex;
    static std::map<std::pair<int, double>, std::shared_ptr<const Eigen::MatrixXcd>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{max_total, t}];
    if (!slot) {
        auto basis = FockBasis::shared(4, max_total);
        Eigen::MatrixXcd u = beamsplitter_unitary({2, 3, t}, *basis) *
                             beamsplitter_unitary({0, 1, t}, *basis);
        slot = std::make_shared<const Eigen::MatrixXcd>(std::move(u));
    }
    return slot;
}

PureState reference_state(const ReferenceSpec& ref) {
    auto basis = FockBasis::shared(1, 1);
    Eigen::VectorXcd amps(2);
    amps[0] = ref.q;
    amps[1] = ref.r * std::polar(1.0, ref.theta);
    return PureState(std::move(basis), std::move(amps));
}

void check_transmittivity(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("transmittivity outside [0,1]");
    }
}

}  // namespace

SystemPrep::SystemPrep(Complex alpha_in, Complex beta_in) : alpha(alpha_in), beta(beta_in) {
    const double norm_sq = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm_sq - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("SystemPrep: |alpha|^2 + |beta|^2 must be 1");
    }
}

SystemPrep SystemPrep::from_weights(double alpha_sq, double gamma) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
        throw std::invalid_argument("SystemPrep: alpha_sq outside [0,1]");
    }
    return SystemPrep(std::sqrt(alpha_sq),
                      std::sqrt(1.0 - alpha_sq) * std::polar(1.0, -gamma));
}

MixedPrep::MixedPrep(double p_in, SystemPrep psi1_in, SystemPrep psi2_in)
    : p(p_in), psi1(psi1_in), psi2(psi2_in) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("MixedPrep: p outside [0,1]");
    }
    const Complex overlap =
        std::conj(psi1.alpha) * psi2.alpha + std::conj(psi1.beta) * psi2.beta;
    if (std::abs(overlap) > kAlgebraTol) {
        throw std::invalid_argument("MixedPrep: branch states must be orthogonal");
    }
}

ReferenceSpec::ReferenceSpec(Complex q_in, Complex r_in, double theta_in)
    : q(q_in), r(r_in), theta(theta_in) {
    const double norm_sq = std::norm(q) + std::norm(r);
    if (std::abs(norm_sq - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("ReferenceSpec: |q|^2 + |r|^2 must be 1");
    }
}

ReferenceSpec ReferenceSpec::balanced(double theta) {
    const double s = 1.0 / std::numbers::sqrt2;
    return {s, s, theta};
}

ReferenceSpec ReferenceSpec::biased(double q_sq, double theta) {
    if (!(q_sq >= 0.0 && q_sq <= 1.0)) {
        throw std::invalid_argument("ReferenceSpec: q_sq outside [0,1]");
    }
    return {std::sqrt(q_sq), std::sqrt(1.0 - q_sq), theta};
}

std::vector<Outcome> OutcomeDistribution::outcomes() const {
    std::vector<Outcome> out;
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        const double p = probabilities[static_cast<Eigen::Index>(i)];
        if (p > 0.0) out.push_back({basis->occupation(i), p});
    }
    return out;
}

PureState system_state(const SystemPrep& prep) {
    auto basis = FockBasis::shared(2, 1);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(3);
    amps[static_cast<Eigen::Index>(basis->index_of({0, 1}))] = prep.alpha;
    amps[static_cast<Eigen::Index>(basis->index_of({1, 0}))] = prep.beta;
    return PureState(std::move(basis), std::move(amps));
}

SystemBranches branches_of(const SystemPrep& prep) {
    return {{1.0, system_state(prep)}};
}

SystemBranches branches_of(const MixedPrep& prep) {
    return {{prep.p, system_state(prep.psi1)}, {1.0 - prep.p, system_state(prep.psi2)}};
}

SystemBranches separable_branches(int total_n, const std::vector<double>& weights) {
    if (total_n < 1) throw std::invalid_argument("separable_branches: total_n must be >= 1");
    if (weights.size() != static_cast<std::size_t>(total_n) + 1) {
        throw std::invalid_argument("separable_branches: need total_n + 1 weights");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (w < -kAlgebraTol) {
            throw std::invalid_argument("separable_branches: negative weight");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("separable_branches: weights must sum to 1");
    }
    auto basis = FockBasis::shared(2, total_n);
    SystemBranches branches;
    for (int n = 0; n <= total_n; ++n) {
        branches.emplace_back(std::max(weights[static_cast<std::size_t>(n)], 0.0),
                              PureState::basis_state(basis, {n, total_n - n}));
    }
    return branches;
}

OutcomeDistribution outcome_distribution(const SystemBranches& branches,
                                         const ReferenceSpec& ref_a,
                                         const ReferenceSpec& ref_b, double transmittivity) {
    check_transmittivity(transmittivity);
    if (branches.empty()) throw std::invalid_argument("outcome_distribution: no branches");

    const PureState ref_state_a = reference_state(ref_a);
    const PureState ref_state_b = reference_state(ref_b);
    if (branches.front().second.basis().modes() != 2) {
        throw std::invalid_argument(
            "outcome_distribution: system branches must live on two modes (a, b)");
    }
    const int max_total = branches.front().second.basis().max_total() + 2;
    const auto network = network_unitary(max_total, transmittivity);
    auto out_basis = FockBasis::shared(4, max_total);

    Eigen::VectorXd probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out_basis->dim()));
    double weight_sum = 0.0;
    for (const auto& [weight, psi] : branches) {
        if (weight < 0.0) throw std::invalid_argument("outcome_distribution: negative weight");
        weight_sum += weight;
        if (weight == 0.0) continue;
        if (psi.basis().max_total() + 2 != max_total) {
            throw std::invalid_argument("outcome_distribution: branches on different bases");
        }
        // (a, b) x (x_A) x (x_B), reordered to (a, x_A, b, x_B).
        PureState full = permute_modes(
            tensor_product(tensor_product(psi, ref_state_a), ref_state_b), {0, 2, 1, 3});
        Eigen::VectorXcd amps = (*network) * full.amplitudes();
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            const double mag = std::abs(amps[i]);
            if (mag > kAmplitudeFloor) probs[i] += weight * mag * mag;
        }
    }
    if (std::abs(weight_sum - 1.0) > 1e-9) {
        throw std::invalid_argument("outcome_distribution: weights must sum to 1");
    }
    return {std::move(out_basis), std::move(probs)};
}

OutcomeDistribution outcome_distribution(const SystemPrep& prep, const ReferenceSpec& ref_a,
                                         const ReferenceSpec& ref_b, double transmittivity) {
    return outcome_distribution(branches_of(prep), ref_a, ref_b, transmittivity);
}

OutcomeDistribution outcome_distribution(const MixedPrep& prep, const ReferenceSpec& ref_a,
                                         const ReferenceSpec& ref_b, double transmittivity) {
    return outcome_distribution(branches_of(prep), ref_a, ref_b, transmittivity);
}

CoincidenceTable condition_on_selection(const OutcomeDistribution& dist) {
    const FockBasis& basis = *dist.basis;
    const auto p_at = [&](const OccupationVector& occ) {
        return dist.probabilities[static_cast<Eigen::Index>(basis.index_of(occ))];
    };
    const double p_cc = p_at({1, 0, 1, 0});
    const double p_cd = p_at({1, 0, 0, 1});
    const double p_dc = p_at({0, 1, 1, 0});
    const double p_dd = p_at({0, 1, 0, 1});
    const double p_select = p_cc + p_cd + p_dc + p_dd;
    if (p_select < kSelectionFloor) {
        throw PostSelectionError(
            "post-selection keeps no probability for this preparation");
    }
    return {p_cc / p_select, p_cd / p_select, p_dc / p_select, p_dd / p_select, p_select};
}

CoincidenceTable run_experiment(const SystemBranches& branches, const ReferenceSpec& ref_a,
                                const ReferenceSpec& ref_b, double transmittivity) {
    return condition_on_selection(outcome_distribution(branches, ref_a, ref_b, transmittivity));
}

CoincidenceTable run_experiment(const SystemPrep& prep, const ReferenceSpec& ref_a,
                                const ReferenceSpec& ref_b, double transmittivity) {
    return run_experiment(branches_of(prep), ref_a, ref_b, transmittivity);
}

CoincidenceTable run_experiment(const MixedPrep& prep, const ReferenceSpec& ref_a,
                                const ReferenceSpec& ref_b, double transmittivity) {
    return run_experiment(branches_of(prep), ref_a, ref_b, transmittivity);
}

double correlation(const CoincidenceTable& table) {
    return table.p_cC + table.p_dD - table.p_dC - table.p_cD;
}

double chsh(const SystemBranches& branches, const ReferenceSpec& ref_a,
            const ReferenceSpec& ref_b, const ChshSettings& settings, double transmittivity) {
    const auto e_at = [&](double theta_a, double theta_b) {
        return correlation(run_experiment(branches, ref_a.with_theta(theta_a),
                                          ref_b.with_theta(theta_b), transmittivity));
    };
    const double c = std::abs(e_at(settings.theta_a1, settings.theta_b1) +
                              e_at(settings.theta_a1, settings.theta_b2) +
                              e_at(settings.theta_a2, settings.theta_b1) -
                              e_at(settings.theta_a2, settings.theta_b2));
    if (c > kTsirelson + 1e-9) {
        throw std::logic_error("chsh: value exceeds the quantum bound; internal error");
    }
    return c;
}

double chsh(const SystemPrep& prep, const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
            const ChshSettings& settings, double transmittivity) {
    return chsh(branches_of(prep), ref_a, ref_b, settings, transmittivity);
}

double chsh(const MixedPrep& prep, const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
            const ChshSettings& settings, double transmittivity) {
    return chsh(branches_of(prep), ref_a, ref_b, settings, transmittivity);
}

std::vector<double> uniform_angle_grid(int n) {
    if (n < 1) throw std::invalid_argument("uniform_angle_grid: n must be >= 1");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = -std::numbers::pi + 2.0 * std::numbers::pi * i / n;
    }
    return grid;
}

namespace {

double& coordinate(ChshSettings& s, int k) {
    switch (k) {
        case 0: return s.theta_a1;
        case 1: return s.theta_a2;
        case 2: return s.theta_b1;
        default: return s.theta_b2;
    }
}

}  // namespace

ChshOptimum maximize_chsh(const std::function<double(const ChshSettings&)>& objective,
                          const std::vector<double>& angle_grid, double refine_tol,
                          const std::vector<ChshSettings>& seeds) {
    if (angle_grid.empty()) throw std::invalid_argument("maximize_chsh: empty angle grid");

    // Coordinate descent cannot leave the all-zeros plateau (any single-angle
    // move keeps C <= 2 there), so start from the best of a structured seed
    // family sweeping Bob's first angle against both +-pi/2 offset patterns.
    std::vector<ChshSettings> candidates = {{0.0, 0.0, 0.0, 0.0}};
    for (double phi : angle_grid) {
        candidates.push_back({0.0, kHalfPi, phi, phi - kHalfPi});
        candidates.push_back({0.0, -kHalfPi, phi, phi + kHalfPi});
    }
    candidates.insert(candidates.end(), seeds.begin(), seeds.end());

    ChshSettings best = candidates.front();
    double best_value = objective(best);
    for (std::size_t k = 1; k < candidates.size(); ++k) {
        const double v = objective(candidates[k]);
        if (v > best_value) {
            best_value = v;
            best = candidates[k];
        }
    }

    // Coarse coordinate sweeps over the grid until a full pass stalls.
    double grid_step = 2.0 * std::numbers::pi / static_cast<double>(angle_grid.size());
    for (int pass = 0; pass < 16; ++pass) {
        double gain = 0.0;
        for (int k = 0; k < 4; ++k) {
            ChshSettings trial = best;
            for (double angle : angle_grid) {
                coordinate(trial, k) = angle;
                const double v = objective(trial);
                if (v > best_value) {
                    gain += v - best_value;
                    best_value = v;
                    best = trial;
                }
            }
        }
        if (gain < 1e-12) break;
    }

    // Per-coordinate bracket shrinking around the incumbent.
    for (int pass = 0; pass < 64; ++pass) {
        double gain = 0.0;
        for (int k = 0; k < 4; ++k) {
            double lo = coordinate(best, k) - grid_step;
            double hi = coordinate(best, k) + grid_step;
            while (hi - lo > refine_tol) {
                const double m1 = lo + (hi - lo) / 3.0;
                const double m2 = hi - (hi - lo) / 3.0;
                ChshSettings t1 = best, t2 = best;
                coordinate(t1, k) = m1;
                coordinate(t2, k) = m2;
                if (objective(t1) < objective(t2)) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            ChshSettings trial = best;
            coordinate(trial, k) = 0.5 * (lo + hi);
            const double v = objective(trial);
            if (v > best_value) {
                gain += v - best_value;
                best_value = v;
                best = trial;
            }
        }
        grid_step = std::max(grid_step * 0.5, 8.0 * refine_tol);
        if (gain < 1e-13 && pass >= 2) break;
    }
    return {best, best_value};
}

SeparableScanResult separable_scan(int total_n, const std::vector<double>& weight_grid,
                                   const std::vector<double>& angle_grid,
                                   double transmittivity) {
    if (total_n != 1 && total_n != 2) {
        throw std::invalid_argument("separable_scan: total_n must be 1 or 2");
    }
    if (weight_grid.empty() || angle_grid.empty()) {
        throw std::invalid_argument("separable_scan: grids must be nonempty");
    }

    std::vector<std::vector<double>> weight_points;
    if (total_n == 1) {
        for (double w : weight_grid) weight_points.push_back({w, 1.0 - w});
    } else {
        for (double w0 : weight_grid) {
            for (double w1 : weight_grid) {
                if (w0 + w1 > 1.0 + kAlgebraTol) continue;
                weight_points.push_back({w0, w1, std::max(1.0 - w0 - w1, 0.0)});
            }
        }
    }

    const ReferenceSpec ref = ReferenceSpec::balanced();
    SeparableScanResult result{0.0, weight_points.front(), {0.0, 0.0, 0.0, 0.0}, 0};
    for (const auto& weights : weight_points) {
        const SystemBranches branches = separable_branches(total_n, weights);
        const auto objective = [&](const ChshSettings& s) {
            try {
                return chsh(branches, ref, ref, s, transmittivity);
            } catch (const PostSelectionError&) {
                return 0.0;  // no coincidences, nothing to violate
            }
        };
        const ChshOptimum opt = maximize_chsh(objective, angle_grid);
        ++result.points_scanned;
        if (opt.value > result.max_c) {
            result.max_c = opt.value;
            result.best_weights = weights;
            result.best_settings = opt.settings;
        }
    }
    return result;
}

}  // namespace modebell
