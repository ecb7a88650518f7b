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
 * The full two-party experiment: a single boson shared between regions A
 * and B, one local reference per party, a beamsplitter per party, and
 * number-resolved detection of the four output modes (c, d for Alice and
 * C, D for Bob). Events are post-selected on each party seeing exactly one
 * particle across their two detectors; the four conditional coincidence
 * probabilities then sum to 1 and feed the CHSH quantity.
 *
 * Conventions fixed here:
 *  - internal mode order (a, x_A, b, x_B); outputs reuse the wires as
 *    (c, d, C, D);
 *  - detector c/C scores +1 and d/D scores -1;
 *  - both beamsplitters use the same mode matrix, the system mode in the
 *    first slot and the reference in the second;
 *  - a reference with coefficients (q, r) and phase theta enters as
 *    q|0> + r e^{i theta}|1>, i.e. theta adds to arg(r/q);
 *  - mixed preparations are processed by mixing *unconditional* outcome
 *    distributions and conditioning once, which stays correct when the
 *    post-selection probability differs across branches.
 */
#pragma once

#include <array>
#include <functional>
#include <optional>

#include "modebell/fock.hpp"

namespace modebell {

/// Raised when post-selection keeps (almost) no probability.
struct PostSelectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Pure single-boson preparation alpha|01>_AB + beta|10>_AB, i.e. `alpha`
 * weights the particle sitting in region B. |alpha|^2 + |beta|^2 must be 1
 * within 1e-12.
 */
struct SystemPrep {
    Complex alpha;
    Complex beta;

    SystemPrep(Complex alpha_in, Complex beta_in);

    /// Preparation from |alpha|^2 and the relative phase gamma = arg(alpha
    /// beta^*): alpha = sqrt(alpha_sq), beta = sqrt(1-alpha_sq) e^{-i gamma}.
    /// The global phase is unphysical, so this parametrization is lossless.
    static SystemPrep from_weights(double alpha_sq, double gamma);

    double gamma() const { return std::arg(alpha * std::conj(beta)); }
};

/// Rank-2 mixture p |psi1><psi1| + (1-p) |psi2><psi2| of orthogonal pure
/// preparations (orthogonality enforced within 1e-12).
struct MixedPrep {
    double p;
    SystemPrep psi1;
    SystemPrep psi2;

    MixedPrep(double p_in, SystemPrep psi1_in, SystemPrep psi2_in);
};

/**
 * Local reference state q|0> + r e^{i theta}|1>. |q|^2 + |r|^2 must be 1
 * within 1e-12; the balanced choice |q| = |r| = 1/sqrt(2) maximizes the
 * post-selection probability.
 */
struct ReferenceSpec {
    Complex q;
    Complex r;
    double theta = 0.0;

    ReferenceSpec(Complex q_in, Complex r_in, double theta_in = 0.0);

    static ReferenceSpec balanced(double theta = 0.0);
    /// Real coefficients from |q|^2.
    static ReferenceSpec biased(double q_sq, double theta = 0.0);

    ReferenceSpec with_theta(double new_theta) const { return {q, r, new_theta}; }
};

/// The four measurement phases of a CHSH run.
struct ChshSettings {
    double theta_a1;
    double theta_a2;
    double theta_b1;
    double theta_b2;
};

/**
 * Conditional coincidence probabilities given post-selection (they sum to
 * 1), plus the post-selection probability itself.
 */
struct CoincidenceTable {
    double p_cC;
    double p_cD;
    double p_dC;
    double p_dD;
    double p_select;
};

/// One detector configuration (occupations of c, d, C, D) and its
/// unconditional probability.
struct Outcome {
    OccupationVector occupation;
    double probability;
};

/// Full unconditional outcome distribution over the output Fock basis.
struct OutcomeDistribution {
    std::shared_ptr<const FockBasis> basis;
    Eigen::VectorXd probabilities;

    /// Entries with nonzero probability, in basis order.
    std::vector<Outcome> outcomes() const;
    double total() const { return probabilities.sum(); }
};

/// Weighted pure system preparations on a common two-mode (a, b) basis.
/// Weights are >= 0 and sum to 1 within 1e-12.
using SystemBranches = std::vector<std::pair<double, PureState>>;

/// alpha|01> + beta|10> as a PureState on FockBasis(2, 1).
PureState system_state(const SystemPrep& prep);

SystemBranches branches_of(const SystemPrep& prep);
SystemBranches branches_of(const MixedPrep& prep);

/// Number-diagonal separable family sum_n w_n |n, N-n><n, N-n|_AB as
/// weighted Fock branches on FockBasis(2, N). `weights` has N+1 entries.
SystemBranches separable_branches(int total_n, const std::vector<double>& weights);

/// Exact unconditional distribution of the four detector occupations.
OutcomeDistribution outcome_distribution(const SystemBranches& branches,
                                         const ReferenceSpec& ref_a,
                                         const ReferenceSpec& ref_b,
                                         double transmittivity = 0.5);
OutcomeDistribution outcome_distribution(const SystemPrep& prep, const ReferenceSpec& ref_a,
                                         const ReferenceSpec& ref_b,
                                         double transmittivity = 0.5);
OutcomeDistribution outcome_distribution(const MixedPrep& prep, const ReferenceSpec& ref_a,
                                         const ReferenceSpec& ref_b,
                                         double transmittivity = 0.5);

/// Post-selects on exactly one particle per party and conditions. Throws
/// PostSelectionError when the selection probability is below 1e-14.
CoincidenceTable condition_on_selection(const OutcomeDistribution& dist);

CoincidenceTable run_experiment(const SystemPrep& prep, const ReferenceSpec& ref_a,
                                const ReferenceSpec& ref_b, double transmittivity = 0.5);
CoincidenceTable run_experiment(const MixedPrep& prep, const ReferenceSpec& ref_a,
                                const ReferenceSpec& ref_b, double transmittivity = 0.5);
CoincidenceTable run_experiment(const SystemBranches& branches, const ReferenceSpec& ref_a,
                                const ReferenceSpec& ref_b, double transmittivity = 0.5);

/// E = p_cC + p_dD - p_dC - p_cD; lies in [-1, 1].
double correlation(const CoincidenceTable& table);

/// |E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2)| with the settings imposed as
/// the reference phases (the q, r coefficients of the passed references are
/// kept, their theta fields are overridden per setting). Never exceeds
/// 2 sqrt(2) + 1e-9.
double chsh(const SystemBranches& branches, const ReferenceSpec& ref_a,
            const ReferenceSpec& ref_b, const ChshSettings& settings,
            double transmittivity = 0.5);
double chsh(const SystemPrep& prep, const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
            const ChshSettings& settings, double transmittivity = 0.5);
double chsh(const MixedPrep& prep, const ReferenceSpec& ref_a, const ReferenceSpec& ref_b,
            const ChshSettings& settings, double transmittivity = 0.5);

/// `n` equally spaced angles covering [-pi, pi).
std::vector<double> uniform_angle_grid(int n);

struct ChshOptimum {
    ChshSettings settings;
    double value;
};

/**
 * Deterministic derivative-free maximization of a CHSH objective over the
 * four angles: coordinate sweeps over `angle_grid` (optionally warm-started
 * from `seeds`) followed by per-coordinate bracket refinement down to
 * `refine_tol` radians. The objectives here are smooth trigonometric
 * surfaces, so this converges quickly.
 */
ChshOptimum maximize_chsh(const std::function<double(const ChshSettings&)>& objective,
                          const std::vector<double>& angle_grid, double refine_tol = 1e-8,
                          const std::vector<ChshSettings>& seeds = {});

struct SeparableScanResult {
    double max_c;
    std::vector<double> best_weights;
    ChshSettings best_settings;
    std::size_t points_scanned;
};

/**
 * Maximum CHSH value over the separable family for total particle number
 * N in {1, 2}: weights swept over `weight_grid` (the full simplex grid for
 * N = 2), angles maximized per weight point, balanced references. Grid
 * points whose post-selection probability vanishes identically (e.g. all
 * population in |2,0>) cannot produce coincidences and score 0.
 */
SeparableScanResult separable_scan(int total_n, const std::vector<double>& weight_grid,
                                   const std::vector<double>& angle_grid,
                                   double transmittivity = 0.5);

}  // namespace modebell
