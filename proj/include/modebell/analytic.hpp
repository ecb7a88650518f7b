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
 * Closed-form predictions and criteria for the protocol: the analytic
 * correlator, optimal settings, the mixed-state CHSH surface and its
 * violation boundary, the maximal-CHSH (Horodecki) criterion for the
 * effective two-qubit state, and robustness scans.
 */
#pragma once

#include "modebell/protocol.hpp"

namespace modebell {

/// Analytic correlator 2|alpha| sqrt(1-|alpha|^2) cos(gamma + theta_a -
/// theta_b) for balanced references and a 50:50 splitter.
double e_analytic(Complex alpha, Complex beta, double theta_a, double theta_b);

/// Settings that reach C = 2 sqrt(2) for the symmetric pure preparation:
/// theta_a2 = theta_a1 + pi/2, theta_b1 = gamma + theta_a1 + pi/4,
/// theta_b2 = theta_b1 - pi/2. Covariant in theta_a1.
ChshSettings optimal_settings(double gamma, double theta_a1 = 0.0);

/// Equal-weight rank-2 mixture with branch phases gamma1 and gamma1 + pi
/// (the phase offset is forced by orthogonality once all four moduli are
/// balanced). Its branch correlators mix linearly with weight 2p - 1.
MixedPrep balanced_mixed_prep(double p, double gamma1);

/// Settings holding the pure-optimal offsets while sweeping the free phase
/// d = gamma1 + theta_a1 - theta_b1.
ChshSettings surface_settings(double gamma1, double d);

struct SurfacePoint {
    double p;
    double d;
    double c;
};

/// Analytic C for the balanced mixture at mixing probability p and phase d.
double c_mixed(double p, double d);

/// C(p, d) over the grid, ordered by p then d.
std::vector<SurfacePoint> c_mixed_surface(const std::vector<double>& p_grid,
                                          const std::vector<double>& d_grid);

/// max_d C(p, d), located by a d-grid sweep plus bracket refinement.
double max_c_over_d(double p, int d_points = 360);

struct ViolationBoundary {
    double lower;  ///< p* below which the mixture violates CHSH
    double upper;  ///< 1 - p*, by the p <-> 1-p symmetry of the family
};

/// Bisection root of max_d C(p, d) = 2 on p in [0, 1/2].
ViolationBoundary violation_boundary(double tol = 1e-9, int d_points = 360);

/**
 * Two-mode occupation state restricted to at most one particle per mode,
 * i.e. a two-qubit density matrix in the basis {|00>, |01>, |10>, |11>}
 * with |0>, |1> the empty/occupied mode states. Validated Hermitian,
 * trace 1 and PSD within 1e-10 on construction.
 */
class TwoQubitState {
  public:
    explicit TwoQubitState(Eigen::Matrix4cd matrix);

    static TwoQubitState from_prep(const SystemPrep& prep);
    static TwoQubitState from_prep(const MixedPrep& prep);
    static TwoQubitState maximally_mixed();

    const Eigen::Matrix4cd& matrix() const { return matrix_; }

    /// Correlation matrix T_ij = Tr[rho sigma_i x sigma_j] over the Pauli
    /// directions (x, y, z), with sigma_z = |0><0| - |1><1| on each
    /// occupation qubit.
    Eigen::Matrix3d correlation_matrix() const;

  private:
    Eigen::Matrix4cd matrix_;
};

/// Maximal CHSH value 2 sqrt(u1 + u2) of the state over all measurement
/// settings, u1 >= u2 the two largest eigenvalues of T^T T.
double horodecki_max_chsh(const TwoQubitState& state);

struct BiasedScanPoint {
    double q_sq;
    double max_c;
    double p_select;  ///< acceptance probability at the optimal settings
    ChshSettings settings;
};

/**
 * For each |q|^2, the maximum CHSH value of the symmetric pure preparation
 * with both references biased to that coefficient (T = 1/2), maximized over
 * the four angles by grid sweep plus refinement. The conditional value
 * stays at 2 sqrt(2) across the open interval; the acceptance probability
 * (qr)^2 is what decays, and is reported alongside.
 */
std::vector<BiasedScanPoint> biased_reference_scan(const std::vector<double>& q_sq_grid,
                                                   int angle_points = 72);

}  // namespace modebell
