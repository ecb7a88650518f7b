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

#include "modebell/analytic.hpp"

#include <cmath>
#include <numbers>

namespace modebell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

}  // namespace

double e_analytic(Complex alpha, Complex beta, double theta_a, double theta_b) {
    const double norm_sq = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm_sq - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("e_analytic: |alpha|^2 + |beta|^2 must be 1");
    }
    const double prefactor = 2.0 * std::abs(alpha) * std::abs(beta);
    if (prefactor == 0.0) return 0.0;  // arg() of a zero product is meaningless
    const double gamma = std::arg(alpha * std::conj(beta));
    return prefactor * std::cos(gamma + theta_a - theta_b);
}

ChshSettings optimal_settings(double gamma, double theta_a1) {
    const double theta_b1 = gamma + theta_a1 + kPi / 4.0;
    return {theta_a1, theta_a1 + kHalfPi, theta_b1, theta_b1 - kHalfPi};
}

MixedPrep balanced_mixed_prep(double p, double gamma1) {
    return MixedPrep(p, SystemPrep::from_weights(0.5, gamma1),
                     SystemPrep::from_weights(0.5, gamma1 + kPi));
}

ChshSettings surface_settings(double gamma1, double d) {
    const double theta_b1 = gamma1 - d;  // so that gamma1 + theta_a1 - theta_b1 = d
    return {0.0, kHalfPi, theta_b1, theta_b1 - kHalfPi};
}

double c_mixed(double p, double d) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("c_mixed: p outside [0,1]");
    // Branch correlators are cos(d + offset) and -cos(d + offset); mixing
    // the unconditional distributions (equal acceptance in both branches)
    // leaves E_mix = (2p - 1) cos(d + offset).
    const double k = 2.0 * p - 1.0;
    const double e11 = k * std::cos(d);
    const double e12 = k * std::cos(d + kHalfPi);
    const double e21 = k * std::cos(d + kHalfPi);
    const double e22 = k * std::cos(d + kPi);
    return std::abs(e11 + e12 + e21 - e22);
}

std::vector<SurfacePoint> c_mixed_surface(const std::vector<double>& p_grid,
                                          const std::vector<double>& d_grid) {
    if (p_grid.empty() || d_grid.empty()) {
        throw std::invalid_argument("c_mixed_surface: grids must be nonempty");
    }
    std::vector<SurfacePoint> surface;
    surface.reserve(p_grid.size() * d_grid.size());
    for (double p : p_grid) {
        for (double d : d_grid) {
            surface.push_back({p, d, c_mixed(p, d)});
        }
    }
    return surface;
}

double max_c_over_d(double p, int d_points) {
    if (d_points < 2) throw std::invalid_argument("max_c_over_d: need at least 2 points");
    double best_d = 0.0;
    double best = c_mixed(p, 0.0);
    for (int i = 0; i < d_points; ++i) {
        const double d = -kPi + 2.0 * kPi * i / d_points;
        const double c = c_mixed(p, d);
        if (c > best) {
            best = c;
            best_d = d;
        }
    }
    // Shrink a bracket of one grid spacing around the incumbent.
    double lo = best_d - 2.0 * kPi / d_points;
    double hi = best_d + 2.0 * kPi / d_points;
    while (hi - lo > 1e-12) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (c_mixed(p, m1) < c_mixed(p, m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    return std::max(best, c_mixed(p, 0.5 * (lo + hi)));
}

ViolationBoundary violation_boundary(double tol, int d_points) {
    if (tol <= 0.0) throw std::invalid_argument("violation_boundary: tol must be positive");
    // max_d C is 2 sqrt(2) at p = 0 and 0 at p = 1/2; bisect the crossing of 2.
    double lo = 0.0;
    double hi = 0.5;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (max_c_over_d(mid, d_points) > 2.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double p_star = 0.5 * (lo + hi);
    return {p_star, 1.0 - p_star};
}

TwoQubitState::TwoQubitState(Eigen::Matrix4cd matrix) : matrix_(std::move(matrix)) {
    constexpr double tol = 1e-10;
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("TwoQubitState: not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > tol) {
        throw std::invalid_argument("TwoQubitState: trace != 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument("TwoQubitState: not positive semidefinite");
    }
}

TwoQubitState TwoQubitState::from_prep(const SystemPrep& prep) {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi[1] = prep.alpha;  // |01>: empty A, occupied B
    psi[2] = prep.beta;   // |10>
    return TwoQubitState(psi * psi.adjoint());
}

TwoQubitState TwoQubitState::from_prep(const MixedPrep& prep) {
    const Eigen::Matrix4cd m1 = from_prep(prep.psi1).matrix();
    const Eigen::Matrix4cd m2 = from_prep(prep.psi2).matrix();
    return TwoQubitState(prep.p * m1 + (1.0 - prep.p) * m2);
}

TwoQubitState TwoQubitState::maximally_mixed() {
    return TwoQubitState(Eigen::Matrix4cd::Identity() * 0.25);
}

Eigen::Matrix3d TwoQubitState::correlation_matrix() const {
    using M2 = Eigen::Matrix2cd;
    const Complex i(0.0, 1.0);
    std::array<M2, 3> pauli;
    pauli[0] << 0, 1, 1, 0;
    pauli[1] << 0, -i, i, 0;
    pauli[2] << 1, 0, 0, -1;

    Eigen::Matrix3d t;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            Eigen::Matrix4cd kron;
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    kron.block<2, 2>(2 * j, 2 * k) = pauli[a](j, k) * pauli[b];
                }
            }
            t(a, b) = (matrix_ * kron).trace().real();
        }
    }
    return t;
}

double horodecki_max_chsh(const TwoQubitState& state) {
    const Eigen::Matrix3d t = state.correlation_matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.transpose() * t,
                                                          Eigen::EigenvaluesOnly);
    const auto& u = solver.eigenvalues();  // ascending
    return 2.0 * std::sqrt(std::max(u[2] + u[1], 0.0));
}

std::vector<BiasedScanPoint> biased_reference_scan(const std::vector<double>& q_sq_grid,
                                                   int angle_points) {
    if (q_sq_grid.empty()) {
        throw std::invalid_argument("biased_reference_scan: empty grid");
    }
    for (double q_sq : q_sq_grid) {
        if (!(q_sq > 0.0 && q_sq < 1.0)) {
            throw std::invalid_argument("biased_reference_scan: q_sq must lie in (0,1)");
        }
    }
    const SystemPrep prep = SystemPrep::from_weights(0.5, 0.0);
    const SystemBranches branches = branches_of(prep);
    const std::vector<double> grid = uniform_angle_grid(angle_points);
    const std::vector<ChshSettings> seeds = {optimal_settings(0.0)};

    std::vector<BiasedScanPoint> points;
    points.reserve(q_sq_grid.size());
    for (double q_sq : q_sq_grid) {
        const ReferenceSpec ref = ReferenceSpec::biased(q_sq);
        const auto objective = [&](const ChshSettings& s) {
            return chsh(branches, ref, ref, s, 0.5);
        };
        const ChshOptimum opt = maximize_chsh(objective, grid, 1e-8, seeds);
        const CoincidenceTable table =
            run_experiment(branches, ref.with_theta(opt.settings.theta_a1),
                           ref.with_theta(opt.settings.theta_b1), 0.5);
        points.push_back({q_sq, opt.value, table.p_select, opt.settings});
    }
    return points;
}

}  // namespace modebell
