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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "modebell/analytic.hpp"

using namespace modebell;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTsirelson = 2.0 * std::numbers::sqrt2;
// Root of 2 sqrt(2) |2p - 1| = 2.
const double kBoundary = 0.5 * (1.0 - 1.0 / std::numbers::sqrt2);

}  // namespace

TEST_CASE("analytic correlator basics") {
    const double s = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(e_analytic(s, s, 0.7, 0.7) - 1.0) < kAlgebraTol);
    CHECK(e_analytic(1.0, 0.0, 0.3, 1.9) == 0.0);
    CHECK(std::abs(e_analytic(s, s, kPi / 2.0, 0.0)) < kAlgebraTol);
    CHECK_THROWS_AS(e_analytic(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("analytic correlator agrees with the exact simulation") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const double alpha_sq = uni(rng);
        const double gamma = 2.0 * kPi * uni(rng) - kPi;
        const double theta_a = 2.0 * kPi * uni(rng) - kPi;
        const double theta_b = 2.0 * kPi * uni(rng) - kPi;
        const SystemPrep prep = SystemPrep::from_weights(alpha_sq, gamma);
        const double simulated =
            correlation(run_experiment(prep, ReferenceSpec::balanced(theta_a),
                                       ReferenceSpec::balanced(theta_b), 0.5));
        CHECK(std::abs(simulated - e_analytic(prep.alpha, prep.beta, theta_a, theta_b)) <
              1e-10);
    }
}

TEST_CASE("optimal settings satisfy the stated relations") {
    const ChshSettings s0 = optimal_settings(0.0, 0.0);
    CHECK(s0.theta_a1 == 0.0);
    CHECK(std::abs(s0.theta_a2 - kPi / 2.0) < kAlgebraTol);
    CHECK(std::abs(s0.theta_b1 - kPi / 4.0) < kAlgebraTol);
    CHECK(std::abs(s0.theta_b2 + kPi / 4.0) < kAlgebraTol);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-kPi, kPi);
    for (int rep = 0; rep < 10; ++rep) {
        const double gamma = uni(rng);
        const double theta_a1 = uni(rng);
        const ChshSettings s = optimal_settings(gamma, theta_a1);
        CHECK(std::abs(s.theta_a2 - s.theta_a1 - kPi / 2.0) < kAlgebraTol);
        CHECK(std::abs(s.theta_b2 - s.theta_b1 + kPi / 2.0) < kAlgebraTol);
        CHECK(std::abs(s.theta_b1 - gamma - theta_a1 - kPi / 4.0) < kAlgebraTol);
        const double c = chsh(SystemPrep::from_weights(0.5, gamma),
                              ReferenceSpec::balanced(), ReferenceSpec::balanced(), s, 0.5);
        CHECK(std::abs(c - kTsirelson) < 1e-12);
    }
}

TEST_CASE("mixed surface anchors") {
    CHECK(std::abs(max_c_over_d(0.0) - kTsirelson) < 1e-9);
    CHECK(max_c_over_d(0.5) < 1e-12);
    CHECK(std::abs(max_c_over_d(0.3) - kTsirelson * 0.4) < 1e-9);
    CHECK(std::abs(c_mixed(0.3, -kPi / 4.0) - kTsirelson * 0.4) < 1e-12);
    CHECK(std::abs(c_mixed(0.3, 0.0) - 0.8) < 1e-12);
    // p <-> 1 - p symmetry.
    CHECK(std::abs(max_c_over_d(0.2) - max_c_over_d(0.8)) < 1e-9);
}

TEST_CASE("surface matches the exact mixture simulation") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int rep = 0; rep < 15; ++rep) {
        const double p = uni(rng);
        const double d = 2.0 * kPi * uni(rng) - kPi;
        const double gamma1 = 2.0 * kPi * uni(rng) - kPi;
        const double simulated =
            chsh(balanced_mixed_prep(p, gamma1), ReferenceSpec::balanced(),
                 ReferenceSpec::balanced(), surface_settings(gamma1, d), 0.5);
        CHECK(std::abs(simulated - c_mixed(p, d)) < 1e-10);
    }
}

TEST_CASE("analytic d-maximum equals the simulated d-maximum") {
    for (double p : {0.15, 0.5, 0.8}) {
        const MixedPrep prep = balanced_mixed_prep(p, 0.0);
        double simulated_max = 0.0;
        for (int i = 0; i < 72; ++i) {
            const double d = -kPi + 2.0 * kPi * i / 72.0;
            simulated_max = std::max(
                simulated_max, chsh(prep, ReferenceSpec::balanced(),
                                    ReferenceSpec::balanced(), surface_settings(0.0, d), 0.5));
        }
        // The simulated grid max sits within one grid cell of the analytic
        // maximum; both agree with 2 sqrt(2)|2p - 1| at the refined optimum.
        CHECK(simulated_max <= max_c_over_d(p) + 1e-10);
        CHECK(max_c_over_d(p) - simulated_max <
              2.0 * std::numbers::sqrt2 * (1.0 - std::cos(kPi / 72.0)) + 1e-9);
    }
}

TEST_CASE("surface grid is ordered by p then d") {
    const auto surface = c_mixed_surface({0.0, 0.5, 1.0}, {-1.0, 0.0, 1.0});
    REQUIRE(surface.size() == 9);
    CHECK(surface[0].p == 0.0);
    CHECK(surface[0].d == -1.0);
    CHECK(surface[4].p == 0.5);
    CHECK(surface[4].d == 0.0);
    CHECK(surface[8].p == 1.0);
    for (const SurfacePoint& point : surface) {
        CHECK(point.c >= 0.0);
        CHECK(point.c <= kTsirelson + 1e-9);
    }
}

TEST_CASE("violation boundary") {
    const ViolationBoundary boundary = violation_boundary();
    CHECK(std::abs(boundary.lower - kBoundary) < 1e-6);
    CHECK(std::abs(boundary.upper - (1.0 - kBoundary)) < 1e-6);
    CHECK(std::abs(max_c_over_d(boundary.lower) - 2.0) < 1e-8);
    // Stable under d-grid refinement.
    CHECK(std::abs(violation_boundary(1e-9, 720).lower - boundary.lower) < 1e-8);
}

TEST_CASE("horodecki criterion on the mixed family") {
    CHECK(std::abs(horodecki_max_chsh(TwoQubitState::from_prep(
                       SystemPrep::from_weights(0.5, 0.0))) -
                   kTsirelson) < 1e-10);
    for (double gamma1 : {0.0, 0.9, -2.1}) {
        for (int i = 0; i <= 10; ++i) {
            const double p = i / 10.0;
            const double expected = 2.0 * std::sqrt(1.0 + (2.0 * p - 1.0) * (2.0 * p - 1.0));
            const double value =
                horodecki_max_chsh(TwoQubitState::from_prep(balanced_mixed_prep(p, gamma1)));
            CHECK(std::abs(value - expected) < 1e-8);
        }
    }
    CHECK(horodecki_max_chsh(TwoQubitState::maximally_mixed()) < 1e-12);
}

TEST_CASE("horodecki value dominates the protocol CHSH at any tested settings") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> uni(-kPi, kPi);
    for (double p : {0.0, 0.2, 0.5, 0.9}) {
        const MixedPrep prep = balanced_mixed_prep(p, 0.3);
        const double bound = horodecki_max_chsh(TwoQubitState::from_prep(prep));
        for (int rep = 0; rep < 10; ++rep) {
            const ChshSettings s{uni(rng), uni(rng), uni(rng), uni(rng)};
            const double c =
                chsh(prep, ReferenceSpec::balanced(), ReferenceSpec::balanced(), s, 0.5);
            CHECK(c <= bound + 1e-9);
        }
    }
}

TEST_CASE("two-qubit state validation") {
    Eigen::Matrix4cd not_psd = Eigen::Matrix4cd::Zero();
    not_psd(0, 0) = 1.5;
    not_psd(1, 1) = -0.5;
    CHECK_THROWS_AS(TwoQubitState{not_psd}, std::invalid_argument);
    Eigen::Matrix4cd not_hermitian = Eigen::Matrix4cd::Identity() * 0.25;
    not_hermitian(0, 1) = Complex(0.0, 0.3);
    CHECK_THROWS_AS(TwoQubitState{not_hermitian}, std::invalid_argument);
}

TEST_CASE("biased references keep the conditional violation, cost acceptance") {
    const auto points = biased_reference_scan({0.25, 0.4, 0.5}, 24);
    REQUIRE(points.size() == 3);
    for (const BiasedScanPoint& point : points) {
        CHECK(std::abs(point.max_c - kTsirelson) < 1e-9);
        CHECK(std::abs(point.p_select - point.q_sq * (1.0 - point.q_sq)) < 1e-10);
    }
    CHECK(points[2].p_select == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(points[1].max_c > 2.0);  // violation persists away from the balanced point
}

TEST_CASE("biased scan rejects degenerate coefficients") {
    CHECK_THROWS_AS(biased_reference_scan({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(biased_reference_scan({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(biased_reference_scan({}), std::invalid_argument);
}
