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

#include <random>
#include <set>

#include "modebell/fock.hpp"

using namespace modebell;

namespace {

PureState random_state(std::shared_ptr<const FockBasis> basis, std::mt19937& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis->dim()));
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        amps[i] = Complex(normal(rng), normal(rng));
    }
    return PureState(std::move(basis), std::move(amps)).normalized();
}

}  // namespace

TEST_CASE("basis dimensions follow the stars-and-bars count") {
    CHECK(FockBasis(1, 1).dim() == 2);
    CHECK(FockBasis(4, 3).dim() == 35);  // 1 + 4 + 10 + 20
    CHECK(FockBasis(2, 0).dim() == 1);
    CHECK(FockBasis(2, 0).occupation(0) == OccupationVector{0, 0});
    CHECK(FockBasis(2, 3).dim() == 10);
    CHECK(FockBasis(4, 4).dim() == 70);
}

TEST_CASE("basis rejects invalid parameters") {
    CHECK_THROWS_AS(FockBasis(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(FockBasis(2, -1), std::invalid_argument);
}

TEST_CASE("ordering is graded lexicographic") {
    const FockBasis basis(2, 2);
    const std::vector<OccupationVector> expected = {{0, 0}, {0, 1}, {1, 0},
                                                    {0, 2}, {1, 1}, {2, 0}};
    REQUIRE(basis.dim() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(basis.occupation(i) == expected[i]);
    }
}

TEST_CASE("index map is a bijection") {
    for (const auto& [m, n] : {std::pair{1, 3}, {3, 2}, {4, 3}}) {
        const FockBasis basis(m, n);
        for (std::size_t i = 0; i < basis.dim(); ++i) {
            CHECK(basis.index_of(basis.occupation(i)) == i);
        }
    }
    CHECK_THROWS_AS(FockBasis(2, 1).index_of({1, 1}), std::out_of_range);
}

TEST_CASE("creation operator ladder factors") {
    auto basis = FockBasis::shared(1, 3);
    const PureState vac = PureState::vacuum(basis);

    const PureState one = apply_creation(vac, 0);
    CHECK(std::abs(one.amplitudes()[basis->index_of({1})] - 1.0) < kAlgebraTol);

    const PureState two = apply_creation(one, 0);
    CHECK(std::abs(two.amplitudes()[basis->index_of({2})] - std::sqrt(2.0)) < kAlgebraTol);
}

TEST_CASE("creation past the truncation is an error, not a silent drop") {
    auto basis = FockBasis::shared(2, 1);
    const PureState one = apply_creation(PureState::vacuum(basis), 0);
    CHECK_THROWS_AS(apply_creation(one, 0), TruncationError);
    CHECK_THROWS_AS(apply_creation(one, 1), TruncationError);
}

TEST_CASE("annihilation operator") {
    auto basis = FockBasis::shared(1, 2);
    const PureState vac = PureState::vacuum(basis);
    CHECK(apply_annihilation(vac, 0).norm() == 0.0);

    const PureState two = PureState::basis_state(basis, {2});
    const PureState one = apply_annihilation(two, 0);
    CHECK(std::abs(one.amplitudes()[basis->index_of({1})] - std::sqrt(2.0)) < kAlgebraTol);

    // a a^dag |0> = |0>
    const PureState back = apply_annihilation(apply_creation(vac, 0), 0);
    CHECK((back.amplitudes() - vac.amplitudes()).norm() < kAlgebraTol);
}

TEST_CASE("ladder algebra on random states below the truncation") {
    std::mt19937 rng(11);
    auto basis = FockBasis::shared(2, 3);
    for (int rep = 0; rep < 20; ++rep) {
        // Restrict support to total <= 2 so a^dag stays in range.
        PureState psi = random_state(basis, rng);
        Eigen::VectorXcd amps = psi.amplitudes();
        for (std::size_t i = 0; i < basis->dim(); ++i) {
            if (basis->total(i) == basis->max_total()) amps[static_cast<Eigen::Index>(i)] = 0.0;
        }
        psi = PureState(basis, amps).normalized();
        for (int mode = 0; mode < 2; ++mode) {
            const Eigen::VectorXcd commutator =
                apply_annihilation(apply_creation(psi, mode), mode).amplitudes() -
                apply_creation(apply_annihilation(psi, mode), mode).amplitudes();
            CHECK((commutator - psi.amplitudes()).norm() < kAlgebraTol);
        }
    }
}

TEST_CASE("number operator eigenvalues") {
    auto basis = FockBasis::shared(1, 3);
    for (int n = 0; n <= 2; ++n) {
        const PureState fock = PureState::basis_state(basis, {n});
        const PureState counted = apply_creation(apply_annihilation(fock, 0), 0);
        CHECK(std::abs(counted.amplitudes()[basis->index_of({n})] - double(n)) < kAlgebraTol);
    }
}

TEST_CASE("tensor product concatenates mode registers") {
    auto single = FockBasis::shared(1, 1);
    const PureState one = PureState::basis_state(single, {1});
    const PureState zero = PureState::basis_state(single, {0});

    const PureState ten = tensor_product(one, zero);
    CHECK(ten.basis().modes() == 2);
    CHECK(ten.basis().max_total() == 2);
    CHECK(std::abs(ten.amplitudes()[ten.basis().index_of({1, 0})] - 1.0) < kAlgebraTol);

    Eigen::VectorXcd plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const PureState superposed = tensor_product(PureState(single, plus), one);
    CHECK(std::abs(superposed.amplitudes()[superposed.basis().index_of({0, 1})] -
                   1.0 / std::sqrt(2.0)) < kAlgebraTol);
    CHECK(std::abs(superposed.amplitudes()[superposed.basis().index_of({1, 1})] -
                   1.0 / std::sqrt(2.0)) < kAlgebraTol);
}

TEST_CASE("tensor product agrees with the outer-product density route") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        const PureState psi = random_state(FockBasis::shared(2, 1), rng);
        const PureState phi = random_state(FockBasis::shared(1, 1), rng);
        const DensityOperator via_pure = DensityOperator::from_pure(tensor_product(psi, phi));
        const DensityOperator via_density =
            tensor_product(DensityOperator::from_pure(psi), DensityOperator::from_pure(phi));
        CHECK((via_pure.matrix() - via_density.matrix()).cwiseAbs().maxCoeff() < kAlgebraTol);
    }
}

TEST_CASE("tensor product preserves inner products (isometric embedding)") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const PureState a1 = random_state(FockBasis::shared(2, 2), rng);
        const PureState a2 = random_state(FockBasis::shared(2, 2), rng);
        const PureState b1 = random_state(FockBasis::shared(1, 1), rng);
        const PureState b2 = random_state(FockBasis::shared(1, 1), rng);
        const Complex lhs = tensor_product(a1, b1).inner(tensor_product(a2, b2));
        const Complex rhs = a1.inner(a2) * b1.inner(b2);
        CHECK(std::abs(lhs - rhs) < kAlgebraTol);
    }
}

TEST_CASE("tensor embedding hits distinct combined-basis slots") {
    // With the combined cap equal to the sum of the component caps, every
    // (left, right) basis pair maps to its own combined index.
    const FockBasis left(2, 1);
    const FockBasis right(1, 1);
    const FockBasis combined(3, 2);
    std::set<std::size_t> images;
    for (std::size_t i = 0; i < left.dim(); ++i) {
        for (std::size_t j = 0; j < right.dim(); ++j) {
            OccupationVector occ = left.occupation(i);
            const OccupationVector& rocc = right.occupation(j);
            occ.insert(occ.end(), rocc.begin(), rocc.end());
            images.insert(combined.index_of(occ));
        }
    }
    CHECK(images.size() == left.dim() * right.dim());
}

TEST_CASE("tensor product with an explicit cap rejects overflow") {
    auto single = FockBasis::shared(1, 1);
    const PureState one = PureState::basis_state(single, {1});
    CHECK_THROWS_AS(tensor_product(one, one, 1), TruncationError);
    const PureState ok = tensor_product(one, PureState::basis_state(single, {0}), 1);
    CHECK(ok.basis().max_total() == 1);
}

TEST_CASE("permute_modes relabels occupations") {
    auto basis = FockBasis::shared(3, 3);
    const PureState psi = PureState::basis_state(basis, {2, 0, 1});
    const PureState rotated = permute_modes(psi, {2, 0, 1});
    CHECK(std::abs(rotated.amplitudes()[basis->index_of({1, 2, 0})] - 1.0) < kAlgebraTol);

    std::mt19937 rng(5);
    const PureState random = random_state(basis, rng);
    const PureState back = permute_modes(permute_modes(random, {1, 2, 0}), {2, 0, 1});
    CHECK((back.amplitudes() - random.amplitudes()).norm() < kAlgebraTol);
    CHECK_THROWS_AS(permute_modes(random, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("partial trace of simple two-mode states") {
    auto basis = FockBasis::shared(2, 1);
    const DensityOperator rho01 =
        DensityOperator::from_pure(PureState::basis_state(basis, {0, 1}));
    const DensityOperator reduced = partial_trace(rho01, {0});
    CHECK(reduced.basis().modes() == 1);
    CHECK(std::abs(reduced.matrix()(0, 0) - 1.0) < kAlgebraTol);  // |0><0| on A

    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(3);
    bell[static_cast<Eigen::Index>(basis->index_of({0, 1}))] = 1.0 / std::sqrt(2.0);
    bell[static_cast<Eigen::Index>(basis->index_of({1, 0}))] = 1.0 / std::sqrt(2.0);
    const DensityOperator mixed =
        partial_trace(DensityOperator::from_pure(PureState(basis, bell)), {0});
    CHECK(std::abs(mixed.matrix()(0, 0) - 0.5) < kAlgebraTol);
    CHECK(std::abs(mixed.matrix()(1, 1) - 0.5) < kAlgebraTol);
    CHECK(std::abs(mixed.matrix()(0, 1)) < kAlgebraTol);
}

TEST_CASE("partial trace of a product state recovers the kept factor") {
    std::mt19937 rng(77);
    for (int rep = 0; rep < 10; ++rep) {
        const PureState left = random_state(FockBasis::shared(2, 1), rng);
        const PureState right = random_state(FockBasis::shared(1, 2), rng);
        const DensityOperator joint = DensityOperator::from_pure(tensor_product(left, right));
        const DensityOperator kept = partial_trace(joint, {0, 1});
        const Eigen::MatrixXcd expected =
            left.amplitudes() * left.amplitudes().adjoint();
        // The reduced basis carries the joint truncation; compare on the
        // overlap (left-basis states are a prefix of the graded ordering).
        CHECK((kept.matrix().topLeftCorner(expected.rows(), expected.cols()) - expected)
                  .cwiseAbs()
                  .maxCoeff() < kAlgebraTol);
        CHECK(std::abs(kept.trace_real() - 1.0) < kAlgebraTol);
    }
}

TEST_CASE("partial trace preserves trace and positivity on random mixtures") {
    std::mt19937 rng(99);
    auto basis = FockBasis::shared(3, 2);
    for (int rep = 0; rep < 5; ++rep) {
        const DensityOperator rho = DensityOperator::mixture({
            {0.2, random_state(basis, rng)},
            {0.5, random_state(basis, rng)},
            {0.3, random_state(basis, rng)},
        });
        const DensityOperator reduced = partial_trace(rho, {0, 2});
        CHECK(std::abs(reduced.trace_real() - 1.0) < kAlgebraTol);
        CHECK_NOTHROW(reduced.validate());
    }
}

TEST_CASE("density operator validation catches defects") {
    auto basis = FockBasis::shared(1, 1);
    Eigen::MatrixXcd bad(2, 2);
    bad << 1.0, 0.5, -0.5, 0.0;
    CHECK_THROWS_AS(DensityOperator(basis, bad).validate(), std::invalid_argument);
    Eigen::MatrixXcd negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityOperator(basis, negative).validate(), std::invalid_argument);
}

TEST_CASE("mixture weights must be a distribution") {
    auto basis = FockBasis::shared(1, 1);
    const PureState zero = PureState::basis_state(basis, {0});
    CHECK_THROWS_AS(DensityOperator::mixture({{0.7, zero}}), std::invalid_argument);
    CHECK_THROWS_AS(DensityOperator::mixture({{-0.1, zero}, {1.1, zero}}),
                    std::invalid_argument);
}
