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

#include "modebell/optics.hpp"

#include <cmath>

namespace modebell {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

double int_pow(double base, int exp) {
    double p = 1.0;
    for (int i = 0; i < exp; ++i) p *= base;
    return p;
}

}  // namespace

Eigen::MatrixXcd beamsplitter_unitary(const BeamsplitterSpec& spec, const FockBasis& basis) {
    if (spec.mode_1 == spec.mode_2) {
        throw std::invalid_argument("beamsplitter_unitary: input modes must differ");
    }
    if (spec.mode_1 < 0 || spec.mode_1 >= basis.modes() || spec.mode_2 < 0 ||
        spec.mode_2 >= basis.modes()) {
        throw std::invalid_argument("beamsplitter_unitary: mode out of range");
    }
    if (!(spec.transmittivity >= 0.0 && spec.transmittivity <= 1.0)) {
        throw std::invalid_argument("beamsplitter_unitary: transmittivity outside [0,1]");
    }
    const double t = std::sqrt(spec.transmittivity);
    const double r = std::sqrt(1.0 - spec.transmittivity);
    const auto m1 = static_cast<std::size_t>(spec.mode_1);
    const auto m2 = static_cast<std::size_t>(spec.mode_2);

    const auto dim = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);

    // Column i is the image of basis state i. With occupations (n1, n2) on
    // the splitter pair,
    //   (a^dag)^n1 (x^dag)^n2 |vac>
    //     -> (t c^dag + r d^dag)^n1 (-r c^dag + t d^dag)^n2 |vac>,
    // expanded binomially; other modes ride along untouched. Each term
    // lands in the same total-number sector, so the matrix is exactly
    // block diagonal.
    OccupationVector target;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const OccupationVector& occ = basis.occupation(i);
        const int n1 = occ[m1];
        const int n2 = occ[m2];
        const double in_norm = std::sqrt(factorial(n1) * factorial(n2));
        for (int j = 0; j <= n1; ++j) {
            for (int k = 0; k <= n2; ++k) {
                const int p = j + k;
                const int q = n1 + n2 - p;
                const double coeff = binomial(n1, j) * binomial(n2, k) *
                                     int_pow(t, j) * int_pow(r, n1 - j) *
                                     int_pow(-r, k) * int_pow(t, n2 - k) *
                                     std::sqrt(factorial(p) * factorial(q)) / in_norm;
                if (coeff == 0.0) continue;
                target = occ;
                target[m1] = p;
                target[m2] = q;
                u(static_cast<Eigen::Index>(basis.index_of(target)),
                  static_cast<Eigen::Index>(i)) += coeff;
            }
        }
    }
    return u;
}

Eigen::MatrixXcd phase_unitary(const PhaseShiftSpec& spec, const FockBasis& basis) {
    if (spec.mode < 0 || spec.mode >= basis.modes()) {
        throw std::invalid_argument("phase_unitary: mode out of range");
    }
    const auto dim = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const int n = basis.occupation(i)[static_cast<std::size_t>(spec.mode)];
        u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            std::polar(1.0, n * spec.theta);
    }
    return u;
}

PureState apply_phase(const PureState& state, const PhaseShiftSpec& spec) {
    const FockBasis& basis = state.basis();
    if (spec.mode < 0 || spec.mode >= basis.modes()) {
        throw std::invalid_argument("apply_phase: mode out of range");
    }
    Eigen::VectorXcd out = state.amplitudes();
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const int n = basis.occupation(i)[static_cast<std::size_t>(spec.mode)];
        if (n != 0) out[static_cast<Eigen::Index>(i)] *= std::polar(1.0, n * spec.theta);
    }
    return PureState(state.basis_ptr(), std::move(out));
}

PureState apply_unitary(const PureState& state, const Eigen::MatrixXcd& unitary) {
    if (unitary.rows() != state.amplitudes().size() ||
        unitary.cols() != state.amplitudes().size()) {
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    }
    return PureState(state.basis_ptr(), unitary * state.amplitudes());
}

DensityOperator apply_unitary(const DensityOperator& rho, const Eigen::MatrixXcd& unitary) {
    if (unitary.rows() != rho.matrix().rows() || unitary.cols() != rho.matrix().cols()) {
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    }
    return DensityOperator(rho.basis_ptr(), unitary * rho.matrix() * unitary.adjoint());
}

}  // namespace modebell
