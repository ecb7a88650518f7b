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
 * Linear-optical elements lifted to exact unitaries on a truncated Fock
 * space: biased beamsplitters and single-mode phase shifters.
 */
#pragma once

#include "modebell/fock.hpp"

namespace modebell {

/**
 * Two-mode beamsplitter with intensity transmittivity T in [0,1].
 *
 * Convention (fixed so T = 1/2 gives c = (a - x)/sqrt(2), d = (a + x)/sqrt(2)
 * with `a` the first input mode and `x` the second):
 *
 *   a^dag -> sqrt(T)   c^dag + sqrt(1-T) d^dag
 *   x^dag -> -sqrt(1-T) c^dag + sqrt(T)   d^dag
 *
 * where output mode c reuses the first wire and d the second. The lifted
 * matrix is unitary and block diagonal in total particle number. Biased
 * splitters carry no extra phase parameter (the mode matrix is real); a
 * general SU(2) element would slot in at detail::lift_mode_matrix.
 */
struct BeamsplitterSpec {
    int mode_1;
    int mode_2;
    double transmittivity = 0.5;
};

/// Phase shifter: multiplies each amplitude by e^{i n theta}, n the
/// occupation of `mode`.
struct PhaseShiftSpec {
    int mode;
    double theta;
};

/// Exact Fock-space unitary of the beamsplitter, built per total-number
/// block by binomial re-expansion of the mode-operator substitution.
/// Throws std::invalid_argument for identical or out-of-range modes or
/// T outside [0,1].
Eigen::MatrixXcd beamsplitter_unitary(const BeamsplitterSpec& spec, const FockBasis& basis);

/// Diagonal unitary of the phase shifter.
Eigen::MatrixXcd phase_unitary(const PhaseShiftSpec& spec, const FockBasis& basis);

/// Fast path for the diagonal phase action (no matrix build).
PureState apply_phase(const PureState& state, const PhaseShiftSpec& spec);

/// |psi> -> U|psi>; norm is preserved within 1e-12 for unitary U.
PureState apply_unitary(const PureState& state, const Eigen::MatrixXcd& unitary);

/// rho -> U rho U^dag.
DensityOperator apply_unitary(const DensityOperator& rho, const Eigen::MatrixXcd& unitary);

}  // namespace modebell
