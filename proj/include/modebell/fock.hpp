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
 * Exact truncated Fock-space representation of bosonic modes: basis
 * enumeration, ladder operators, tensor products and reduced states.
 * Everything is dense; the spaces handled here top out at a few dozen
 * dimensions.
 */
#pragma once

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace modebell {

using Complex = std::complex<double>;

/// Tolerance for algebraic invariants (norms, hermiticity, traces).
inline constexpr double kAlgebraTol = 1e-12;
/// Amplitudes below this magnitude are treated as zero when enumerating
/// outcomes or testing occupancy.
inline constexpr double kAmplitudeFloor = 1e-14;

/// Raised when an operation would push population past the basis truncation.
/// Silent truncation would corrupt normalization unnoticed, so it is an error.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Particle counts per mode. All entries are >= 0 and the total never
/// exceeds the truncation of the owning basis.
using OccupationVector = std::vector<int>;

inline int occupation_total(const OccupationVector& occ) {
    int total = 0;
    for (int n : occ) total += n;
    return total;
}

/**
 * Ordered basis of all occupation configurations of `modes` bosonic modes
 * with total particle number <= `max_total`.
 *
 * The ordering is graded lexicographic and fixed: states are sorted by
 * ascending total particle number, and lexicographically by occupation
 * vector within each total-number sector. For example (modes=2,
 * max_total=2): |00>, |01>, |10>, |02>, |11>, |20>. Serialized states are
 * therefore portable across runs and processes.
 *
 * dim() equals the stars-and-bars count sum_{n=0}^{max_total}
 * C(n+modes-1, modes-1).
 *
 * Immutable after construction; safe to share across threads.
 */
class FockBasis {
  public:
    FockBasis(int modes, int max_total);

    /// Shared, process-wide cached instance for the given parameters.
    static std::shared_ptr<const FockBasis> shared(int modes, int max_total);

    int modes() const { return modes_; }
    int max_total() const { return max_total_; }
    std::size_t dim() const { return states_.size(); }

    const OccupationVector& occupation(std::size_t index) const {
        return states_.at(index);
    }
    /// Position of `occ` in the basis; throws std::out_of_range if `occ`
    /// does not belong to it.
    std::size_t index_of(const OccupationVector& occ) const;
    bool contains(const OccupationVector& occ) const;

    /// Total particle number of basis state `index`.
    int total(std::size_t index) const { return totals_.at(index); }

    bool operator==(const FockBasis& other) const {
        return modes_ == other.modes_ && max_total_ == other.max_total_;
    }

  private:
    int modes_;
    int max_total_;
    std::vector<OccupationVector> states_;
    std::vector<int> totals_;
    std::map<OccupationVector, std::size_t> index_;
};

/**
 * Complex amplitude vector over a FockBasis.
 *
 * Preparations and unitary images are normalized to 1 within 1e-12, but a
 * PureState does not enforce the norm itself: ladder operators return
 * unnormalized vectors by design (|n> -> sqrt(n+1)|n+1> etc.) and the
 * caller renormalizes when the result is used as a preparation.
 */
class PureState {
  public:
    PureState(std::shared_ptr<const FockBasis> basis, Eigen::VectorXcd amplitudes);

    static PureState vacuum(std::shared_ptr<const FockBasis> basis);
    /// The basis state |occ>.
    static PureState basis_state(std::shared_ptr<const FockBasis> basis,
                                 const OccupationVector& occ);

    const FockBasis& basis() const { return *basis_; }
    const std::shared_ptr<const FockBasis>& basis_ptr() const { return basis_; }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

    double norm() const { return amplitudes_.norm(); }
    PureState normalized() const;
    Complex inner(const PureState& other) const;

  private:
    std::shared_ptr<const FockBasis> basis_;
    Eigen::VectorXcd amplitudes_;
};

/**
 * Hermitian, trace-1, positive semidefinite matrix over a FockBasis.
 * Construction routes (from_pure, mixture) produce valid operators;
 * validate() re-checks the invariants at the standard tolerances.
 */
class DensityOperator {
  public:
    DensityOperator(std::shared_ptr<const FockBasis> basis, Eigen::MatrixXcd matrix);

    static DensityOperator from_pure(const PureState& state);
    /// Weighted mixture sum_i w_i |psi_i><psi_i|. Weights must be >= 0 and
    /// sum to 1 within 1e-12.
    static DensityOperator mixture(
        const std::vector<std::pair<double, PureState>>& branches);

    const FockBasis& basis() const { return *basis_; }
    const std::shared_ptr<const FockBasis>& basis_ptr() const { return basis_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    double trace_real() const { return matrix_.trace().real(); }
    /// Throws std::invalid_argument unless Hermitian and trace 1 within
    /// 1e-12 and min eigenvalue >= -1e-10.
    void validate() const;

  private:
    std::shared_ptr<const FockBasis> basis_;
    Eigen::MatrixXcd matrix_;
};

/// a^dag on `mode`: amplitude on |..,n,..> goes to sqrt(n+1) x amplitude on
/// |..,n+1,..>. Throws TruncationError if any amplitude above the floor sits
/// at the basis truncation.
PureState apply_creation(const PureState& state, int mode);

/// a on `mode`: |..,n,..> -> sqrt(n)|..,n-1,..>; the vacuum component maps
/// to zero.
PureState apply_annihilation(const PureState& state, int mode);

/// Concatenates mode registers (left state's modes first). The combined
/// truncation is the sum of the component truncations, so the embedding is
/// exact.
PureState tensor_product(const PureState& left, const PureState& right);
DensityOperator tensor_product(const DensityOperator& left, const DensityOperator& right);

/// As above but with an explicit combined truncation. Throws TruncationError
/// if any nonzero amplitude pair would land past the cap.
PureState tensor_product(const PureState& left, const PureState& right, int max_total);

/// Relabels modes: output mode k carries the occupation of input mode
/// `order[k]`. `order` must be a permutation of 0..modes-1.
PureState permute_modes(const PureState& state, const std::vector<int>& order);

/// Traces out every mode not listed in `keep`. Kept modes appear in the
/// order given; `keep` must be nonempty without duplicates. Trace and
/// positivity are preserved.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

}  // namespace modebell
