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

#include "modebell/fock.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace modebell {

namespace {

// Appends, in lexicographic order, every way of placing `remaining`
// particles into the last `modes_left` slots of `scratch`.
void enumerate_sector(int modes_left, int remaining, OccupationVector& scratch,
                      std::vector<OccupationVector>& out) {
    if (modes_left == 1) {
        scratch[scratch.size() - 1] = remaining;
        out.push_back(scratch);
        return;
    }
    const std::size_t slot = scratch.size() - static_cast<std::size_t>(modes_left);
    for (int n = 0; n <= remaining; ++n) {
        scratch[slot] = n;
        enumerate_sector(modes_left - 1, remaining - n, scratch, out);
    }
}

std::string occ_to_string(const OccupationVector& occ) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < occ.size(); ++i) os << (i ? "," : "") << occ[i];
    os << ")";
    return os.str();
}

}  // namespace

FockBasis::FockBasis(int modes, int max_total) : modes_(modes), max_total_(max_total) {
    if (modes < 1) throw std::invalid_argument("FockBasis: mode count must be >= 1");
    if (max_total < 0) throw std::invalid_argument("FockBasis: max_total must be >= 0");
    OccupationVector scratch(static_cast<std::size_t>(modes), 0);
    for (int n = 0; n <= max_total; ++n) {
        enumerate_sector(modes, n, scratch, states_);
    }
    totals_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        totals_.push_back(occupation_total(states_[i]));
        index_.emplace(states_[i], i);
    }
}

std::shared_ptr<const FockBasis> FockBasis::shared(int modes, int max_total) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const FockBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{modes, max_total}];
    if (!slot) slot = std::make_shared<FockBasis>(modes, max_total);
    return slot;
}

std::size_t FockBasis::index_of(const OccupationVector& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) {
        throw std::out_of_range("FockBasis: occupation " + occ_to_string(occ) +
                                " not in basis");
    }
    return it->second;
}

bool FockBasis::contains(const OccupationVector& occ) const {
    return index_.count(occ) != 0;
}

PureState::PureState(std::shared_ptr<const FockBasis> basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (!basis_) throw std::invalid_argument("PureState: null basis");
    if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dim()) {
        throw std::invalid_argument("PureState: amplitude length does not match basis dim");
    }
}

PureState PureState::vacuum(std::shared_ptr<const FockBasis> basis) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dim()));
    amps[0] = 1.0;
    return PureState(std::move(basis), std::move(amps));
}

PureState PureState::basis_state(std::shared_ptr<const FockBasis> basis,
                                 const OccupationVector& occ) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dim()));
    amps[static_cast<Eigen::Index>(basis->index_of(occ))] = 1.0;
    return PureState(std::move(basis), std::move(amps));
}

PureState PureState::normalized() const {
    const double n = norm();
    if (n < kAmplitudeFloor) {
        throw std::invalid_argument("PureState: cannot normalize a (near-)zero vector");
    }
    return PureState(basis_, amplitudes_ / n);
}

Complex PureState::inner(const PureState& other) const {
    if (!(basis() == other.basis())) {
        throw std::invalid_argument("PureState::inner: incompatible bases");
    }
    return amplitudes_.dot(other.amplitudes_);
}

DensityOperator::DensityOperator(std::shared_ptr<const FockBasis> basis,
                                 Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    if (!basis_) throw std::invalid_argument("DensityOperator: null basis");
    const auto d = static_cast<Eigen::Index>(basis_->dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw std::invalid_argument("DensityOperator: matrix shape does not match basis dim");
    }
}

DensityOperator DensityOperator::from_pure(const PureState& state) {
    return DensityOperator(state.basis_ptr(),
                           state.amplitudes() * state.amplitudes().adjoint());
}

DensityOperator DensityOperator::mixture(
    const std::vector<std::pair<double, PureState>>& branches) {
    if (branches.empty()) throw std::invalid_argument("mixture: no branches");
    const auto basis = branches.front().second.basis_ptr();
    const auto d = static_cast<Eigen::Index>(basis->dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    double weight_sum = 0.0;
    for (const auto& [w, psi] : branches) {
        if (w < 0) throw std::invalid_argument("mixture: negative weight");
        if (!(psi.basis() == *basis)) {
            throw std::invalid_argument("mixture: branches on different bases");
        }
        m.noalias() += w * (psi.amplitudes() * psi.amplitudes().adjoint());
        weight_sum += w;
    }
    if (std::abs(weight_sum - 1.0) > kAlgebraTol) {
        throw std::invalid_argument("mixture: weights must sum to 1");
    }
    return DensityOperator(basis, std::move(m));
}

void DensityOperator::validate() const {
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol) {
        throw std::invalid_argument("DensityOperator: not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > kAlgebraTol) {
        throw std::invalid_argument("DensityOperator: trace != 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_,
                                                           Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityOperator: not positive semidefinite");
    }
}

PureState apply_creation(const PureState& state, int mode) {
    const FockBasis& basis = state.basis();
    if (mode < 0 || mode >= basis.modes()) {
        throw std::invalid_argument("apply_creation: mode out of range");
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes().size());
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const Complex amp = state.amplitudes()[static_cast<Eigen::Index>(i)];
        if (std::abs(amp) <= kAmplitudeFloor) continue;
        if (basis.total(i) == basis.max_total()) {
            throw TruncationError(
                "apply_creation: population at the truncation boundary; "
                "raise max_total");
        }
        OccupationVector occ = basis.occupation(i);
        const int n = occ[static_cast<std::size_t>(mode)];
        occ[static_cast<std::size_t>(mode)] = n + 1;
        out[static_cast<Eigen::Index>(basis.index_of(occ))] +=
            std::sqrt(static_cast<double>(n + 1)) * amp;
    }
    return PureState(state.basis_ptr(), std::move(out));
}

PureState apply_annihilation(const PureState& state, int mode) {
    const FockBasis& basis = state.basis();
    if (mode < 0 || mode >= basis.modes()) {
        throw std::invalid_argument("apply_annihilation: mode out of range");
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes().size());
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const Complex amp = state.amplitudes()[static_cast<Eigen::Index>(i)];
        if (std::abs(amp) <= kAmplitudeFloor) continue;
        OccupationVector occ = basis.occupation(i);
        const int n = occ[static_cast<std::size_t>(mode)];
        if (n == 0) continue;
        occ[static_cast<std::size_t>(mode)] = n - 1;
        out[static_cast<Eigen::Index>(basis.index_of(occ))] +=
            std::sqrt(static_cast<double>(n)) * amp;
    }
    return PureState(state.basis_ptr(), std::move(out));
}

PureState tensor_product(const PureState& left, const PureState& right) {
    return tensor_product(left, right,
                          left.basis().max_total() + right.basis().max_total());
}

PureState tensor_product(const PureState& left, const PureState& right, int max_total) {
    const FockBasis& lb = left.basis();
    const FockBasis& rb = right.basis();
    auto combined = FockBasis::shared(lb.modes() + rb.modes(), max_total);
    Eigen::VectorXcd out =
        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(combined->dim()));
    for (std::size_t i = 0; i < lb.dim(); ++i) {
        const Complex li = left.amplitudes()[static_cast<Eigen::Index>(i)];
        if (std::abs(li) <= kAmplitudeFloor) continue;
        for (std::size_t j = 0; j < rb.dim(); ++j) {
            const Complex rj = right.amplitudes()[static_cast<Eigen::Index>(j)];
            if (std::abs(rj) <= kAmplitudeFloor) continue;
            if (lb.total(i) + rb.total(j) > max_total) {
                throw TruncationError(
                    "tensor_product: component pair exceeds the combined truncation");
            }
            OccupationVector occ = lb.occupation(i);
            const OccupationVector& rocc = rb.occupation(j);
            occ.insert(occ.end(), rocc.begin(), rocc.end());
            out[static_cast<Eigen::Index>(combined->index_of(occ))] = li * rj;
        }
    }
    return PureState(std::move(combined), std::move(out));
}

DensityOperator tensor_product(const DensityOperator& left, const DensityOperator& right) {
    const FockBasis& lb = left.basis();
    const FockBasis& rb = right.basis();
    const int max_total = lb.max_total() + rb.max_total();
    auto combined = FockBasis::shared(lb.modes() + rb.modes(), max_total);
    const auto d = static_cast<Eigen::Index>(combined->dim());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);

    // Row/column index maps from (left index, right index) to the combined basis.
    for (std::size_t i1 = 0; i1 < lb.dim(); ++i1) {
        for (std::size_t j1 = 0; j1 < rb.dim(); ++j1) {
            OccupationVector occ_row = lb.occupation(i1);
            const OccupationVector& r1 = rb.occupation(j1);
            occ_row.insert(occ_row.end(), r1.begin(), r1.end());
            const auto row = static_cast<Eigen::Index>(combined->index_of(occ_row));
            for (std::size_t i2 = 0; i2 < lb.dim(); ++i2) {
                for (std::size_t j2 = 0; j2 < rb.dim(); ++j2) {
                    const Complex v =
                        left.matrix()(static_cast<Eigen::Index>(i1),
                                      static_cast<Eigen::Index>(i2)) *
                        right.matrix()(static_cast<Eigen::Index>(j1),
                                       static_cast<Eigen::Index>(j2));
                    if (std::abs(v) == 0.0) continue;
                    OccupationVector occ_col = lb.occupation(i2);
                    const OccupationVector& r2 = rb.occupation(j2);
                    occ_col.insert(occ_col.end(), r2.begin(), r2.end());
                    out(row, static_cast<Eigen::Index>(combined->index_of(occ_col))) = v;
                }
            }
        }
    }
    return DensityOperator(std::move(combined), std::move(out));
}

PureState permute_modes(const PureState& state, const std::vector<int>& order) {
    const FockBasis& basis = state.basis();
    const auto m = static_cast<std::size_t>(basis.modes());
    if (order.size() != m) {
        throw std::invalid_argument("permute_modes: order length != mode count");
    }
    std::vector<bool> seen(m, false);
    for (int o : order) {
        if (o < 0 || static_cast<std::size_t>(o) >= m || seen[static_cast<std::size_t>(o)]) {
            throw std::invalid_argument("permute_modes: order is not a permutation");
        }
        seen[static_cast<std::size_t>(o)] = true;
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes().size());
    OccupationVector target(m, 0);
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const Complex amp = state.amplitudes()[static_cast<Eigen::Index>(i)];
        if (std::abs(amp) == 0.0) continue;
        const OccupationVector& occ = basis.occupation(i);
        for (std::size_t k = 0; k < m; ++k) {
            target[k] = occ[static_cast<std::size_t>(order[k])];
        }
        out[static_cast<Eigen::Index>(basis.index_of(target))] = amp;
    }
    return PureState(state.basis_ptr(), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
    const FockBasis& basis = rho.basis();
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep is empty");
    std::vector<bool> seen(static_cast<std::size_t>(basis.modes()), false);
    for (int k : keep) {
        if (k < 0 || k >= basis.modes()) {
            throw std::invalid_argument("partial_trace: kept mode out of range");
        }
        if (seen[static_cast<std::size_t>(k)]) {
            throw std::invalid_argument("partial_trace: duplicate kept mode");
        }
        seen[static_cast<std::size_t>(k)] = true;
    }

    auto reduced = FockBasis::shared(static_cast<int>(keep.size()), basis.max_total());
    const auto d = static_cast<Eigen::Index>(reduced->dim());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);

    auto split = [&](std::size_t index, OccupationVector& kept, OccupationVector& traced) {
        const OccupationVector& occ = basis.occupation(index);
        kept.clear();
        traced.clear();
        for (int k : keep) kept.push_back(occ[static_cast<std::size_t>(k)]);
        for (int m = 0; m < basis.modes(); ++m) {
            if (!seen[static_cast<std::size_t>(m)]) {
                traced.push_back(occ[static_cast<std::size_t>(m)]);
            }
        }
    };

    OccupationVector kept_i, traced_i, kept_j, traced_j;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        split(i, kept_i, traced_i);
        const auto row = static_cast<Eigen::Index>(reduced->index_of(kept_i));
        for (std::size_t j = 0; j < basis.dim(); ++j) {
            split(j, kept_j, traced_j);
            if (traced_i != traced_j) continue;
            out(row, static_cast<Eigen::Index>(reduced->index_of(kept_j))) +=
                rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return DensityOperator(std::move(reduced), std::move(out));
}

}  // namespace modebell
