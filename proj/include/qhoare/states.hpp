// Copyright 2026 The qhoare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QHOARE_STATES_HPP_
#define QHOARE_STATES_HPP_

#include <string>
#include <vector>

#include "qhoare/linalg.hpp"
#include "qhoare/space.hpp"

namespace qhoare {

/// Partial density operator on a named shape: PSD, trace <= 1. The zero
/// operator is allowed.
struct DensityOperator {
    CMat matrix;
    SpaceShape shape;

    void validate(double tol) const {
        if (matrix.rows() != shape.total_dim() || matrix.cols() != shape.total_dim())
            throw Error("state dimension does not match its shape");
        if (!all_finite(matrix)) throw Error("state has non-finite entries");
        if (!is_hermitian(matrix, tol)) throw Error("state is not Hermitian");
        if (min_eigenvalue(matrix) < -tol) throw Error("state is not positive semidefinite");
        if (trace_re(matrix) > 1.0 + tol) throw Error("state trace exceeds 1");
    }
};

/// Quantum predicate on a named shape: Hermitian with 0 <= P <= I.
struct QuantumPredicate {
    CMat matrix;
    SpaceShape shape;

    void validate(double tol) const {
        if (matrix.rows() != shape.total_dim() || matrix.cols() != shape.total_dim())
            throw Error("predicate dimension does not match its shape");
        if (!all_finite(matrix)) throw Error("predicate has non-finite entries");
        if (!is_predicate(matrix, tol))
            throw Error("predicate must be Hermitian with 0 <= P <= I");
    }
};

/// Rank-one density operators spanning the Hermitian matrices on C^d:
/// |i><i| for every i, then for i < j the pair states
/// (|i>+|j>)(<i|+<j|)/2 and (|i>+i|j>)(<i|-i<j|)/2. d^2 members in all;
/// "for all rho" properties reduce to this family by linearity.
inline std::vector<CMat> hermitian_spanning_family(int d) {
    std::vector<CMat> fam;
    fam.reserve(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i) fam.push_back(ketbra(d, i, i));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            CVec plus = basis_ket(d, i) + basis_ket(d, j);
            fam.push_back(0.5 * plus * plus.adjoint());
            CVec phase = basis_ket(d, i) + Complex(0, 1) * basis_ket(d, j);
            fam.push_back(0.5 * phase * phase.adjoint());
        }
    return fam;
}

/// max over the spanning family of tr(A sigma), computed from entries:
/// tr(A |i><i|) = A_ii, tr(A . plus_ij) = (A_ii+A_jj)/2 + Re A_ij,
/// tr(A . phase_ij) = (A_ii+A_jj)/2 - Im A_ij. A must be Hermitian.
inline double spanning_family_max(const CMat& a) {
    const int d = static_cast<int>(a.rows());
    double best = a(0, 0).real();
    for (int i = 0; i < d; ++i) best = std::max(best, a(i, i).real());
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double base = 0.5 * (a(i, i).real() + a(j, j).real());
            best = std::max(best, base + a(i, j).real());
            best = std::max(best, base - a(i, j).imag());
        }
    return best;
}

}  // namespace qhoare

#endif  // QHOARE_STATES_HPP_
