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

#ifndef QHOARE_SUPEROP_HPP_
#define QHOARE_SUPEROP_HPP_

#include <vector>

#include "qhoare/semantics.hpp"

namespace qhoare {

/// Column-stacking vectorization: vec(X)(j*d+i) = X(i,j).
inline CVec vec(const CMat& x) {
    return Eigen::Map<const CVec>(x.data(), x.size());
}

inline CMat unvec(const CVec& v, long d) {
    return Eigen::Map<const CMat>(v.data(), d, d);
}

/// The program's superoperator as a d^2 x d^2 matrix S with
/// S vec(rho) = vec([|S|](rho)). Columns are recovered from evaluations of
/// the denotational semantics on the Hermitian spanning family (each member
/// a legal density operator); matrix-unit columns follow by linearity.
/// Independent of the wp/wlp recursion, which makes it the duality oracle.
inline CMat build_superoperator(const TypedUnit& u, const StmtPtr& s, const EvalConfig& cfg) {
    const long d = u.shape.total_dim();
    if (d > cfg.oracle_dim_cap)
        throw Error("superoperator oracle: dimension " + std::to_string(d) + " exceeds cap " +
                    std::to_string(cfg.oracle_dim_cap));
    std::vector<CMat> diag(d);  // Phi(|i><i|)
    for (long i = 0; i < d; ++i)
        diag[i] = denote(u, s, ketbra(static_cast<int>(d), static_cast<int>(i),
                                      static_cast<int>(i)),
                         cfg)
                      .state;

    CMat superop(d * d, d * d);
    auto set_col = [&](long i, long j, const CMat& phi) {
        superop.col(j * d + i) = vec(phi);
    };
    for (long i = 0; i < d; ++i) set_col(i, i, diag[i]);
    for (long i = 0; i < d; ++i) {
        for (long j = i + 1; j < d; ++j) {
            CVec ei = basis_ket(static_cast<int>(d), static_cast<int>(i));
            CVec ej = basis_ket(static_cast<int>(d), static_cast<int>(j));
            CVec plus = ei + ej;
            CVec phase = ei + Complex(0, 1) * ej;
            const CMat phi_plus = denote(u, s, CMat(0.5 * plus * plus.adjoint()), cfg).state;
            const CMat phi_phase = denote(u, s, CMat(0.5 * phase * phase.adjoint()), cfg).state;
            const CMat half_diag = 0.5 * (diag[i] + diag[j]);
            // E_ij = (plus - (E_ii+E_jj)/2) + i (phase - (E_ii+E_jj)/2)
            const CMat phi_ij =
                (phi_plus - half_diag) + Complex(0, 1) * (phi_phase - half_diag);
            set_col(i, j, phi_ij);
            set_col(j, i, CMat(phi_ij.adjoint()));  // Phi(X^dag) = Phi(X)^dag for Kraus maps
        }
    }
    return superop;
}

/// Duality oracle for wp: the unique Hermitian operator with
/// tr(wp(P) rho) = tr(P Phi(rho)) for all rho is unvec(S^dag vec(P)).
inline CMat wp_oracle(const TypedUnit& u, const StmtPtr& s, const CMat& post,
                      const EvalConfig& cfg) {
    const long d = u.shape.total_dim();
    const CMat superop = build_superoperator(u, s, cfg);
    return hermitize(unvec(superop.adjoint() * vec(post), d));
}

}  // namespace qhoare

#endif  // QHOARE_SUPEROP_HPP_
