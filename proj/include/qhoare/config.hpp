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

#ifndef QHOARE_CONFIG_HPP_
#define QHOARE_CONFIG_HPP_

namespace qhoare {

/// Numeric knobs shared by the evaluator, the transformers and the checkers.
struct EvalConfig {
    /// Eigenvalue / hermiticity tolerance for PSD tests and the Loewner order.
    double tol_psd = 1e-9;
    /// Max-norm step tolerance for the wp/wlp loop fixpoint iteration.
    double tol_fix = 1e-10;
    /// Trace threshold below which a ranking iterate counts as vanished.
    double tol_rank = 1e-8;
    /// Live-mass threshold below which a loop evaluation counts as converged.
    double tol_loop = 1e-9;
    /// Iteration cap for loop evaluation, fixpoints and ranking.
    long max_iter = 10000;
    /// Reject operations whose total Hilbert-space dimension exceeds this.
    long dim_cap = 4096;
    /// Dimension cap for the superoperator oracle (d^2 x d^2 matrices).
    long oracle_dim_cap = 64;
};

// Number of consecutive quiet iterations after which a loop evaluation
// declares a plateau and classifies the live mass as probable divergence.
inline constexpr int kPlateauWindow = 50;

// Unitarity / measurement-completeness tolerance used by the typechecker.
inline constexpr double kDeclTol = 1e-9;

// Max-norm tolerance for the matrix-equality side conditions of proof rules.
// Distinct from tol_psd: the axioms are exact identities.
inline constexpr double kProofEqTol = 1e-9;

// Branches whose state trace falls below this are the "zero operator"
// transitions the operational semantics discards.
inline constexpr double kZeroStateTrace = 1e-15;

// Eigenvalue slack accepted when loading predicate files. Matches the
// validity tolerance of computed transformer outputs, so wp/wlp results
// written to disk always read back.
inline constexpr double kPredicateLoadTol = 1e-8;

}  // namespace qhoare

#endif  // QHOARE_CONFIG_HPP_
