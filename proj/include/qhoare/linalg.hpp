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

#ifndef QHOARE_LINALG_HPP_
#define QHOARE_LINALG_HPP_

#include <set>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qhoare/config.hpp"
#include "qhoare/matrix.hpp"
#include "qhoare/space.hpp"

namespace qhoare {

/// Kronecker product. Rejects results larger than dim_cap.
inline CMat tensor(const CMat& a, const CMat& b, long dim_cap = EvalConfig{}.dim_cap) {
    const long rows = a.rows() * b.rows();
    const long cols = a.cols() * b.cols();
    if (rows > dim_cap || cols > dim_cap)
        throw Error("tensor result exceeds dimension cap (" + std::to_string(rows) + "x" +
                    std::to_string(cols) + " > " + std::to_string(dim_cap) + ")");
    CMat out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Cylinder extension: lifts an operator on the named register (in the given
/// register order) to the full shape, acting as the identity elsewhere.
/// Pure stride arithmetic; no permutation matrices are materialized.
inline CMat embed(const CMat& op, const std::vector<std::string>& reg, const SpaceShape& shape) {
    const int k = static_cast<int>(reg.size());
    std::vector<int> fac(k);
    long reg_dim = 1;
    std::vector<bool> in_reg(shape.num_factors(), false);
    for (int r = 0; r < k; ++r) {
        fac[r] = shape.require(reg[r]);
        if (in_reg[fac[r]]) throw Error("register variable repeated: " + reg[r]);
        in_reg[fac[r]] = true;
        reg_dim *= shape.dim(fac[r]);
    }
    if (op.rows() != op.cols() || op.rows() != reg_dim)
        throw Error("operator dimension " + std::to_string(op.rows()) +
                    " does not match register dimension " + std::to_string(reg_dim));

    const long d = shape.total_dim();
    const auto strides = shape.strides();
    // Local strides of the register factors, in register order.
    std::vector<long> loc_stride(k);
    long acc = 1;
    for (int r = k - 1; r >= 0; --r) {
        loc_stride[r] = acc;
        acc *= shape.dim(fac[r]);
    }

    CMat out = CMat::Zero(d, d);
    // Enumerate the register block and the environment block independently:
    // global index = sum_r digit_r * strides[fac[r]] + env offset. The local
    // operator index of a register assignment is its mixed-radix value in
    // register order, which is the enumeration index itself.
    std::vector<long> reg_offsets(reg_dim, 0);
    for (long x = 0; x < reg_dim; ++x) {
        long rem = x, off = 0;
        for (int r = 0; r < k; ++r) {
            off += (rem / loc_stride[r]) * strides[fac[r]];
            rem %= loc_stride[r];
        }
        reg_offsets[x] = off;
    }
    // Enumerate environment assignments.
    std::vector<int> env_fac;
    for (int i = 0; i < shape.num_factors(); ++i)
        if (!in_reg[i]) env_fac.push_back(i);
    long env_dim = 1;
    for (int i : env_fac) env_dim *= shape.dim(i);
    for (long e = 0; e < env_dim; ++e) {
        long rem = e, env_off = 0;
        for (int idx = static_cast<int>(env_fac.size()) - 1; idx >= 0; --idx) {
            const int f = env_fac[idx];
            env_off += (rem % shape.dim(f)) * strides[f];
            rem /= shape.dim(f);
        }
        for (long x = 0; x < reg_dim; ++x)
            for (long y = 0; y < reg_dim; ++y)
                out(reg_offsets[x] + env_off, reg_offsets[y] + env_off) = op(x, y);
    }
    return out;
}

/// Shape remaining after tracing out the given variables.
inline SpaceShape drop_vars(const SpaceShape& shape, const std::set<std::string>& traced) {
    for (const auto& v : traced) shape.require(v);
    std::vector<std::pair<std::string, int>> kept;
    for (const auto& f : shape.factors())
        if (!traced.count(f.first)) kept.push_back(f);
    return SpaceShape(kept);
}

/// Partial trace over the named variables; the result acts on the remaining
/// factors in declaration order. Preserves the trace.
inline CMat partial_trace(const CMat& a, const std::set<std::string>& traced,
                          const SpaceShape& shape) {
    const long d = shape.total_dim();
    if (a.rows() != d || a.cols() != d)
        throw Error("partial_trace: matrix dimension does not match shape");
    for (const auto& v : traced) shape.require(v);
    if (traced.empty()) return a;

    const auto strides = shape.strides();
    std::vector<int> keep_fac, trace_fac;
    for (int i = 0; i < shape.num_factors(); ++i)
        (traced.count(shape.name(i)) ? trace_fac : keep_fac).push_back(i);

    long keep_dim = 1, trace_dim = 1;
    for (int f : keep_fac) keep_dim *= shape.dim(f);
    for (int f : trace_fac) trace_dim *= shape.dim(f);

    auto offsets = [&](const std::vector<int>& facs, long count) {
        std::vector<long> out(count, 0);
        for (long x = 0; x < count; ++x) {
            long rem = x;
            for (int idx = static_cast<int>(facs.size()) - 1; idx >= 0; --idx) {
                const int f = facs[idx];
                out[x] += (rem % shape.dim(f)) * strides[f];
                rem /= shape.dim(f);
            }
        }
        return out;
    };
    const auto keep_off = offsets(keep_fac, keep_dim);
    const auto trace_off = offsets(trace_fac, trace_dim);

    CMat out = CMat::Zero(keep_dim, keep_dim);
    for (long i = 0; i < keep_dim; ++i)
        for (long j = 0; j < keep_dim; ++j) {
            Complex s = 0.0;
            for (long t = 0; t < trace_dim; ++t)
                s += a(keep_off[i] + trace_off[t], keep_off[j] + trace_off[t]);
            out(i, j) = s;
        }
    return out;
}

inline bool is_hermitian(const CMat& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return max_abs(a - a.adjoint()) <= tol;
}

/// Smallest eigenvalue of the Hermitian part of a.
inline double min_eigenvalue(const CMat& a) {
    if (!all_finite(a)) throw Error("eigensolver: non-finite input");
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");
    return es.eigenvalues().minCoeff();
}

/// Unit eigenvector for the smallest eigenvalue of the Hermitian part of a.
inline std::pair<double, CVec> min_eigenpair(const CMat& a) {
    if (!all_finite(a)) throw Error("eigensolver: non-finite input");
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a));
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

/// PSD within tol: Hermitian within tol and min eigenvalue >= -tol.
inline bool is_psd(const CMat& a, double tol) {
    if (a.rows() != a.cols()) return false;
    if (!is_hermitian(a, tol)) return false;
    return min_eigenvalue(a) >= -tol;
}

/// Loewner order: a <= b iff b - a is PSD within tol. Both inputs must be
/// Hermitian within tol and of equal dimension.
inline bool loewner_leq(const CMat& a, const CMat& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("loewner_leq: dimension mismatch");
    if (!is_hermitian(a, tol) || !is_hermitian(b, tol))
        throw Error("loewner_leq: inputs must be Hermitian");
    return is_psd(b - a, tol);
}

/// Checks that p is a quantum predicate: Hermitian with 0 <= p <= I.
inline bool is_predicate(const CMat& p, double tol) {
    if (p.rows() != p.cols()) return false;
    if (!is_hermitian(p, tol)) return false;
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(p), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");
    return es.eigenvalues().minCoeff() >= -tol && es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

/// Checks that rho is a partial density operator: PSD with trace <= 1.
/// The zero operator qualifies.
inline bool is_partial_density(const CMat& rho, double tol) {
    return is_psd(rho, tol) && trace_re(rho) <= 1.0 + tol;
}

}  // namespace qhoare

#endif  // QHOARE_LINALG_HPP_
