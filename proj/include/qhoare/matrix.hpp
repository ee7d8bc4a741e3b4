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

#ifndef QHOARE_MATRIX_HPP_
#define QHOARE_MATRIX_HPP_

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qhoare {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Error from the matrix kernel and the evaluators (dimension mismatches,
/// non-finite input, caps exceeded).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double max_abs(const CMat& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool all_finite(const CMat& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const Complex& v = a(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
    }
    return true;
}

inline double trace_re(const CMat& a) { return a.trace().real(); }

/// (A + A^dagger)/2, used to keep iterates exactly Hermitian.
inline CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint()); }

/// |i><j| on a d-dimensional space.
inline CMat ketbra(int d, int i, int j) {
    CMat m = CMat::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

inline CVec basis_ket(int d, int i) {
    CVec v = CVec::Zero(d);
    v(i) = 1.0;
    return v;
}

}  // namespace qhoare

#endif  // QHOARE_MATRIX_HPP_
