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

#ifndef QHOARE_GATES_HPP_
#define QHOARE_GATES_HPP_

#include <cmath>
#include <optional>
#include <string>

#include "qhoare/matrix.hpp"

namespace qhoare::gates {

inline CMat hadamard() {
    CMat h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

inline CMat pauli_x() {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline CMat pauli_y() {
    CMat m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline CMat pauli_z() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline CMat cnot() {
    CMat m = CMat::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

/// Cyclic k-translation |n> -> |n+k mod d|. The cyclic wrap keeps the
/// operator unitary on the truncated integer space; it matches the
/// untruncated translation whenever no amplitude crosses the wrap boundary.
inline CMat shift(int k, int d) {
    CMat m = CMat::Zero(d, d);
    for (int n = 0; n < d; ++n) m(((n + k) % d + d) % d, n) = 1;
    return m;
}

/// Builtin gate lookup by name; SHIFT is handled separately (it carries a
/// parameter and depends on the target dimension).
inline std::optional<CMat> builtin(const std::string& name) {
    if (name == "H") return hadamard();
    if (name == "X") return pauli_x();
    if (name == "Y") return pauli_y();
    if (name == "Z") return pauli_z();
    if (name == "I") return CMat::Identity(2, 2);
    if (name == "CNOT") return cnot();
    return std::nullopt;
}

}  // namespace qhoare::gates

#endif  // QHOARE_GATES_HPP_
