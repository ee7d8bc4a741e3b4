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

#ifndef QHOARE_SPACE_HPP_
#define QHOARE_SPACE_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qhoare/matrix.hpp"

namespace qhoare {

/// The global state space as an ordered tensor product of named factors,
/// one per declared variable, in declaration order.
class SpaceShape {
  public:
    SpaceShape() = default;

    explicit SpaceShape(std::vector<std::pair<std::string, int>> factors)
        : factors_(std::move(factors)) {
        std::set<std::string> seen;
        for (const auto& [name, dim] : factors_) {
            if (dim < 2) throw Error("factor dimension must be >= 2: " + name);
            if (!seen.insert(name).second) throw Error("duplicate variable in shape: " + name);
        }
    }

    int num_factors() const { return static_cast<int>(factors_.size()); }
    const std::string& name(int i) const { return factors_[i].first; }
    int dim(int i) const { return factors_[i].second; }
    const std::vector<std::pair<std::string, int>>& factors() const { return factors_; }

    long total_dim() const {
        long d = 1;
        for (const auto& f : factors_) d *= f.second;
        return d;
    }

    std::optional<int> index_of(const std::string& var) const {
        for (int i = 0; i < num_factors(); ++i)
            if (factors_[i].first == var) return i;
        return std::nullopt;
    }

    int require(const std::string& var) const {
        auto i = index_of(var);
        if (!i) throw Error("unknown variable: " + var);
        return *i;
    }

    /// Row-major mixed-radix strides: the first declared factor varies slowest.
    std::vector<long> strides() const {
        std::vector<long> s(factors_.size());
        long acc = 1;
        for (int i = num_factors() - 1; i >= 0; --i) {
            s[i] = acc;
            acc *= dim(i);
        }
        return s;
    }

    std::vector<int> digits(long index) const {
        std::vector<int> out(factors_.size());
        for (int i = num_factors() - 1; i >= 0; --i) {
            out[i] = static_cast<int>(index % dim(i));
            index /= dim(i);
        }
        return out;
    }

    long compose(const std::vector<int>& digits) const {
        long index = 0;
        for (int i = 0; i < num_factors(); ++i) index = index * dim(i) + digits[i];
        return index;
    }

    bool operator==(const SpaceShape& o) const { return factors_ == o.factors_; }
    bool operator!=(const SpaceShape& o) const { return !(*this == o); }

  private:
    std::vector<std::pair<std::string, int>> factors_;
};

}  // namespace qhoare

#endif  // QHOARE_SPACE_HPP_
