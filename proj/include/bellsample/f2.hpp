// Copyright 2026 The Bellsample Authors
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

#pragma once

#include "bellsample/pauli.hpp"

#include <optional>
#include <vector>

namespace bellsample {

/// A subspace of F_2^{2n} kept in reduced row echelon form over the
/// concatenated (z|x) bit layout with leftmost-pivot ordering. The canonical
/// basis makes subspace equality a direct comparison.
class F2Subspace {
  public:
    F2Subspace() = default;
    explicit F2Subspace(uint32_t n) : n_(n) {}

    uint32_t num_qubits() const {
        return n_;
    }
    uint32_t dim() const {
        return static_cast<uint32_t>(rows_.size());
    }
    const std::vector<PauliVec>& basis() const {
        return rows_;
    }

    /// Inserts a vector, keeping the basis reduced. Returns true if the
    /// dimension grew.
    bool insert(const PauliVec& v);

    /// Canonical coset representative: v reduced modulo the subspace.
    PauliVec reduce(const PauliVec& v) const;

    bool contains(const PauliVec& v) const {
        return reduce(v).is_identity();
    }

    bool operator==(const F2Subspace& o) const;

    /// The radical: {c in H : omega(c, h) = 0 for all h in H}, computed from
    /// the GF(2) kernel of the Gram matrix omega(b_i, b_j) over the basis.
    F2Subspace radical() const;

  private:
    uint32_t n_ = 0;
    std::vector<PauliVec> rows_;       // reduced echelon basis
    std::vector<uint32_t> pivots_;     // pivot bit positions, ascending
};

F2Subspace span(uint32_t n, const std::vector<PauliVec>& vectors);

bool membership(const PauliVec& v, const F2Subspace& s);

struct AffineCoset {
    F2Subspace subspace;
    PauliVec offset;  // reduced modulo the subspace

    bool contains(const PauliVec& v) const {
        return subspace.contains(v ^ offset);
    }
    bool operator==(const AffineCoset& o) const {
        return subspace == o.subspace && offset == o.offset;
    }
};

/// Learns the support coset from samples: subspace = span of pairwise
/// differences, offset = any sample reduced modulo the subspace.
/// Throws std::invalid_argument on empty input.
AffineCoset coset_extract(const std::vector<PauliVec>& samples);

/// Solves <rows[i], v> = rhs[i] (plain GF(2) dot over the (z|x) layout).
/// Returns a particular solution and a basis of the homogeneous solution
/// space, or nullopt if inconsistent.
struct F2Solution {
    PauliVec particular;
    std::vector<PauliVec> kernel_basis;
};
std::optional<F2Solution> f2_solve(uint32_t n, const std::vector<PauliVec>& rows, const std::vector<uint8_t>& rhs);

}  // namespace bellsample
