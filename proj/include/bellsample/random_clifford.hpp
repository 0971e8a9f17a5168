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

#include "bellsample/circuit.hpp"
#include "bellsample/rng.hpp"
#include "bellsample/tableau.hpp"

#include <vector>

namespace bellsample {

/// The full two-qubit Clifford group (11520 elements modulo phase), enumerated
/// once by breadth-first closure over {H, S, CNOT} and keyed by canonical
/// tableau form. Elements carry a gate word and a 4x4 matrix, so a sampled
/// element can be emitted as a single Unitary2 gate.
class TwoQubitCliffordTable {
  public:
    static const TwoQubitCliffordTable& instance();

    size_t size() const {
        return elements_.size();
    }

    /// The element's unitary as a row-major 4x4 matrix (qubit order: first
    /// listed qubit of the emitted gate is the high bit).
    const std::vector<cplx>& matrix(size_t index) const {
        return elements_[index].matrix;
    }

    /// Emits element `index` as one two-qubit gate on (a, b).
    Gate gate(size_t index, uint32_t a, uint32_t b) const {
        return Gate::unitary2(a, b, elements_[index].matrix);
    }

    Gate sample(Rng& rng, uint32_t a, uint32_t b) const {
        return gate(rng.uniform_below(size()), a, b);
    }

    /// The element's word over {H0, H1, S0, S1, CNOT01, CNOT10}.
    const std::vector<uint8_t>& word(size_t index) const {
        return elements_[index].word;
    }

  private:
    TwoQubitCliffordTable();
    struct Element {
        std::vector<uint8_t> word;
        std::vector<cplx> matrix;
    };
    std::vector<Element> elements_;
};

/// The 24-element single-qubit Clifford group, same scheme.
class OneQubitCliffordTable {
  public:
    static const OneQubitCliffordTable& instance();
    size_t size() const {
        return matrices_.size();
    }
    Gate gate(size_t index, uint32_t q) const {
        return Gate::unitary1(q, matrices_[index]);
    }
    Gate sample(Rng& rng, uint32_t q) const {
        return gate(rng.uniform_below(size()), q);
    }

  private:
    OneQubitCliffordTable();
    std::vector<std::vector<cplx>> matrices_;
};

/// Uniformly random element of the n-qubit Clifford group, as a tableau acting
/// on |0^n> (uniform symplectic part built from random hyperbolic pairs,
/// uniform stabilizer signs). Exactly uniform, which matters for the moment
/// tests that treat the Clifford group as a 2-design.
Tableau random_clifford_tableau(uint32_t n, Rng& rng);

}  // namespace bellsample
