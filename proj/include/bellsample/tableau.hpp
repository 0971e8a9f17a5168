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
#include "bellsample/f2.hpp"
#include "bellsample/pauli.hpp"
#include "bellsample/rng.hpp"

#include <optional>

namespace bellsample {

/// Conjugation action of a Clifford gate, as lookup tables over the local
/// Pauli configuration of its qubits: entry index packs the (x, z) bits of the
/// gate's qubits; the entry gives the new local bits and a sign flip.
struct CliffordAction {
    uint32_t arity = 1;
    struct Entry {
        uint8_t x = 0;      // new local x bits (bit j = qubit j of the gate)
        uint8_t z = 0;      // new local z bits
        uint8_t sign = 0;   // phase flip (0 or 1)
    };
    std::array<Entry, 16> table{};

    /// Signed image of a local generator (X_j or Z_j of the gate).
    Entry image_x(uint32_t j) const {
        return table[uint32_t{1} << j];
    }
    Entry image_z(uint32_t j) const {
        return table[uint32_t{4} << j];
    }
};

/// Extracts the tableau action of a gate by conjugating Pauli matrices through
/// its unitary and matching against signed Paulis (tolerance 1e-10).
/// Returns nullopt for non-Clifford gates. Fixed Clifford kinds are cached.
std::optional<CliffordAction> clifford_action_of(const Gate& g);

/// Aaronson-Gottesman stabilizer tableau: n destabilizer rows followed by n
/// stabilizer rows, with sign bits. Rows are Hermitian Paulis.
class Tableau {
  public:
    explicit Tableau(uint32_t n);

    uint32_t num_qubits() const {
        return n_;
    }

    const PauliVec& stabilizer(uint32_t i) const {
        return rows_[n_ + i];
    }
    const PauliVec& destabilizer(uint32_t i) const {
        return rows_[i];
    }
    bool stabilizer_sign(uint32_t i) const {
        return signs_[n_ + i];
    }
    bool destabilizer_sign(uint32_t i) const {
        return signs_[i];
    }
    SignedPauli stabilizer_signed(uint32_t i) const {
        return SignedPauli(rows_[n_ + i], signs_[n_ + i] ? 2 : 0);
    }

    /// Builds a tableau from explicit generator images (destabilizer i = image
    /// of X_i, stabilizer i = image of Z_i). Validates the symplectic
    /// relations; throws std::logic_error on violation.
    static Tableau from_images(const std::vector<PauliVec>& destab, const std::vector<PauliVec>& stab,
                               const std::vector<uint8_t>& destab_signs, const std::vector<uint8_t>& stab_signs);

    void apply(const Gate& g);
    void apply(const CliffordAction& a, const std::vector<uint32_t>& qubits);
    void apply(const Circuit& c);

    /// Injects a Pauli operator (a layer of Pauli gates): only signs change.
    void apply_pauli(const PauliVec& p);

    /// Measures qubit q in the computational basis. `forced` pins the outcome
    /// of random results (used to fix measurement randomness deterministically).
    bool measure(uint32_t q, Rng& rng);
    bool measure_forced(uint32_t q, bool forced);

    /// <sigma> for a signed Pauli: +1, -1, or 0.
    int expectation(const SignedPauli& p) const;

    /// Unsigned stabilizer subspace as an F2Subspace over n qubits.
    F2Subspace stabilizer_subspace() const;

    /// Canonical form (for state deduplication): row-reduced stabilizer
    /// generators with signs, serialized to a comparable string.
    std::string canonical_key() const;

    bool operator==(const Tableau& o) const {
        return n_ == o.n_ && rows_ == o.rows_ && signs_ == o.signs_;
    }

  private:
    void rowsum(uint32_t h, uint32_t i);
    void collapse(uint32_t p, uint32_t q, bool result);
    bool deterministic_outcome(uint32_t q) const;

    uint32_t n_;
    std::vector<PauliVec> rows_;   // 2n rows over n qubits
    std::vector<uint8_t> signs_;   // 0 = +, 1 = -
};

/// The 2n-qubit Bell sampling circuit: C on both halves, transversal
/// CNOT(i -> n+i), then H on the first half. Measuring all qubits in the
/// computational basis realizes the transversal Bell measurement.
Circuit bell_measurement_circuit(const Circuit& c);

/// Tableau of C|0^n>. Throws UnsupportedGateError on non-Clifford gates.
Tableau simulate_tableau(const Circuit& c);

/// Renyi-2 entanglement entropy (in bits) of the reduced state on `subsystem`:
/// |A| minus the number of independent stabilizer elements supported inside A.
uint32_t exact_subsystem_renyi2(const Tableau& t, const std::vector<uint32_t>& subsystem);
uint32_t exact_subsystem_renyi2(const Circuit& c, const std::vector<uint32_t>& subsystem);

/// The support of the Bell distribution of a stabilizer state: the affine
/// coset S + k solving omega(g_i, r) = piY(g_i) for every stabilizer
/// generator. Dimension n, uniform weight 1/2^n on every element.
AffineCoset bell_support_coset(const Tableau& t);

/// The conjugation Pauli k with sigma_k |S> = conj(|S>), returned as the
/// Z-type (x part zero) representative, canonical modulo the Z-type part of
/// the stabilizer group. Computed from one deterministically resolved
/// noiseless Bell sample reduced modulo the stabilizer subspace.
PauliVec conjugation_pauli(const Circuit& c);

}  // namespace bellsample
