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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellsample {

using cplx = std::complex<double>;

class UnsupportedGateError : public std::runtime_error {
  public:
    explicit UnsupportedGateError(const std::string& what) : std::runtime_error(what) {}
};

class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, size_t line, size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line(line),
          column(column) {}
    size_t line;
    size_t column;
};

enum class GateKind : uint8_t {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    SqrtX,
    T,
    Tdg,
    CNOT,
    CZ,
    ISWAP,
    Unitary1,   // arbitrary 2x2 unitary
    Unitary2,   // arbitrary 4x4 unitary
    PauliRot,   // exp(-i theta/2 P) for a Pauli axis string
};

struct Gate {
    GateKind kind;
    std::vector<uint32_t> qubits;
    std::vector<cplx> matrix;  // row-major 2x2 or 4x4, Unitary1/Unitary2 only
    std::string axis;          // PauliRot only, e.g. "ZZ"
    double theta = 0;          // PauliRot only, convention exp(-i theta/2 P)

    static Gate single(GateKind k, uint32_t q) {
        return Gate{k, {q}, {}, "", 0};
    }
    static Gate two(GateKind k, uint32_t a, uint32_t b) {
        return Gate{k, {a, b}, {}, "", 0};
    }
    static Gate unitary1(uint32_t q, std::vector<cplx> m);
    static Gate unitary2(uint32_t a, uint32_t b, std::vector<cplx> m);
    static Gate pauli_rot(std::vector<uint32_t> qs, std::string axis, double theta);

    uint32_t arity() const {
        return static_cast<uint32_t>(qubits.size());
    }

    /// Row-major matrix on arity() qubits; first listed qubit is the high bit.
    std::vector<cplx> to_matrix() const;
};

const char* gate_name(GateKind k);

/// Circuits are immutable values once built; all engines share them read-only.
struct Circuit {
    uint32_t n = 0;
    std::vector<Gate> gates;
    std::vector<size_t> layers;  // optional layer boundaries: gate-index ends, monotone

    Circuit() = default;
    explicit Circuit(uint32_t n_) : n(n_) {}

    void append(Gate g);
    void mark_layer() {
        layers.push_back(gates.size());
    }
    size_t depth() const {
        return layers.empty() ? (gates.empty() ? 0 : 1) : layers.size();
    }
    size_t two_qubit_gate_count() const;

    /// True when every gate has a Clifford tableau action (kind-based for the
    /// named gates; matrix gates and rotations are checked by conjugation).
    bool is_clifford() const;

    Circuit inverse() const;

    /// Validates qubit indices, unitarity of matrix gates (1e-10) and layer
    /// monotonicity. Throws std::invalid_argument on violation.
    void validate() const;
};

std::string serialize(const Circuit& c);
Circuit parse_circuit(const std::string& text);

/// Gate layout pattern for the depth test.
struct Architecture {
    enum class Kind { Chain1DOpen, Chain1DClosed, AllToAll, Grid2D };
    Kind kind = Kind::Chain1DClosed;
    uint32_t rows = 0, cols = 0;  // Grid2D only

    static Architecture chain(bool closed) {
        return Architecture{closed ? Kind::Chain1DClosed : Kind::Chain1DOpen, 0, 0};
    }
    static Architecture all_to_all() {
        return Architecture{Kind::AllToAll, 0, 0};
    }
    static Architecture grid(uint32_t r, uint32_t c) {
        return Architecture{Kind::Grid2D, r, c};
    }

    /// Number of interaction-graph edges leaving the subsystem. At least 1 for
    /// proper nonempty subsystems. Chain architectures require contiguity.
    uint32_t boundary_edges(uint32_t n, const std::vector<uint32_t>& subsystem) const;
};

}  // namespace bellsample
