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

#include <cstdint>

namespace bellsample {

/// `layers` rounds of floor(n/2) uniformly random two-qubit Clifford gates on
/// a uniformly random perfect matching per layer. Each sampled Clifford is one
/// Unitary2 gate; layer boundaries are recorded.
Circuit random_all_to_all_clifford(uint32_t n, uint32_t layers, uint64_t seed);

/// 1D brickwork of iSWAP gates on a ring (layer 1 on even bonds). With
/// scrambling, every two-qubit gate is followed by sqrt(X) on both its qubits.
/// Requires even n.
Circuit crystalline_floquet(uint32_t n, uint32_t depth, bool scrambling);

/// 1D ring brickwork of uniformly random two-qubit Clifford gates
/// (layer 1 on even bonds), layer boundaries recorded.
Circuit random_brickwork_clifford(uint32_t n, uint32_t layers, uint64_t seed);

/// t+1 random Clifford blocks (each `clifford_depth` layers) interleaved with
/// t single-qubit T gates at uniformly random positions.
Circuit clifford_plus_t_random(uint32_t n, uint32_t t, uint32_t clifford_depth, uint64_t seed);

/// The Ramsey-style ancilla construction: H on a fresh qubit 0, C shifted onto
/// qubits 1..n, then exp(-i pi/8 (Z0 Z1 + Z0)). The magnitude of <X_0> on the
/// output equals Pr[first qubit of C|0^n> measures 1].
Circuit bqp_gadget(const Circuit& c);

}  // namespace bellsample
