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

#include <array>
#include <string>
#include <vector>

namespace bellsample {

/// Single-qubit Pauli channel rho -> sum_i p_i sigma_i rho sigma_i with
/// p = (p_I, p_X, p_Y, p_Z).
struct PauliChannel {
    std::array<double, 4> p{{1, 0, 0, 0}};

    static PauliChannel identity() {
        return PauliChannel{};
    }
    static PauliChannel xyz(double px, double py, double pz);

    bool is_identity() const {
        return p[1] == 0 && p[2] == 0 && p[3] == 0;
    }
    double error_probability() const {
        return p[1] + p[2] + p[3];
    }
    void validate() const;

    /// Draws 0 (I), 1 (X), 2 (Y) or 3 (Z).
    int sample(Rng& rng) const {
        double u = rng.uniform();
        if (u < p[0]) {
            return 0;
        }
        if (u < p[0] + p[1]) {
            return 1;
        }
        return u < p[0] + p[1] + p[2] ? 2 : 3;
    }
};

/// p_0 = 1 - 3 eps/4, p_1 = p_2 = p_3 = eps/4. Valid for eps in [0, 4/3].
PauliChannel depolarizing(double eps);

/// The noise-rate translation between two-copy purity and one-copy fidelity:
/// q_k = sum over pairs (i, j) with sigma_i sigma_j ~ sigma_k of p_i p_j,
/// i.e. the Pauli-label XOR square of the channel. Average purity at noise p
/// equals average fidelity at noise q for 2-design-interleaved circuits.
PauliChannel purity_to_fidelity_channel(const PauliChannel& p);

/// Circuit-level noise placement: one copy of `gate_channel` on each qubit
/// touched by every two-qubit gate (E = 2m error locations), plus
/// `measurement_channel` per qubit ahead of readout.
struct NoiseSpec {
    PauliChannel gate_channel;
    PauliChannel measurement_channel;
    size_t m = 0;  // two-qubit gates in the attached circuit
    size_t E = 0;  // error locations (2m with the default placement)

    static NoiseSpec noiseless() {
        return NoiseSpec{};
    }
    bool has_gate_noise() const {
        return !gate_channel.is_identity();
    }
    bool has_measurement_noise() const {
        return !measurement_channel.is_identity();
    }
};

NoiseSpec attach_noise(const Circuit& c, const PauliChannel& channel,
                       const PauliChannel& measurement_channel = PauliChannel::identity());

/// Pauli-twirls every two-qubit Clifford gate: G becomes P' G P with P a
/// uniformly random two-qubit Pauli and P' = G P G(dagger), leaving the
/// implemented unitary unchanged. Non-Clifford two-qubit gates are left
/// unwrapped and their indices reported.
struct RandomizedCompileResult {
    Circuit circuit;
    std::vector<size_t> unwrapped_gates;
};
RandomizedCompileResult randomized_compile(const Circuit& c, uint64_t seed);

/// Noise config block: {"channel": {"px": .., "py": .., "pz": ..},
/// "measurement": {...}}; identity probability implied.
PauliChannel parse_channel(const std::string& json_text);
std::string channel_to_json(const PauliChannel& c);

}  // namespace bellsample
