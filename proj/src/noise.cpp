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

#include "bellsample/noise.hpp"

#include "bellsample/pauli.hpp"
#include "bellsample/tableau.hpp"

#include <json.hpp>

#include <cmath>

namespace bellsample {

PauliChannel PauliChannel::xyz(double px, double py, double pz) {
    PauliChannel c;
    c.p = {1.0 - px - py - pz, px, py, pz};
    c.validate();
    return c;
}

void PauliChannel::validate() const {
    double sum = 0;
    for (double v : p) {
        if (v < -1e-12 || v > 1 + 1e-12) {
            throw std::invalid_argument("pauli channel probability out of [0, 1]");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("pauli channel probabilities must sum to 1");
    }
}

PauliChannel depolarizing(double eps) {
    if (eps < 0 || eps > 4.0 / 3.0) {
        throw std::invalid_argument("depolarizing: eps must lie in [0, 4/3]");
    }
    PauliChannel c;
    c.p = {1.0 - 0.75 * eps, eps / 4, eps / 4, eps / 4};
    return c;
}

PauliChannel purity_to_fidelity_channel(const PauliChannel& p) {
    p.validate();
    PauliChannel q;
    q.p = {0, 0, 0, 0};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            q.p[i ^ j] += p.p[i] * p.p[j];
        }
    }
    return q;
}

NoiseSpec attach_noise(const Circuit& c, const PauliChannel& channel, const PauliChannel& measurement_channel) {
    channel.validate();
    measurement_channel.validate();
    NoiseSpec spec;
    spec.gate_channel = channel;
    spec.measurement_channel = measurement_channel;
    spec.m = c.two_qubit_gate_count();
    spec.E = 2 * spec.m;
    return spec;
}

RandomizedCompileResult randomized_compile(const Circuit& c, uint64_t seed) {
    Rng rng(seed);
    RandomizedCompileResult result;
    result.circuit = Circuit(c.n);
    static const GateKind pauli_kind[4] = {GateKind::H /*unused*/, GateKind::X, GateKind::Y, GateKind::Z};
    auto emit_pauli_layer = [&](const std::array<int, 2>& labels, uint32_t a, uint32_t b) {
        uint32_t qs[2] = {a, b};
        for (int j = 0; j < 2; j++) {
            if (labels[j] != 0) {
                result.circuit.append(Gate::single(pauli_kind[labels[j]], qs[j]));
            }
        }
    };
    for (size_t gi = 0; gi < c.gates.size(); gi++) {
        const Gate& g = c.gates[gi];
        if (g.arity() != 2) {
            result.circuit.append(g);
            continue;
        }
        auto action = clifford_action_of(g);
        if (!action) {
            result.unwrapped_gates.push_back(gi);
            result.circuit.append(g);
            continue;
        }
        // P with local labels (x, z) per qubit; P' = G P G^dagger comes from
        // the action table, sign dropped (a global phase on the circuit).
        uint32_t idx = static_cast<uint32_t>(rng.uniform_below(16));
        uint8_t xb = idx & 3, zb = (idx >> 2) & 3;
        auto label_of = [](int x, int z) {
            return x ? (z ? 2 : 1) : (z ? 3 : 0);
        };
        std::array<int, 2> before{label_of(xb & 1, zb & 1), label_of((xb >> 1) & 1, (zb >> 1) & 1)};
        const auto& img = action->table[idx];
        std::array<int, 2> after{label_of(img.x & 1, img.z & 1), label_of((img.x >> 1) & 1, (img.z >> 1) & 1)};
        emit_pauli_layer(before, g.qubits[0], g.qubits[1]);
        result.circuit.append(g);
        emit_pauli_layer(after, g.qubits[0], g.qubits[1]);
    }
    return result;
}

PauliChannel parse_channel(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    return PauliChannel::xyz(j.value("px", 0.0), j.value("py", 0.0), j.value("pz", 0.0));
}

std::string channel_to_json(const PauliChannel& c) {
    nlohmann::json j;
    j["px"] = c.p[1];
    j["py"] = c.p[2];
    j["pz"] = c.p[3];
    return j.dump();
}

}  // namespace bellsample
