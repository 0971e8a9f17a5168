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

#include "bellsample/generators.hpp"

#include "bellsample/random_clifford.hpp"
#include "bellsample/rng.hpp"

#include <numbers>
#include <numeric>

namespace bellsample {

namespace {

std::vector<uint32_t> shuffled_qubits(uint32_t n, Rng& rng) {
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (uint32_t i = n; i > 1; i--) {
        std::swap(order[i - 1], order[rng.uniform_below(i)]);
    }
    return order;
}

void brickwork_bonds(uint32_t n, uint32_t layer_parity, std::vector<std::pair<uint32_t, uint32_t>>& bonds) {
    // Ring bonds starting at `layer_parity`: (p, p+1), (p+2, p+3), ...
    bonds.clear();
    for (uint32_t a = layer_parity; a + 1 <= n - 1 + layer_parity && bonds.size() < n / 2; a += 2) {
        bonds.emplace_back(a % n, (a + 1) % n);
    }
}

}  // namespace

Circuit random_all_to_all_clifford(uint32_t n, uint32_t layers, uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("random_all_to_all_clifford: need n >= 2");
    }
    if (layers < 1) {
        throw std::invalid_argument("random_all_to_all_clifford: need layers >= 1");
    }
    Rng rng(seed);
    const auto& table = TwoQubitCliffordTable::instance();
    Circuit c(n);
    for (uint32_t layer = 0; layer < layers; layer++) {
        auto order = shuffled_qubits(n, rng);
        for (uint32_t p = 0; p + 1 < n; p += 2) {
            c.append(table.sample(rng, order[p], order[p + 1]));
        }
        c.mark_layer();
    }
    return c;
}

Circuit crystalline_floquet(uint32_t n, uint32_t depth, bool scrambling) {
    if (n % 2 != 0 || n < 2) {
        throw std::invalid_argument("crystalline_floquet: need even n >= 2");
    }
    if (depth < 1) {
        throw std::invalid_argument("crystalline_floquet: need depth >= 1");
    }
    Circuit c(n);
    std::vector<std::pair<uint32_t, uint32_t>> bonds;
    for (uint32_t layer = 0; layer < depth; layer++) {
        brickwork_bonds(n, layer % 2, bonds);
        for (auto [a, b] : bonds) {
            c.append(Gate::two(GateKind::ISWAP, a, b));
            if (scrambling) {
                c.append(Gate::single(GateKind::SqrtX, a));
                c.append(Gate::single(GateKind::SqrtX, b));
            }
        }
        c.mark_layer();
    }
    return c;
}

Circuit random_brickwork_clifford(uint32_t n, uint32_t layers, uint64_t seed) {
    if (n % 2 != 0 || n < 2) {
        throw std::invalid_argument("random_brickwork_clifford: need even n >= 2");
    }
    Rng rng(seed);
    const auto& table = TwoQubitCliffordTable::instance();
    Circuit c(n);
    std::vector<std::pair<uint32_t, uint32_t>> bonds;
    for (uint32_t layer = 0; layer < layers; layer++) {
        brickwork_bonds(n, layer % 2, bonds);
        for (auto [a, b] : bonds) {
            c.append(table.sample(rng, a, b));
        }
        c.mark_layer();
    }
    return c;
}

Circuit clifford_plus_t_random(uint32_t n, uint32_t t, uint32_t clifford_depth, uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("clifford_plus_t_random: need n >= 1");
    }
    Rng rng(seed);
    Circuit c(n);
    auto emit_block = [&] {
        if (n == 1) {
            for (uint32_t d = 0; d < clifford_depth; d++) {
                c.append(OneQubitCliffordTable::instance().sample(rng, 0));
            }
        } else {
            const auto& table = TwoQubitCliffordTable::instance();
            for (uint32_t d = 0; d < clifford_depth; d++) {
                auto order = shuffled_qubits(n, rng);
                for (uint32_t p = 0; p + 1 < n; p += 2) {
                    c.append(table.sample(rng, order[p], order[p + 1]));
                }
            }
        }
        c.mark_layer();
    };
    emit_block();
    for (uint32_t i = 0; i < t; i++) {
        c.append(Gate::single(GateKind::T, static_cast<uint32_t>(rng.uniform_below(n))));
        emit_block();
    }
    return c;
}

Circuit bqp_gadget(const Circuit& c) {
    if (c.n < 1) {
        throw std::invalid_argument("bqp_gadget: need n >= 1");
    }
    Circuit g(c.n + 1);
    g.append(Gate::single(GateKind::H, 0));
    for (const auto& gate : c.gates) {
        Gate shifted = gate;
        for (auto& q : shifted.qubits) {
            q += 1;
        }
        g.append(std::move(shifted));
    }
    // exp(-i pi/8 (Z0 Z1 + Z0)) as two commuting rotations; theta = pi/4 with
    // the exp(-i theta/2 P) convention.
    g.append(Gate::pauli_rot({0, 1}, "ZZ", std::numbers::pi / 4));
    g.append(Gate::pauli_rot({0}, "Z", std::numbers::pi / 4));
    return g;
}

}  // namespace bellsample
