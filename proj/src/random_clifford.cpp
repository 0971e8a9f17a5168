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

#include "bellsample/random_clifford.hpp"

#include <deque>
#include <unordered_set>

namespace bellsample {

namespace {

std::vector<cplx> matmul(const std::vector<cplx>& a, const std::vector<cplx>& b, size_t dim) {
    std::vector<cplx> r(dim * dim, 0);
    for (size_t i = 0; i < dim; i++) {
        for (size_t k = 0; k < dim; k++) {
            if (a[i * dim + k] == cplx{}) {
                continue;
            }
            for (size_t j = 0; j < dim; j++) {
                r[i * dim + j] += a[i * dim + k] * b[k * dim + j];
            }
        }
    }
    return r;
}

// Canonical key: images of X_i (destabilizers) and Z_i (stabilizers) with
// signs. Distinguishes every group element modulo global phase.
uint64_t tableau_key(const Tableau& t) {
    uint64_t key = 0;
    int shift = 0;
    uint32_t n = t.num_qubits();
    for (uint32_t i = 0; i < n; i++) {
        uint64_t d = (t.destabilizer(i).x[0] & 3) | ((t.destabilizer(i).z[0] & 3) << 2) |
                     (uint64_t(t.destabilizer_sign(i)) << 4);
        uint64_t s = (t.stabilizer(i).x[0] & 3) | ((t.stabilizer(i).z[0] & 3) << 2) |
                     (uint64_t(t.stabilizer_sign(i)) << 4);
        key |= d << shift;
        shift += 5;
        key |= s << shift;
        shift += 5;
    }
    return key;
}

std::vector<cplx> embed_single(const std::vector<cplx>& m, uint32_t q) {
    // 2x2 -> 4x4 with qubit 0 as the high bit.
    std::vector<cplx> big(16, 0);
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (int k = 0; k < 2; k++) {
                if (q == 0) {
                    big[(i * 2 + k) * 4 + (j * 2 + k)] = m[i * 2 + j];
                } else {
                    big[(k * 2 + i) * 4 + (k * 2 + j)] = m[i * 2 + j];
                }
            }
        }
    }
    return big;
}

}  // namespace

TwoQubitCliffordTable::TwoQubitCliffordTable() {
    std::vector<Gate> gen_gates = {
        Gate::single(GateKind::H, 0), Gate::single(GateKind::H, 1),  Gate::single(GateKind::S, 0),
        Gate::single(GateKind::S, 1), Gate::two(GateKind::CNOT, 0, 1), Gate::two(GateKind::CNOT, 1, 0),
    };
    std::vector<std::vector<cplx>> gen_m;
    for (const auto& g : gen_gates) {
        auto m = g.to_matrix();
        gen_m.push_back(g.arity() == 1 ? embed_single(m, g.qubits[0]) : m);
    }

    std::vector<cplx> identity4(16, 0);
    for (int i = 0; i < 4; i++) {
        identity4[i * 4 + i] = 1;
    }
    struct Node {
        Tableau t;
        size_t element;
    };
    std::unordered_set<uint64_t> seen;
    std::deque<Node> frontier;
    Tableau id(2);
    elements_.push_back(Element{{}, identity4});
    frontier.push_back(Node{id, 0});
    seen.insert(tableau_key(id));
    while (!frontier.empty()) {
        Node node = std::move(frontier.front());
        frontier.pop_front();
        for (uint8_t gi = 0; gi < gen_gates.size(); gi++) {
            Tableau t = node.t;
            t.apply(gen_gates[gi]);
            if (seen.insert(tableau_key(t)).second) {
                Element e;
                e.word = elements_[node.element].word;
                e.word.push_back(gi);
                e.matrix = matmul(gen_m[gi], elements_[node.element].matrix, 4);
                elements_.push_back(std::move(e));
                frontier.push_back(Node{std::move(t), elements_.size() - 1});
            }
        }
    }
    if (elements_.size() != 11520) {
        throw std::logic_error("two-qubit Clifford enumeration produced " + std::to_string(elements_.size()) +
                               " elements, expected 11520");
    }
}

const TwoQubitCliffordTable& TwoQubitCliffordTable::instance() {
    static const TwoQubitCliffordTable table;
    return table;
}

OneQubitCliffordTable::OneQubitCliffordTable() {
    std::vector<Gate> gens = {Gate::single(GateKind::H, 0), Gate::single(GateKind::S, 0)};
    std::vector<std::vector<cplx>> gen_m = {gens[0].to_matrix(), gens[1].to_matrix()};
    struct Node {
        Tableau t;
        size_t element;
    };
    std::unordered_set<uint64_t> seen;
    std::deque<Node> frontier;
    Tableau id(1);
    matrices_.push_back({1, 0, 0, 1});
    frontier.push_back(Node{id, 0});
    seen.insert(tableau_key(id));
    while (!frontier.empty()) {
        Node node = std::move(frontier.front());
        frontier.pop_front();
        for (size_t gi = 0; gi < gens.size(); gi++) {
            Tableau t = node.t;
            t.apply(gens[gi]);
            if (seen.insert(tableau_key(t)).second) {
                matrices_.push_back(matmul(gen_m[gi], matrices_[node.element], 2));
                frontier.push_back(Node{std::move(t), matrices_.size() - 1});
            }
        }
    }
    if (matrices_.size() != 24) {
        throw std::logic_error("one-qubit Clifford enumeration failed");
    }
}

const OneQubitCliffordTable& OneQubitCliffordTable::instance() {
    static const OneQubitCliffordTable table;
    return table;
}

// ---------------------------------------------------------------------------
// Uniform n-qubit Clifford sampling via random hyperbolic pairs.

namespace {

PauliVec random_combo(const std::vector<PauliVec>& basis, Rng& rng, uint32_t n) {
    PauliVec v(n);
    for (const auto& b : basis) {
        if (rng.bit()) {
            v.xor_with(b);
        }
    }
    return v;
}

}  // namespace

Tableau random_clifford_tableau(uint32_t n, Rng& rng) {
    // Draw the image pair (X_i, Z_i) uniformly inside the current symplectic
    // complement, then project the working basis onto the complement of the
    // drawn pair. The choice counts multiply to |Sp(2n, 2)|, so the symplectic
    // part is exactly uniform; stabilizer/destabilizer signs are uniform bits.
    std::vector<PauliVec> remaining;
    for (uint32_t q = 0; q < n; q++) {
        remaining.push_back(PauliVec::single(n, q, false, true));
        remaining.push_back(PauliVec::single(n, q, true, false));
    }
    std::vector<PauliVec> img_x(n, PauliVec(n)), img_z(n, PauliVec(n));
    for (uint32_t i = 0; i < n; i++) {
        PauliVec a(n);
        do {
            a = random_combo(remaining, rng, n);
        } while (a.is_identity());
        PauliVec b(n);
        do {
            b = random_combo(remaining, rng, n);
        } while (symplectic_product(a, b) == 0);
        img_x[i] = a;
        img_z[i] = b;
        std::vector<PauliVec> next;
        F2Subspace seen(n);
        for (const auto& w : remaining) {
            PauliVec p = w;
            if (symplectic_product(p, b)) {
                p.xor_with(a);
            }
            if (symplectic_product(p, a)) {
                p.xor_with(b);
            }
            if (seen.insert(p)) {
                next.push_back(p);
            }
        }
        remaining = std::move(next);
    }
    std::vector<uint8_t> dsigns(n), ssigns(n);
    for (uint32_t i = 0; i < n; i++) {
        dsigns[i] = rng.bit();
        ssigns[i] = rng.bit();
    }
    return Tableau::from_images(img_x, img_z, dsigns, ssigns);
}

}  // namespace bellsample
