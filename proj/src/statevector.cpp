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

#include "bellsample/statevector.hpp"

#include <algorithm>
#include <bit>

namespace bellsample {

namespace {

void apply_matrix1(StateVec& s, const std::vector<cplx>& m, uint32_t q) {
    const uint64_t bit = uint64_t{1} << q;
    const uint64_t dim = uint64_t{1} << s.n;
    for (uint64_t i = 0; i < dim; i++) {
        if (i & bit) {
            continue;
        }
        cplx a0 = s.a(i), a1 = s.a(i | bit);
        s.a(i) = m[0] * a0 + m[1] * a1;
        s.a(i | bit) = m[2] * a0 + m[3] * a1;
    }
}

void apply_matrix2(StateVec& s, const std::vector<cplx>& m, uint32_t qa, uint32_t qb) {
    // Matrix basis: first listed qubit (qa) is the high bit.
    const uint64_t ba = uint64_t{1} << qa, bb = uint64_t{1} << qb;
    const uint64_t dim = uint64_t{1} << s.n;
    for (uint64_t i = 0; i < dim; i++) {
        if (i & (ba | bb)) {
            continue;
        }
        uint64_t idx[4] = {i, i | bb, i | ba, i | ba | bb};
        cplx in[4] = {s.a(idx[0]), s.a(idx[1]), s.a(idx[2]), s.a(idx[3])};
        for (int r = 0; r < 4; r++) {
            s.a(idx[r]) = m[r * 4 + 0] * in[0] + m[r * 4 + 1] * in[1] + m[r * 4 + 2] * in[2] + m[r * 4 + 3] * in[3];
        }
    }
}

PauliVec axis_pauli(uint32_t n, const std::vector<uint32_t>& qubits, const std::string& axis) {
    PauliVec p(n);
    for (size_t j = 0; j < axis.size(); j++) {
        switch (axis[j]) {
            case 'I':
                break;
            case 'X':
                p.set_x(qubits[j], true);
                break;
            case 'Y':
                p.set_x(qubits[j], true);
                p.set_z(qubits[j], true);
                break;
            case 'Z':
                p.set_z(qubits[j], true);
                break;
            default:
                throw std::invalid_argument("invalid Pauli axis character");
        }
    }
    return p;
}

}  // namespace

void apply_gate(StateVec& s, const Gate& g) {
    if (g.kind == GateKind::PauliRot) {
        // exp(-i theta/2 P) = cos(theta/2) - i sin(theta/2) P, P applied as a
        // bit kernel so any arity works.
        PauliVec p = axis_pauli(s.n, g.qubits, g.axis);
        StateVec rotated = pauli_apply(s, p);
        double c = std::cos(g.theta / 2), sn = std::sin(g.theta / 2);
        s.a = c * s.a - cplx(0, 1) * sn * rotated.a;
        return;
    }
    auto m = g.to_matrix();
    if (g.arity() == 1) {
        apply_matrix1(s, m, g.qubits[0]);
    } else {
        apply_matrix2(s, m, g.qubits[0], g.qubits[1]);
    }
}

StateVec simulate_state(const Circuit& c, uint32_t cap) {
    if (c.n > cap || c.n > 28) {
        throw ResourceError("statevector engine: qubit count above the cap");
    }
    StateVec s(c.n);
    for (const auto& g : c.gates) {
        apply_gate(s, g);
    }
    return s;
}

StateVec conjugated(const StateVec& s) {
    StateVec r = s;
    r.a = r.a.conjugate();
    return r;
}

StateVec pauli_apply(const StateVec& s, const PauliVec& p) {
    if (p.n != s.n) {
        throw std::invalid_argument("pauli_apply: qubit count mismatch");
    }
    const uint64_t dim = uint64_t{1} << s.n;
    const uint64_t xmask = p.x[0], zmask = p.z[0];
    int yc = std::popcount(p.z[0] & p.x[0]);
    static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx global = kIPow[yc & 3];
    StateVec r(s.n);
    for (uint64_t b = 0; b < dim; b++) {
        // <out|sigma|b> with out = b ^ xmask: phase i^{#Y} (-1)^{b.z}.
        cplx phase = (std::popcount(b & zmask) & 1) ? -global : global;
        r.a(b ^ xmask) = phase * s.a(b);
    }
    return r;
}

double pauli_expectation(const StateVec& s, const PauliVec& p) {
    StateVec sp = pauli_apply(s, p);
    return inner(s, sp).real();
}

cplx inner(const StateVec& a, const StateVec& b) {
    return a.a.dot(b.a);  // Eigen's dot conjugates the left argument
}

double state_fidelity(const StateVec& a, const StateVec& b) {
    return std::norm(inner(a, b));
}

double one_probability(const StateVec& s, uint32_t q) {
    const uint64_t bit = uint64_t{1} << q;
    const uint64_t dim = uint64_t{1} << s.n;
    double p = 0;
    for (uint64_t i = 0; i < dim; i++) {
        if (i & bit) {
            p += std::norm(s.a(i));
        }
    }
    return p;
}

namespace {

StateVec two_copy_measurement_state(const StateVec& copy1, const StateVec& copy2) {
    uint32_t n = copy1.n;
    if (copy2.n != n) {
        throw std::invalid_argument("bell sampling: copies must have equal qubit counts");
    }
    if (2 * n > 28) {
        throw ResourceError("dense bell sampling: 2n above the amplitude cap");
    }
    StateVec full(2 * n);
    const uint64_t d1 = uint64_t{1} << n;
    for (uint64_t j = 0; j < d1; j++) {
        for (uint64_t i = 0; i < d1; i++) {
            full.a(i | (j << n)) = copy1.a(i) * copy2.a(j);
        }
    }
    for (uint32_t i = 0; i < n; i++) {
        apply_gate(full, Gate::two(GateKind::CNOT, i, n + i));
    }
    for (uint32_t i = 0; i < n; i++) {
        apply_gate(full, Gate::single(GateKind::H, i));
    }
    return full;
}

}  // namespace

std::vector<double> bell_distribution_pair(const StateVec& copy1, const StateVec& copy2) {
    StateVec full = two_copy_measurement_state(copy1, copy2);
    std::vector<double> probs(full.a.size());
    for (int64_t i = 0; i < full.a.size(); i++) {
        probs[i] = std::norm(full.a(i));
    }
    return probs;
}

std::vector<double> bell_distribution_exact(const Circuit& c, uint32_t cap) {
    if (c.n > cap) {
        throw ResourceError("bell_distribution_exact: n above the cap");
    }
    StateVec psi = simulate_state(c, cap);
    return bell_distribution_pair(psi, psi);
}

std::vector<size_t> sample_from_table(const std::vector<double>& probs, size_t shots, uint64_t seed) {
    std::vector<double> cum(probs.size());
    double acc = 0;
    for (size_t i = 0; i < probs.size(); i++) {
        acc += probs[i];
        cum[i] = acc;
    }
    std::vector<size_t> out;
    out.reserve(shots);
    constexpr size_t kChunk = 4096;
    for (size_t start = 0, chunk = 0; start < shots; start += kChunk, chunk++) {
        Rng rng(derive_stream(seed, chunk));
        size_t stop = std::min(shots, start + kChunk);
        for (size_t s = start; s < stop; s++) {
            double u = rng.uniform() * acc;
            out.push_back(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
        }
    }
    return out;
}

BellSampleSet bell_sample_dense(const StateVec& copy1, const StateVec& copy2, size_t shots, uint64_t seed) {
    std::vector<double> probs = bell_distribution_pair(copy1, copy2);
    BellSampleSet set;
    set.n = copy1.n;
    set.samples.reserve(shots);
    for (size_t idx : sample_from_table(probs, shots, seed)) {
        set.samples.push_back(sample_from_index(copy1.n, idx));
    }
    return set;
}

std::vector<uint64_t> sample_computational(const StateVec& s, size_t shots, uint64_t seed) {
    std::vector<double> probs(s.a.size());
    for (int64_t i = 0; i < s.a.size(); i++) {
        probs[i] = std::norm(s.a(i));
    }
    std::vector<uint64_t> out;
    out.reserve(shots);
    for (size_t idx : sample_from_table(probs, shots, seed)) {
        out.push_back(idx);
    }
    return out;
}

Eigen::MatrixXcd haar_random_unitary(size_t dim, Rng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            g(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (size_t j = 0; j < dim; j++) {
        cplx d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

StateVec haar_random_state(uint32_t n, Rng& rng) {
    StateVec s(n);
    const uint64_t dim = uint64_t{1} << n;
    for (uint64_t i = 0; i < dim; i++) {
        s.a(i) = cplx(rng.normal(), rng.normal());
    }
    s.a /= s.a.norm();
    return s;
}

}  // namespace bellsample
