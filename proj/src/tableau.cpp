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

#include "bellsample/tableau.hpp"

#include <map>

namespace bellsample {

namespace {

// ---------------------------------------------------------------------------
// Clifford action extraction from gate matrices.

std::vector<cplx> pauli_matrix(uint32_t k, uint8_t xbits, uint8_t zbits) {
    // Hermitian-normalized Pauli on k qubits; site 0 is the high bit to match
    // the gate-matrix convention. Entry at (row ^ xmask, row).
    size_t dim = size_t{1} << k;
    std::vector<cplx> m(dim * dim, 0);
    for (size_t col = 0; col < dim; col++) {
        size_t row = col;
        cplx phase = 1;
        for (uint32_t j = 0; j < k; j++) {
            size_t bit = size_t{1} << (k - 1 - j);
            bool xb = (xbits >> j) & 1, zb = (zbits >> j) & 1;
            bool b = col & bit;
            if (xb && zb) {
                row ^= bit;
                phase *= b ? cplx(0, -1) : cplx(0, 1);
            } else if (xb) {
                row ^= bit;
            } else if (zb) {
                phase *= b ? -1.0 : 1.0;
            }
        }
        m[row * dim + col] = phase;
    }
    return m;
}

std::vector<cplx> conjugate_through(const std::vector<cplx>& u, const std::vector<cplx>& p, size_t dim) {
    // u p u^dagger
    std::vector<cplx> t(dim * dim, 0), r(dim * dim, 0);
    for (size_t i = 0; i < dim; i++) {
        for (size_t k = 0; k < dim; k++) {
            if (u[i * dim + k] == cplx{}) {
                continue;
            }
            for (size_t j = 0; j < dim; j++) {
                t[i * dim + j] += u[i * dim + k] * p[k * dim + j];
            }
        }
    }
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            cplx acc = 0;
            for (size_t k = 0; k < dim; k++) {
                acc += t[i * dim + k] * std::conj(u[j * dim + k]);
            }
            r[i * dim + j] = acc;
        }
    }
    return r;
}

std::optional<CliffordAction::Entry> match_signed_pauli(const std::vector<cplx>& m, uint32_t k) {
    size_t dim = size_t{1} << k;
    for (uint8_t x = 0; x < (1 << k); x++) {
        for (uint8_t z = 0; z < (1 << k); z++) {
            auto p = pauli_matrix(k, x, z);
            for (int sign = 0; sign < 2; sign++) {
                double err = 0;
                for (size_t i = 0; i < dim * dim; i++) {
                    err = std::max(err, std::abs(m[i] - (sign ? -p[i] : p[i])));
                }
                if (err <= 1e-10) {
                    return CliffordAction::Entry{x, z, static_cast<uint8_t>(sign)};
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<CliffordAction> extract_action(const std::vector<cplx>& u, uint32_t k) {
    size_t dim = size_t{1} << k;
    CliffordAction a;
    a.arity = k;
    // Images of the generators first.
    std::array<CliffordAction::Entry, 4> gen_img;  // X_0, X_1, Z_0, Z_1
    for (uint32_t j = 0; j < k; j++) {
        auto ix = match_signed_pauli(conjugate_through(u, pauli_matrix(k, 1 << j, 0), dim), k);
        auto iz = match_signed_pauli(conjugate_through(u, pauli_matrix(k, 0, 1 << j), dim), k);
        if (!ix || !iz) {
            return std::nullopt;
        }
        gen_img[j] = *ix;
        gen_img[2 + j] = *iz;
    }
    // Fill the table by multiplying generator images with phase tracking.
    for (uint32_t xb_zb = 0; xb_zb < (1u << (2 * k)); xb_zb++) {
        uint8_t xb = xb_zb & ((1 << k) - 1), zb = xb_zb >> k;
        uint32_t idx = xb | (uint32_t{zb} << 2);
        SignedPauli acc(k);
        int extra_i = 0;
        for (uint32_t j = 0; j < k; j++) {
            if ((xb >> j) & 1) {
                const auto& e = gen_img[j];
                PauliVec v(k);
                v.x[0] = e.x;
                v.z[0] = e.z;
                acc = acc * SignedPauli(v, e.sign ? 2 : 0);
            }
        }
        for (uint32_t j = 0; j < k; j++) {
            if ((zb >> j) & 1) {
                const auto& e = gen_img[2 + j];
                PauliVec v(k);
                v.x[0] = e.x;
                v.z[0] = e.z;
                acc = acc * SignedPauli(v, e.sign ? 2 : 0);
            }
            if (((xb >> j) & 1) && ((zb >> j) & 1)) {
                extra_i++;  // Hermitian normalization i^{x.z} of the source
            }
        }
        int phase = (acc.phase + extra_i) & 3;
        if (phase & 1) {
            throw std::logic_error("clifford action: non-Hermitian image");
        }
        a.table[idx] = CliffordAction::Entry{
            static_cast<uint8_t>(acc.v.x[0]),
            static_cast<uint8_t>(acc.v.z[0]),
            static_cast<uint8_t>(phase == 2),
        };
    }
    return a;
}

}  // namespace

std::optional<CliffordAction> clifford_action_of(const Gate& g) {
    switch (g.kind) {
        case GateKind::T:
        case GateKind::Tdg:
            return std::nullopt;
        case GateKind::Unitary1:
        case GateKind::Unitary2:
        case GateKind::PauliRot:
            if (g.kind == GateKind::PauliRot && g.arity() > 2) {
                // Conjugation extraction works on <= 2 qubit tables only.
                return std::nullopt;
            }
            return extract_action(g.to_matrix(), g.arity());
        default: {
            static const std::map<GateKind, std::optional<CliffordAction>> cache = [] {
                std::map<GateKind, std::optional<CliffordAction>> c;
                for (GateKind k : {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::X, GateKind::Y, GateKind::Z,
                                   GateKind::SqrtX, GateKind::CNOT, GateKind::CZ, GateKind::ISWAP}) {
                    Gate g2{k, {}, {}, "", 0};
                    uint32_t arity = (k == GateKind::CNOT || k == GateKind::CZ || k == GateKind::ISWAP) ? 2 : 1;
                    g2.qubits = arity == 1 ? std::vector<uint32_t>{0} : std::vector<uint32_t>{0, 1};
                    c[k] = extract_action(g2.to_matrix(), arity);
                }
                return c;
            }();
            return cache.at(g.kind);
        }
    }
}

// ---------------------------------------------------------------------------
// Tableau

Tableau::Tableau(uint32_t n) : n_(n), rows_(2 * n, PauliVec(n)), signs_(2 * n, 0) {
    if (n > kMaxQubits) {
        throw ResourceError("tableau exceeds the qubit cap");
    }
    for (uint32_t i = 0; i < n; i++) {
        rows_[i].set_x(i, true);       // destabilizer X_i
        rows_[n + i].set_z(i, true);   // stabilizer Z_i
    }
}

void Tableau::rowsum(uint32_t h, uint32_t i) {
    int phase = 2 * signs_[h] + 2 * signs_[i] + pauli_product_phase(rows_[i], rows_[h]);
    signs_[h] = (phase & 3) == 2;
    rows_[h].xor_with(rows_[i]);
}

void Tableau::apply(const CliffordAction& a, const std::vector<uint32_t>& qubits) {
    for (uint32_t r = 0; r < 2 * n_; r++) {
        PauliVec& row = rows_[r];
        uint32_t idx = 0;
        for (uint32_t j = 0; j < a.arity; j++) {
            idx |= uint32_t{row.get_x(qubits[j])} << j;
            idx |= uint32_t{row.get_z(qubits[j])} << (2 + j);
        }
        if (idx == 0) {
            continue;
        }
        const auto& e = a.table[idx];
        for (uint32_t j = 0; j < a.arity; j++) {
            row.set_x(qubits[j], (e.x >> j) & 1);
            row.set_z(qubits[j], (e.z >> j) & 1);
        }
        signs_[r] ^= e.sign;
    }
}

void Tableau::apply(const Gate& g) {
    auto action = clifford_action_of(g);
    if (!action) {
        throw UnsupportedGateError(std::string("non-Clifford gate in stabilizer engine: ") + gate_name(g.kind));
    }
    apply(*action, g.qubits);
}

void Tableau::apply(const Circuit& c) {
    if (c.n != n_) {
        throw std::invalid_argument("tableau/circuit qubit count mismatch");
    }
    for (const auto& g : c.gates) {
        apply(g);
    }
}

void Tableau::apply_pauli(const PauliVec& p) {
    for (uint32_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= symplectic_product(rows_[r], p);
    }
}

bool Tableau::measure(uint32_t q, Rng& rng) {
    for (uint32_t p = n_; p < 2 * n_; p++) {
        if (rows_[p].get_x(q)) {
            bool result = rng.bit();
            collapse(p, q, result);
            return result;
        }
    }
    return deterministic_outcome(q);
}

bool Tableau::measure_forced(uint32_t q, bool forced) {
    for (uint32_t p = n_; p < 2 * n_; p++) {
        if (rows_[p].get_x(q)) {
            collapse(p, q, forced);
            return forced;
        }
    }
    return deterministic_outcome(q);
}

void Tableau::collapse(uint32_t p, uint32_t q, bool result) {
    for (uint32_t i = 0; i < 2 * n_; i++) {
        if (i != p && rows_[i].get_x(q)) {
            rowsum(i, p);
        }
    }
    rows_[p - n_] = rows_[p];
    signs_[p - n_] = signs_[p];
    rows_[p] = PauliVec::single(n_, q, true, false);
    signs_[p] = result;
}

bool Tableau::deterministic_outcome(uint32_t q) const {
    SignedPauli acc(n_);
    for (uint32_t i = 0; i < n_; i++) {
        if (rows_[i].get_x(q)) {
            acc = acc * stabilizer_signed(i);
        }
    }
    return acc.phase == 2;
}

int Tableau::expectation(const SignedPauli& p) const {
    SignedPauli acc(n_);
    for (uint32_t i = 0; i < n_; i++) {
        if (symplectic_product(p.v, rows_[i])) {  // anticommutes with destabilizer i
            acc = acc * stabilizer_signed(i);
        }
    }
    if (acc.v != p.v) {
        return 0;
    }
    return acc.phase == p.phase ? 1 : -1;
}

F2Subspace Tableau::stabilizer_subspace() const {
    F2Subspace s(n_);
    for (uint32_t i = 0; i < n_; i++) {
        s.insert(rows_[n_ + i]);
    }
    return s;
}

std::string Tableau::canonical_key() const {
    // Row-reduce the signed stabilizer generators to echelon form.
    std::vector<SignedPauli> gens;
    for (uint32_t i = 0; i < n_; i++) {
        gens.push_back(stabilizer_signed(i));
    }
    std::vector<SignedPauli> reduced;
    for (uint32_t p = 0; p < 2 * n_; p++) {
        auto bit_at = [&](const PauliVec& v) {
            return p < n_ ? v.get_z(p) : v.get_x(p - n_);
        };
        size_t pivot = gens.size();
        for (size_t i = 0; i < gens.size(); i++) {
            if (bit_at(gens[i].v)) {
                pivot = i;
                break;
            }
        }
        if (pivot == gens.size()) {
            continue;
        }
        SignedPauli row = gens[pivot];
        gens.erase(gens.begin() + pivot);
        for (auto& g : gens) {
            if (bit_at(g.v)) {
                g = row * g;
            }
        }
        for (auto& g : reduced) {
            if (bit_at(g.v)) {
                g = row * g;
            }
        }
        reduced.push_back(row);
    }
    std::string key;
    for (const auto& g : reduced) {
        key += g.v.to_bit_string();
        key += g.phase == 2 ? '-' : '+';
    }
    return key;
}

Tableau Tableau::from_images(const std::vector<PauliVec>& destab, const std::vector<PauliVec>& stab,
                             const std::vector<uint8_t>& destab_signs, const std::vector<uint8_t>& stab_signs) {
    uint32_t n = static_cast<uint32_t>(stab.size());
    Tableau t(n);
    for (uint32_t i = 0; i < n; i++) {
        for (uint32_t j = 0; j < n; j++) {
            if (symplectic_product(stab[i], stab[j]) || symplectic_product(destab[i], destab[j]) ||
                symplectic_product(destab[i], stab[j]) != (i == j ? 1 : 0)) {
                throw std::logic_error("from_images: symplectic relations violated");
            }
        }
        t.rows_[i] = destab[i];
        t.rows_[n + i] = stab[i];
        t.signs_[i] = destab_signs[i];
        t.signs_[n + i] = stab_signs[i];
    }
    return t;
}

Tableau simulate_tableau(const Circuit& c) {
    Tableau t(c.n);
    t.apply(c);
    return t;
}

uint32_t exact_subsystem_renyi2(const Tableau& t, const std::vector<uint32_t>& subsystem) {
    uint32_t n = t.num_qubits();
    auto mask_a = qubit_mask(n, subsystem);
    std::array<uint64_t, 2> mask_c{{~mask_a[0], ~mask_a[1]}};
    if (n < 64) {
        mask_c[0] &= (uint64_t{1} << n) - 1;
        mask_c[1] = 0;
    } else if (n < 128) {
        mask_c[1] &= (uint64_t{1} << (n - 64)) - 1;
    }
    F2Subspace masked(n);
    for (uint32_t i = 0; i < n; i++) {
        PauliVec v = t.stabilizer(i);
        v.z[0] &= mask_c[0];
        v.z[1] &= mask_c[1];
        v.x[0] &= mask_c[0];
        v.x[1] &= mask_c[1];
        masked.insert(v);
    }
    uint32_t supported_in_a = n - masked.dim();
    return static_cast<uint32_t>(subsystem.size()) - supported_in_a;
}

uint32_t exact_subsystem_renyi2(const Circuit& c, const std::vector<uint32_t>& subsystem) {
    return exact_subsystem_renyi2(simulate_tableau(c), subsystem);
}

AffineCoset bell_support_coset(const Tableau& t) {
    uint32_t n = t.num_qubits();
    std::vector<PauliVec> rows;
    std::vector<uint8_t> rhs;
    for (uint32_t i = 0; i < n; i++) {
        const PauliVec& g = t.stabilizer(i);
        PauliVec swapped(n);
        swapped.z = g.x;
        swapped.x = g.z;
        rows.push_back(swapped);
        rhs.push_back(static_cast<uint8_t>(y_parity(g)));
    }
    auto sol = f2_solve(n, rows, rhs);
    if (!sol) {
        throw std::logic_error("bell support coset: inconsistent system");
    }
    F2Subspace s = t.stabilizer_subspace();
    return AffineCoset{s, s.reduce(sol->particular)};
}

Circuit bell_measurement_circuit(const Circuit& c) {
    Circuit full(2 * c.n);
    for (const auto& g : c.gates) {
        full.gates.push_back(g);
    }
    for (const auto& g : c.gates) {
        Gate shifted = g;
        for (auto& q : shifted.qubits) {
            q += c.n;
        }
        full.gates.push_back(std::move(shifted));
    }
    for (uint32_t i = 0; i < c.n; i++) {
        full.gates.push_back(Gate::two(GateKind::CNOT, i, c.n + i));
    }
    for (uint32_t i = 0; i < c.n; i++) {
        full.gates.push_back(Gate::single(GateKind::H, i));
    }
    return full;
}

PauliVec conjugation_pauli(const Circuit& c) {
    uint32_t n = c.n;
    Tableau bell = simulate_tableau(bell_measurement_circuit(c));
    PauliVec sample(n);
    for (uint32_t q = 0; q < 2 * n; q++) {
        bool bit = bell.measure_forced(q, false);
        if (q < n) {
            sample.set_z(q, bit);
        } else {
            sample.set_x(q - n, bit);
        }
    }
    // Cancel the x part with a stabilizer combination.
    F2Subspace s = simulate_tableau(c).stabilizer_subspace();
    struct Row {
        std::array<uint64_t, 2> x;
        PauliVec vec;
    };
    std::vector<Row> rows;
    for (const auto& b : s.basis()) {
        rows.push_back(Row{b.x, b});
    }
    PauliVec k = sample;
    std::vector<PauliVec> z_type;
    // Eliminate on x-part columns; leftovers with zero x span the Z-type part.
    for (uint32_t col = 0; col < n; col++) {
        size_t piv = rows.size();
        for (size_t i = 0; i < rows.size(); i++) {
            if ((rows[i].x[col >> 6] >> (col & 63)) & 1) {
                piv = i;
                break;
            }
        }
        if (piv == rows.size()) {
            continue;
        }
        Row r = rows[piv];
        rows.erase(rows.begin() + piv);
        for (auto& other : rows) {
            if ((other.x[col >> 6] >> (col & 63)) & 1) {
                other.x[0] ^= r.x[0];
                other.x[1] ^= r.x[1];
                other.vec.xor_with(r.vec);
            }
        }
        if ((k.x[col >> 6] >> (col & 63)) & 1) {
            k.xor_with(r.vec);
        }
    }
    if (k.x[0] || k.x[1]) {
        throw std::logic_error("conjugation_pauli: no Z-type representative found");
    }
    for (const auto& r : rows) {
        z_type.push_back(r.vec);  // x part already eliminated to zero
    }
    // Canonicalize the z part modulo the Z-type subgroup.
    F2Subspace zsub(n);
    for (const auto& v : z_type) {
        zsub.insert(v);
    }
    return zsub.reduce(k);
}

}  // namespace bellsample
