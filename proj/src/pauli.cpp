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

#include "bellsample/f2.hpp"
#include "bellsample/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace bellsample {

namespace {

int parity2(uint64_t a, uint64_t b) {
    return (std::popcount(a) + std::popcount(b)) & 1;
}

}  // namespace

uint32_t PauliVec::weight() const {
    return std::popcount(z[0] | x[0]) + std::popcount(z[1] | x[1]);
}

bool PauliVec::lexicographically_before(const PauliVec& o) const {
    // Bit position p < n is z bit p; p >= n is x bit p - n. Lowest differing
    // position decides; the vector with that bit set sorts first.
    for (uint32_t p = 0; p < 2 * n; p++) {
        bool a = p < n ? get_z(p) : get_x(p - n);
        bool b = p < n ? o.get_z(p) : o.get_x(p - n);
        if (a != b) {
            return a;
        }
    }
    return false;
}

std::string PauliVec::to_pauli_string() const {
    std::string s(n, 'I');
    for (uint32_t q = 0; q < n; q++) {
        bool zb = get_z(q), xb = get_x(q);
        s[q] = zb ? (xb ? 'Y' : 'Z') : (xb ? 'X' : 'I');
    }
    return s;
}

std::string PauliVec::to_bit_string() const {
    std::string s(2 * n, '0');
    for (uint32_t q = 0; q < n; q++) {
        s[q] = get_z(q) ? '1' : '0';
        s[n + q] = get_x(q) ? '1' : '0';
    }
    return s;
}

int symplectic_product(const PauliVec& a, const PauliVec& b) {
    if (a.n != b.n) {
        throw std::invalid_argument("symplectic_product: mismatched qubit counts");
    }
    return parity2(a.z[0] & b.x[0], a.z[1] & b.x[1]) ^ parity2(a.x[0] & b.z[0], a.x[1] & b.z[1]);
}

int y_parity(const PauliVec& r) {
    return parity2(r.z[0] & r.x[0], r.z[1] & r.x[1]);
}

int y_parity_masked(const PauliVec& r, const std::array<uint64_t, 2>& mask) {
    return parity2(r.z[0] & r.x[0] & mask[0], r.z[1] & r.x[1] & mask[1]);
}

int f2_dot(const PauliVec& a, const PauliVec& b) {
    return parity2(a.z[0] & b.z[0], a.z[1] & b.z[1]) ^ parity2(a.x[0] & b.x[0], a.x[1] & b.x[1]);
}

std::array<uint64_t, 2> qubit_mask(uint32_t n, const std::vector<uint32_t>& qubits) {
    std::array<uint64_t, 2> m{{0, 0}};
    for (uint32_t q : qubits) {
        if (q >= n) {
            throw std::invalid_argument("qubit_mask: index out of range");
        }
        m[q >> 6] |= uint64_t{1} << (q & 63);
    }
    return m;
}

PauliVec parse_pauli(const std::string& text) {
    bool bits_only = !text.empty();
    for (char c : text) {
        if (c != '0' && c != '1') {
            bits_only = false;
            break;
        }
    }
    if (bits_only) {
        if (text.size() % 2 != 0 || text.size() > 2 * kMaxQubits) {
            throw std::invalid_argument("parse_pauli: bit string must have even length 2n");
        }
        uint32_t n = static_cast<uint32_t>(text.size() / 2);
        PauliVec p(n);
        for (uint32_t q = 0; q < n; q++) {
            p.set_z(q, text[q] == '1');
            p.set_x(q, text[n + q] == '1');
        }
        return p;
    }
    if (text.size() > kMaxQubits) {
        throw std::invalid_argument("parse_pauli: too many qubits");
    }
    PauliVec p(static_cast<uint32_t>(text.size()));
    for (uint32_t q = 0; q < p.n; q++) {
        switch (text[q]) {
            case 'I':
                break;
            case 'X':
                p.set_x(q, true);
                break;
            case 'Y':
                p.set_z(q, true);
                p.set_x(q, true);
                break;
            case 'Z':
                p.set_z(q, true);
                break;
            default:
                throw std::invalid_argument("parse_pauli: invalid character");
        }
    }
    return p;
}

int pauli_product_phase(const PauliVec& a, const PauliVec& b) {
    // Per-site contribution of the i exponent when multiplying Hermitian-
    // normalized Paulis, accumulated bit-parallel. Sites contribute
    // +1, -1, or 0 as in the standard tableau rowsum rule.
    int plus = 0, minus = 0;
    for (int w = 0; w < 2; w++) {
        uint64_t x1 = a.x[w], z1 = a.z[w], x2 = b.x[w], z2 = b.z[w];
        uint64_t y1 = x1 & z1, xo1 = x1 & ~z1, zo1 = ~x1 & z1;
        uint64_t m_plus = (y1 & z2 & ~x2) | (xo1 & x2 & z2) | (zo1 & x2 & ~z2);
        uint64_t m_minus = (y1 & x2 & ~z2) | (xo1 & z2 & ~x2) | (zo1 & x2 & z2);
        plus += std::popcount(m_plus);
        minus += std::popcount(m_minus);
    }
    return ((plus - minus) % 4 + 4) % 4;
}

SignedPauli SignedPauli::operator*(const SignedPauli& o) const {
    SignedPauli r;
    r.v = v ^ o.v;
    r.v.n = v.n;
    r.phase = static_cast<uint8_t>((phase + o.phase + pauli_product_phase(v, o.v)) & 3);
    return r;
}

// ---------------------------------------------------------------------------
// F2Subspace

namespace {

uint32_t leading_bit(const PauliVec& v) {
    // Position in the concatenated (z|x) layout; 2n if zero.
    for (int w = 0; w < 2; w++) {
        if (v.z[w]) {
            return 64 * w + std::countr_zero(v.z[w]);
        }
    }
    for (int w = 0; w < 2; w++) {
        if (v.x[w]) {
            return v.n + 64 * w + std::countr_zero(v.x[w]);
        }
    }
    return 2 * v.n;
}

bool get_layout_bit(const PauliVec& v, uint32_t p) {
    return p < v.n ? v.get_z(p) : v.get_x(p - v.n);
}

}  // namespace

bool F2Subspace::insert(const PauliVec& v) {
    PauliVec r = reduce(v);
    if (r.is_identity()) {
        return false;
    }
    uint32_t piv = leading_bit(r);
    // Back-eliminate the new pivot from existing rows, then place the row.
    for (auto& row : rows_) {
        if (get_layout_bit(row, piv)) {
            row.xor_with(r);
        }
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) {
        pos++;
    }
    rows_.insert(rows_.begin() + pos, r);
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

PauliVec F2Subspace::reduce(const PauliVec& v) const {
    PauliVec r = v;
    for (size_t i = 0; i < rows_.size(); i++) {
        if (get_layout_bit(r, pivots_[i])) {
            r.xor_with(rows_[i]);
        }
    }
    return r;
}

bool F2Subspace::operator==(const F2Subspace& o) const {
    return n_ == o.n_ && rows_ == o.rows_;
}

F2Subspace F2Subspace::radical() const {
    uint32_t k = dim();
    // Gram matrix over the basis, one row per basis vector, packed in a word.
    std::vector<uint64_t> gram(k, 0);
    for (uint32_t i = 0; i < k; i++) {
        for (uint32_t j = 0; j < k; j++) {
            if (symplectic_product(rows_[i], rows_[j])) {
                gram[i] |= uint64_t{1} << j;
            }
        }
    }
    // Kernel of the Gram matrix by elimination on augmented identity tracking.
    std::vector<uint64_t> combo(k);
    for (uint32_t i = 0; i < k; i++) {
        combo[i] = uint64_t{1} << i;
    }
    F2Subspace result(n_);
    uint32_t row = 0;
    for (uint32_t col = 0; col < k && row < k; col++) {
        uint32_t piv = row;
        while (piv < k && !((gram[piv] >> col) & 1)) {
            piv++;
        }
        if (piv == k) {
            continue;
        }
        std::swap(gram[piv], gram[row]);
        std::swap(combo[piv], combo[row]);
        for (uint32_t i = 0; i < k; i++) {
            if (i != row && ((gram[i] >> col) & 1)) {
                gram[i] ^= gram[row];
                combo[i] ^= combo[row];
            }
        }
        row++;
    }
    for (uint32_t i = row; i < k; i++) {
        PauliVec v(n_);
        for (uint32_t j = 0; j < k; j++) {
            if ((combo[i] >> j) & 1) {
                v.xor_with(rows_[j]);
            }
        }
        result.insert(v);
    }
    return result;
}

F2Subspace span(uint32_t n, const std::vector<PauliVec>& vectors) {
    F2Subspace s(n);
    for (const auto& v : vectors) {
        if (v.n != n) {
            throw std::invalid_argument("span: mismatched qubit counts");
        }
        s.insert(v);
    }
    return s;
}

bool membership(const PauliVec& v, const F2Subspace& s) {
    if (v.n != s.num_qubits()) {
        throw std::invalid_argument("membership: mismatched qubit counts");
    }
    return s.contains(v);
}

AffineCoset coset_extract(const std::vector<PauliVec>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("coset_extract: need at least one sample");
    }
    F2Subspace s(samples[0].n);
    for (size_t i = 1; i < samples.size(); i++) {
        s.insert(samples[i] ^ samples[0]);
    }
    return AffineCoset{s, s.reduce(samples[0])};
}

std::optional<F2Solution> f2_solve(uint32_t n, const std::vector<PauliVec>& rows, const std::vector<uint8_t>& rhs) {
    // Eliminate on (row, rhs) pairs, tracked in layout-bit order.
    struct Eq {
        PauliVec row;
        uint8_t b;
    };
    std::vector<Eq> eqs;
    std::vector<uint32_t> piv_positions;
    for (size_t i = 0; i < rows.size(); i++) {
        Eq e{rows[i], rhs[i]};
        for (size_t j = 0; j < eqs.size(); j++) {
            if (get_layout_bit(e.row, piv_positions[j])) {
                e.row.xor_with(eqs[j].row);
                e.b ^= eqs[j].b;
            }
        }
        if (e.row.is_identity()) {
            if (e.b) {
                return std::nullopt;
            }
            continue;
        }
        uint32_t piv = leading_bit(e.row);
        for (size_t j = 0; j < eqs.size(); j++) {
            if (get_layout_bit(eqs[j].row, piv)) {
                eqs[j].row.xor_with(e.row);
                eqs[j].b ^= e.b;
            }
        }
        eqs.push_back(e);
        piv_positions.push_back(piv);
    }
    F2Solution sol;
    sol.particular = PauliVec(n);
    for (size_t j = 0; j < eqs.size(); j++) {
        if (eqs[j].b) {
            uint32_t p = piv_positions[j];
            if (p < n) {
                sol.particular.set_z(p, true);
            } else {
                sol.particular.set_x(p - n, true);
            }
        }
    }
    // Free coordinates: every layout position that is not a pivot. Kernel basis
    // vector for free position f: bit f set, plus pivot bits so every equation
    // stays homogeneous.
    std::vector<bool> is_pivot(2 * n, false);
    for (uint32_t p : piv_positions) {
        is_pivot[p] = true;
    }
    for (uint32_t f = 0; f < 2 * n; f++) {
        if (is_pivot[f]) {
            continue;
        }
        PauliVec v(n);
        if (f < n) {
            v.set_z(f, true);
        } else {
            v.set_x(f - n, true);
        }
        for (size_t j = 0; j < eqs.size(); j++) {
            if (get_layout_bit(eqs[j].row, f)) {
                uint32_t p = piv_positions[j];
                if (p < n) {
                    v.set_z(p, !v.get_z(p));
                } else {
                    v.set_x(p - n, !v.get_x(p - n));
                }
            }
        }
        sol.kernel_basis.push_back(v);
    }
    return sol;
}

}  // namespace bellsample
