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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace bellsample {

/// Hard limit on qubit count for the bit-packed types. Two words per mask keeps
/// every GF(2) operation branch-free; Bell sampling on an n-qubit circuit runs a
/// 2n-qubit simulation internally, so the engines cap circuits at n <= 64.
constexpr uint32_t kMaxQubits = 128;

/// A phase-free n-qubit Pauli label, i.e. a vector in F_2^{2n} in the (z|x)
/// symplectic layout: bit i of `z`/`x` encodes the pair (r_i, r_{n+i}) with
/// (z,x) = (0,0) -> I, (0,1) -> X, (1,0) -> Z, (1,1) -> Y.
///
/// The same type doubles as a Bell-sample outcome string r in {0,1}^{2n}
/// (first n bits = z part, last n bits = x part).
struct PauliVec {
    uint32_t n = 0;
    std::array<uint64_t, 2> z{{0, 0}};
    std::array<uint64_t, 2> x{{0, 0}};

    PauliVec() = default;
    explicit PauliVec(uint32_t n_) : n(n_) {}

    static PauliVec single(uint32_t n, uint32_t qubit, bool z_bit, bool x_bit) {
        PauliVec p(n);
        p.set_z(qubit, z_bit);
        p.set_x(qubit, x_bit);
        return p;
    }

    bool get_z(uint32_t q) const {
        return (z[q >> 6] >> (q & 63)) & 1;
    }
    bool get_x(uint32_t q) const {
        return (x[q >> 6] >> (q & 63)) & 1;
    }
    void set_z(uint32_t q, bool v) {
        z[q >> 6] = (z[q >> 6] & ~(uint64_t{1} << (q & 63))) | (uint64_t{v} << (q & 63));
    }
    void set_x(uint32_t q, bool v) {
        x[q >> 6] = (x[q >> 6] & ~(uint64_t{1} << (q & 63))) | (uint64_t{v} << (q & 63));
    }

    bool is_identity() const {
        return (z[0] | z[1] | x[0] | x[1]) == 0;
    }

    void xor_with(const PauliVec& o) {
        z[0] ^= o.z[0];
        z[1] ^= o.z[1];
        x[0] ^= o.x[0];
        x[1] ^= o.x[1];
    }

    PauliVec operator^(const PauliVec& o) const {
        PauliVec r = *this;
        r.xor_with(o);
        return r;
    }

    bool operator==(const PauliVec& o) const {
        return n == o.n && z == o.z && x == o.x;
    }
    bool operator!=(const PauliVec& o) const {
        return !(*this == o);
    }

    /// Number of non-identity sites.
    uint32_t weight() const;

    /// Strictly ordered comparison over the concatenated (z|x) bit layout,
    /// leftmost (lowest index) bit most significant. Used for canonical forms.
    bool lexicographically_before(const PauliVec& o) const;

    /// "IXYZ" form, qubit 0 leftmost.
    std::string to_pauli_string() const;
    /// Raw 2n-bit form (r_1 ... r_n r_{n+1} ... r_{2n}).
    std::string to_bit_string() const;
};

/// Symplectic inner product omega(a, b) = sum_i a_i b_{n+i} + b_i a_{n+i} mod 2.
/// Equals 1 iff the corresponding Pauli operators anticommute.
/// Throws std::invalid_argument on mismatched qubit counts.
int symplectic_product(const PauliVec& a, const PauliVec& b);

/// Parity of the number of Y sites (z = x = 1). An outcome with odd Y-parity
/// lies in the antisymmetric subspace and certainly signals an error.
int y_parity(const PauliVec& r);

/// Y-parity restricted to the qubits in the mask (for subsystem purities).
int y_parity_masked(const PauliVec& r, const std::array<uint64_t, 2>& mask);

/// Plain GF(2) dot product over the concatenated (z|x) layout.
int f2_dot(const PauliVec& a, const PauliVec& b);

std::array<uint64_t, 2> qubit_mask(uint32_t n, const std::vector<uint32_t>& qubits);

/// Parses either an "IXYZ" string of length n or a raw 0/1 string of length 2n.
PauliVec parse_pauli(const std::string& text);

/// A Pauli operator with an i^phase prefactor (phase mod 4). The Hermitian
/// normalization sigma^{(z,x)} = i^{z.x} X^x Z^z is used throughout, so products
/// of Hermitian Paulis land on phase in {0, 2} exactly when they commute with
/// their own ordering, and signs are phase/2.
struct SignedPauli {
    PauliVec v;
    uint8_t phase = 0;  // exponent of i, mod 4

    SignedPauli() = default;
    explicit SignedPauli(uint32_t n) : v(n) {}
    SignedPauli(const PauliVec& v_, uint8_t phase_) : v(v_), phase(phase_) {}

    bool is_minus() const {
        return phase == 2;
    }

    /// Right-multiplied product: this * o, tracking the i exponent.
    SignedPauli operator*(const SignedPauli& o) const;

    bool operator==(const SignedPauli& o) const {
        return v == o.v && phase == o.phase;
    }
};

/// Exponent of i (mod 4) picked up when multiplying Hermitian-normalized
/// Paulis a * b (labels only).
int pauli_product_phase(const PauliVec& a, const PauliVec& b);

}  // namespace bellsample
