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

#include "bellsample/bell_sampling.hpp"
#include "bellsample/circuit.hpp"
#include "bellsample/pauli.hpp"
#include "bellsample/rng.hpp"

#include <Eigen/Dense>

namespace bellsample {

/// Dense state on n qubits; amplitude index bit q is qubit q (little-endian).
struct StateVec {
    uint32_t n = 0;
    Eigen::VectorXcd a;

    StateVec() = default;
    explicit StateVec(uint32_t n_) : n(n_), a(Eigen::VectorXcd::Zero(int64_t{1} << n_)) {
        a(0) = 1;
    }

    double norm_error() const {
        return std::abs(a.squaredNorm() - 1.0);
    }
};

void apply_gate(StateVec& s, const Gate& g);

/// Exact state C|0^n>. Throws ResourceError above the cap (default 14).
StateVec simulate_state(const Circuit& c, uint32_t cap = 14);

/// Componentwise complex conjugation (the computational-basis convention).
StateVec conjugated(const StateVec& s);

/// sigma_P |psi> with the Hermitian normalization.
StateVec pauli_apply(const StateVec& s, const PauliVec& p);

/// <psi| sigma_P |psi>, real for Hermitian Paulis.
double pauli_expectation(const StateVec& s, const PauliVec& p);

cplx inner(const StateVec& a, const StateVec& b);
double state_fidelity(const StateVec& a, const StateVec& b);

/// Pr[qubit q measures 1].
double one_probability(const StateVec& s, uint32_t q);

/// Exact Bell distribution P_C(r) over r in {0,1}^{2n}, indexed z | (x << n).
/// Computed by transforming |C> (x) |C> through the transversal CNOT/H
/// measurement circuit in one pass. Throws ResourceError for n above the cap.
std::vector<double> bell_distribution_exact(const Circuit& c, uint32_t cap = 8);

/// Same, for explicitly given (possibly distinct) copies.
std::vector<double> bell_distribution_pair(const StateVec& copy1, const StateVec& copy2);

/// Transversal Bell samples from copy1 (x) copy2.
BellSampleSet bell_sample_dense(const StateVec& copy1, const StateVec& copy2, size_t shots, uint64_t seed);

std::vector<uint64_t> sample_computational(const StateVec& s, size_t shots, uint64_t seed);

/// Draws from a distribution given as a probability table (inverse CDF).
std::vector<size_t> sample_from_table(const std::vector<double>& probs, size_t shots, uint64_t seed);

Eigen::MatrixXcd haar_random_unitary(size_t dim, Rng& rng);
StateVec haar_random_state(uint32_t n, Rng& rng);

/// Bell-sample index helpers shared by the dense paths.
inline PauliVec sample_from_index(uint32_t n, uint64_t index) {
    PauliVec r(n);
    r.z[0] = index & ((uint64_t{1} << n) - 1);
    r.x[0] = index >> n;
    return r;
}
inline uint64_t index_from_sample(const PauliVec& r) {
    return r.z[0] | (r.x[0] << r.n);
}

}  // namespace bellsample
