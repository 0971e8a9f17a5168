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
#include "bellsample/estimators.hpp"
#include "bellsample/f2.hpp"
#include "bellsample/statevector.hpp"
#include "bellsample/tableau.hpp"

#include <map>
#include <memory>

namespace bellsample {

// ---------------------------------------------------------------------------
// Depth tests.

/// Maximal Renyi-2 entanglement (bits) a depth-d circuit in `arch` can put on
/// `subsystem`: min{|dA| d, |A|, n - |A|, floor(n/2)}.
uint32_t max_entanglement_bound(const Architecture& arch, uint32_t n, const std::vector<uint32_t>& subsystem,
                                uint32_t d);

struct DepthBoundResult {
    uint32_t d_lower = 0;
    double entropy_estimate = 0;  // conservative: -log2(P_hat + eps)
    std::vector<uint32_t> subsystem;
    double epsilon = 0;
};

/// Depth test from maximal entanglement: estimates the half-cut purity on the
/// first floor(n/2) qubits and returns the smallest depth whose entanglement
/// bound covers the conservative entropy estimate (capped at saturation).
DepthBoundResult depth_test_max(const BellSampleSet& samples, const Architecture& arch, double epsilon);

/// Depth-resolved average-entanglement reference values
/// T_A(d) = -log2 E_C tr[rho_A^2], an input artifact for the average test.
struct PageTable {
    std::string arch;
    uint32_t n = 0;
    std::map<uint32_t, double> values;  // depth -> T_A(d), nondecreasing
};

std::string page_table_to_json(const PageTable& t);
PageTable parse_page_table(const std::string& json_text);

/// Builds a page table by averaging exact stabilizer purities 2^{-S_A} over
/// `circuits` seeded draws of `make_circuit(depth, seed)` at each depth.
PageTable make_page_table(const std::string& arch_name, uint32_t n, const std::vector<uint32_t>& depths,
                          size_t circuits, uint64_t seed,
                          const std::function<Circuit(uint32_t depth, uint64_t seed)>& make_circuit);

/// Depth test from average entanglement: averages per-circuit purity
/// estimates first, then thresholds against the page table.
DepthBoundResult depth_test_avg(const std::vector<BellSampleSet>& per_circuit_samples, const PageTable& table,
                                double epsilon);

// ---------------------------------------------------------------------------
// Magic estimation and Clifford+T learning.

enum class DifferenceMode {
    DisjointPairs,  // b^{2i} xor b^{2i+1}: matches the independence assumption
    AllPairs,       // all pairwise differences: more sample-efficient
};

struct MagicEstimate {
    uint32_t t_hat = 0;         // dim(G') - n, clamped at 0
    F2Subspace g_prime;
    bool undersampled = false;  // dim(G') < n
    uint32_t nullity_hat = 0;   // n - dim(rad G'); equals t_hat for well-formed G'
};

/// Spans Bell-sample differences and reports dim(G') - n, a lower bound on the
/// T-count (the stabilizer nullity). Needs at least 2 samples.
MagicEstimate magic_estimate(const BellSampleSet& samples, DifferenceMode mode = DifferenceMode::DisjointPairs);

/// Synthesizes a Clifford circuit mapping the i-th generator to +-Z_i
/// (generator i -> wire i). Input generators must be mutually commuting and
/// independent. The postcondition is tableau-verified on every call.
Circuit clifford_from_isotropic(const std::vector<PauliVec>& generators, uint32_t n);

/// Conjugation of a signed Pauli by the Clifford whose tableau is `t`.
SignedPauli conjugate_pauli(const Tableau& t, const SignedPauli& p);

// ---------------------------------------------------------------------------
// Learning.

class AmbiguousOutcomeError : public std::runtime_error {
  public:
    explicit AmbiguousOutcomeError(const std::string& what) : std::runtime_error(what) {}
};

/// Access to state preparations for the learning algorithm: Bell samples of
/// psi (x) psi plus single copies measured after a fixed Clifford basis change.
class LearnSource {
  public:
    virtual ~LearnSource() = default;
    virtual uint32_t num_qubits() const = 0;
    virtual BellSampleSet bell_samples(size_t shots, uint64_t seed) = 0;
    /// Fixes U for subsequent copies of U|psi>.
    virtual void set_basis(const Circuit& u) = 0;
    /// Measures one copy of U|psi>: every qubit in the computational basis
    /// after rotating the eigenbasis of `tail` (a Pauli supported on the last
    /// k qubits) into it. Returns all outcome bits plus the +-1 eigenvalue of
    /// the tail; callers restrict the bits to the first n - k qubits.
    virtual std::pair<uint64_t, int> measure_copy(const PauliVec& tail, Rng& rng) = 0;
};

/// Noiseless statevector-backed source.
class StateVecLearnSource : public LearnSource {
  public:
    explicit StateVecLearnSource(StateVec psi);
    uint32_t num_qubits() const override {
        return psi_.n;
    }
    BellSampleSet bell_samples(size_t shots, uint64_t seed) override;
    void set_basis(const Circuit& u) override;
    std::pair<uint64_t, int> measure_copy(const PauliVec& tail, Rng& rng) override;

  private:
    StateVec psi_;
    StateVec rotated_;
    std::map<std::pair<uint64_t, uint64_t>, std::vector<double>> table_cache_;
};

struct LearnedState {
    Circuit clifford;        // the synthesized U
    uint32_t n = 0;
    uint32_t t_hat = 0;      // tomographed tail width
    uint64_t x_bits = 0;     // computational part, qubit i = bit i, n - t_hat bits
    StateVec phi;            // state on the last t_hat qubits
    MagicEstimate magic;

    std::string x_string() const;
};

std::string learned_state_to_json(const LearnedState& l);
LearnedState learned_state_from_json(const std::string& text);

/// The Clifford+T learning algorithm: magic estimation, radical extraction,
/// Clifford compression, computational majority vote and pure-state
/// tomography of the non-Clifford tail.
/// Throws ResourceError when the estimated tail exceeds `t_cap` and
/// AmbiguousOutcomeError when no computational outcome reaches majority.
LearnedState learn_clifford_t(LearnSource& source, double epsilon, double delta, uint64_t seed, uint32_t t_cap = 6);

/// |psi_hat> = U^dagger (|x> (x) |phi>). Throws ResourceError above the
/// statevector cap.
StateVec reconstruct_state(const LearnedState& l, uint32_t cap = 14);

}  // namespace bellsample
