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
#include "bellsample/noise.hpp"
#include "bellsample/pauli.hpp"
#include "bellsample/rng.hpp"
#include "bellsample/tableau.hpp"

#include <string>
#include <vector>

namespace bellsample {

/// Transversal Bell-measurement outcomes from two copies of a circuit state.
/// Sample bit i is the copy-1 (Hadamard side) result of qubit pair i; bit n+i
/// is the copy-2 result, so a sample is directly a Pauli label in the (z|x)
/// convention.
struct BellSampleSet {
    uint32_t n = 0;
    std::string pairing = "zx";
    std::vector<PauliVec> samples;

    size_t size() const {
        return samples.size();
    }
};

/// File format: header "bellsamples v1 n=<n> pairing=zx", one 2n-character
/// 0/1 string per line.
std::string bell_samples_to_text(const BellSampleSet& s);
BellSampleSet bell_samples_from_text(const std::string& text);
void save_bell_samples(const std::string& path, const BellSampleSet& s);
BellSampleSet load_bell_samples(const std::string& path);

namespace detail {

/// Shared machinery for the compiled Clifford samplers: the ideal circuit is
/// folded into an affine outcome space once, and per-shot Pauli noise is
/// propagated to the measurement layer as a precomputed outcome shift. A shot
/// costs one channel draw per error location plus a few word XORs.
struct ProgramItem {
    bool is_gate = true;
    Gate gate;
    uint32_t qubit = 0;     // noise sites only
    PauliChannel channel;   // noise sites only
};

struct CompiledStep {
    CliffordAction action;
    std::vector<uint32_t> qubits;
};

struct NoiseSite {
    uint32_t qubit = 0;
    uint32_t channel = 0;                   // index into channels
    size_t step_marker = 0;                 // number of gate steps before this site
    std::array<uint64_t, 2> end_x{{0, 0}};  // outcome shift if X injected here
    std::array<uint64_t, 2> end_z{{0, 0}};  // ... if Z injected
    PauliVec full_x, full_z;                // full end labels (for trajectory uses)
};

class CompiledCliffordProgram {
  public:
    CompiledCliffordProgram(uint32_t n, const std::vector<ProgramItem>& items);

    uint32_t num_measured() const {
        return n_;
    }
    uint32_t support_rank() const {
        return rank_;
    }
    const Tableau& ideal_tableau() const {
        return ideal_;
    }

    /// One noisy measurement outcome over all qubits (low bit = qubit 0).
    std::array<uint64_t, 2> sample_outcome(Rng& rng) const;

    /// The net propagated trajectory Pauli at the end of the circuit.
    PauliVec sample_end_pauli(Rng& rng) const;

    bool in_support(const std::array<uint64_t, 2>& outcome) const;
    double ideal_prob(const std::array<uint64_t, 2>& outcome) const {
        return in_support(outcome) ? std::ldexp(1.0, -static_cast<int>(rank_)) : 0.0;
    }

  private:
    uint32_t n_;
    Tableau ideal_;
    std::vector<CompiledStep> steps_;
    std::vector<NoiseSite> sites_;
    std::vector<PauliChannel> channels_;
    std::array<uint64_t, 2> particular_{{0, 0}};
    std::vector<std::array<uint64_t, 2>> kernel_;       // free-column basis
    std::vector<uint32_t> kernel_free_bit_;
    uint32_t rank_ = 0;
};

}  // namespace detail

/// Bell sampler for Clifford circuits: a single 2n-qubit Clifford program
/// (both copies, independent per-copy noise trajectories, transversal CNOT,
/// measurement-noise layer, H layer), sampled shot by shot.
class CliffordBellSampler {
  public:
    CliffordBellSampler(const Circuit& c, const NoiseSpec& noise);

    uint32_t num_qubits() const {
        return n_;
    }
    PauliVec sample(Rng& rng) const;
    BellSampleSet sample_set(size_t shots, uint64_t seed) const;

    /// Exact support of the noiseless distribution (affine coset S + k).
    AffineCoset noiseless_support() const;

  private:
    static detail::CompiledCliffordProgram build_program(const Circuit& c, const NoiseSpec& noise);

    uint32_t n_;
    Circuit circuit_;
    detail::CompiledCliffordProgram program_;
};

BellSampleSet bell_sample_clifford(const Circuit& c, const NoiseSpec& noise, size_t shots, uint64_t seed);

/// Computational-basis sampler for noisy Clifford circuits (XEB and friends).
class CliffordComputationalSampler {
  public:
    CliffordComputationalSampler(const Circuit& c, const NoiseSpec& noise, bool measurement_noise = true);

    uint32_t num_qubits() const {
        return n_;
    }
    uint64_t sample(Rng& rng) const;
    std::vector<uint64_t> sample_set(size_t shots, uint64_t seed) const;

    /// Ideal (noiseless) outcome probability: uniform on an affine subspace.
    double ideal_prob(uint64_t outcome) const;
    uint32_t support_rank() const {
        return program_.support_rank();
    }

    /// The net trajectory Pauli at the end of the circuit (for one-copy
    /// Pauli-measurement sources).
    PauliVec sample_end_pauli(Rng& rng) const {
        return program_.sample_end_pauli(rng);
    }
    const Tableau& ideal_tableau() const {
        return program_.ideal_tableau();
    }

  private:
    static detail::CompiledCliffordProgram build_program(const Circuit& c, const NoiseSpec& noise,
                                                         bool measurement_noise);

    uint32_t n_;
    detail::CompiledCliffordProgram program_;
};

}  // namespace bellsample
