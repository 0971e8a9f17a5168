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
#include "bellsample/pauli.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bellsample {

class UnstableEstimateError : public std::runtime_error {
  public:
    explicit UnstableEstimateError(const std::string& what) : std::runtime_error(what) {}
};

enum EstimateFlag : uint32_t {
    kFlagClipped = 1u << 0,
    kFlagDegenerate = 1u << 1,
    kFlagUndersampled = 1u << 2,
    kFlagUndefined = 1u << 3,
};

struct EstimateWithError {
    double value = 0;
    double std_error = 0;
    size_t M_used = 0;
    uint32_t flags = 0;

    bool has_flag(EstimateFlag f) const {
        return flags & f;
    }
};

std::string flags_to_string(uint32_t flags);

/// Swap-test overlap tr[rho sigma] = (even Y-parity count - odd count) / M.
/// Binomial standard error. Throws std::invalid_argument on empty input.
EstimateWithError overlap_estimate(const BellSampleSet& samples);

/// Same fold restricted to the substrings on `subsystem`; estimates the
/// subsystem purity tr[rho_A^2]. Empty subsystem returns exactly 1 with the
/// degenerate flag.
EstimateWithError subsystem_purity(const BellSampleSet& samples, const std::vector<uint32_t>& subsystem);

/// sqrt of the (floor-clipped) purity estimate; the fidelity estimator of the
/// noise-free-measurement regime. The clip floor is the minimal physical
/// purity 4^-n.
EstimateWithError root_purity_fidelity(const BellSampleSet& samples);

/// Measurement-noise-corrected fidelity estimator P_hat^x with
/// x = m / (n (2m/n + 2/3)), m the two-qubit gate count of the circuit.
EstimateWithError corrected_fidelity(const BellSampleSet& samples, size_t m);

/// Estimates <psi|P|psi>^2 from identical-copy samples: the mean eigenvalue
/// (-1)^{piY(P) + omega(P, r)} of P (x) P on the sampled Bell states.
EstimateWithError pauli_sq_expectation(const BellSampleSet& samples, const PauliVec& p);

/// Discards odd-Y-parity outcomes (single-shot error detection).
struct ErrorDetectResult {
    BellSampleSet accepted;
    double rejection_rate = 0;
};
ErrorDetectResult error_detect_filter(const BellSampleSet& samples);

/// Two-copy ratio estimator tr[P rho P rho]/tr[rho^2], the virtual
/// distillation of <psi|P|psi>^2. Throws UnstableEstimateError when the
/// denominator estimate falls below `denominator_threshold`.
EstimateWithError virtual_distillation(const BellSampleSet& samples, const PauliVec& p,
                                       double denominator_threshold = 0.01);

/// Median of k group means; k = 1 reduces to the mean.
double median_of_means(const std::vector<double>& values, size_t k);

/// Linear cross-entropy benchmark from computational-basis samples.
/// chi = 2^n E_q[p(x)] - 1, chi_ideal = 2^n sum p^2 - 1, F = chi/chi_ideal.
/// `defined` is false when chi_ideal = 0.
struct XebResult {
    double chi = 0;
    double chi_std_error = 0;
    double chi_ideal = 0;
    double f_xeb = 0;
    bool defined = false;
};
XebResult xeb(const std::vector<uint64_t>& samples, uint32_t n, const std::vector<double>& ideal_probs);
XebResult xeb(const std::vector<uint64_t>& samples, uint32_t n, const std::function<double(uint64_t)>& ideal_prob,
              double ideal_collision_sum);

}  // namespace bellsample
