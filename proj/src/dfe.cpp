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

#include "bellsample/dfe.hpp"

namespace bellsample {

TrajectoryPauliSource::TrajectoryPauliSource(const Circuit& c, const NoiseSpec& noise)
    : sampler_(c, noise, /*measurement_noise=*/false) {}

int TrajectoryPauliSource::measure(const SignedPauli& p, Rng& rng) {
    PauliVec e = sampler_.sample_end_pauli(rng);
    int ideal = sampler_.ideal_tableau().expectation(p);
    if (ideal == 0) {
        return rng.pm_one();
    }
    return symplectic_product(e, p.v) ? -ideal : ideal;
}

int DensityPauliSource::measure(const SignedPauli& p, Rng& rng) {
    Eigen::MatrixXcd op = dense_pauli(p.v);
    if (p.phase == 2) {
        op = -op;
    } else if (p.phase != 0) {
        throw std::invalid_argument("measure: phase must be +-1");
    }
    double v = (rho_.m * op).trace().real();
    return rng.uniform() < 0.5 * (1.0 + v) ? 1 : -1;
}

EstimateWithError dfe_estimate(const Tableau& target, PauliMeasurementSource& source, size_t shots, uint64_t seed) {
    if (target.num_qubits() != source.num_qubits()) {
        throw std::invalid_argument("dfe_estimate: qubit count mismatch");
    }
    if (target.num_qubits() > 64) {
        throw ResourceError("dfe_estimate: target too wide");
    }
    uint32_t n = target.num_qubits();
    long long acc = 0;
    constexpr size_t kChunk = 4096;
    for (size_t start = 0, chunk = 0; start < shots; start += kChunk, chunk++) {
        Rng rng(derive_stream(seed, chunk));
        size_t stop = std::min(shots, start + kChunk);
        for (size_t s = start; s < stop; s++) {
            uint64_t combo = rng.next_u64();
            if (n < 64) {
                combo &= (uint64_t{1} << n) - 1;
            }
            SignedPauli element(n);
            for (uint32_t i = 0; i < n; i++) {
                if ((combo >> i) & 1) {
                    element = element * target.stabilizer_signed(i);
                }
            }
            acc += source.measure(element, rng);
        }
    }
    double mean = static_cast<double>(acc) / static_cast<double>(shots);
    double var = std::max(0.0, 1.0 - mean * mean);
    return EstimateWithError{mean, std::sqrt(var / static_cast<double>(shots)), shots, 0};
}

}  // namespace bellsample
