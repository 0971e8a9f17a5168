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
#include "bellsample/density.hpp"
#include "bellsample/estimators.hpp"
#include "bellsample/tableau.hpp"

#include <memory>

namespace bellsample {

/// One-copy measurement access to a (noisy) state preparation: a single +-1
/// outcome of measuring a signed Pauli operator.
class PauliMeasurementSource {
  public:
    virtual ~PauliMeasurementSource() = default;
    virtual uint32_t num_qubits() const = 0;
    virtual int measure(const SignedPauli& p, Rng& rng) = 0;
};

/// Clifford circuit with per-shot Pauli-noise trajectories. Each measurement
/// draws a fresh trajectory, propagates it to the end of the circuit, and
/// reads the (exact, +-1) expectation on the trajectory state.
class TrajectoryPauliSource : public PauliMeasurementSource {
  public:
    TrajectoryPauliSource(const Circuit& c, const NoiseSpec& noise);
    uint32_t num_qubits() const override {
        return sampler_.num_qubits();
    }
    int measure(const SignedPauli& p, Rng& rng) override;

  private:
    CliffordComputationalSampler sampler_;
};

/// Exact density-matrix oracle source (small n).
class DensityPauliSource : public PauliMeasurementSource {
  public:
    explicit DensityPauliSource(DensityMatrix rho) : rho_(std::move(rho)) {}
    uint32_t num_qubits() const override {
        return rho_.n;
    }
    int measure(const SignedPauli& p, Rng& rng) override;

  private:
    DensityMatrix rho_;
};

/// Direct fidelity estimation against a stabilizer target: averages one-shot
/// outcomes of uniformly random (signed) stabilizer-group elements measured on
/// single copies from `source`. Unbiased; standard error <= 1/sqrt(M).
EstimateWithError dfe_estimate(const Tableau& target, PauliMeasurementSource& source, size_t shots, uint64_t seed);

}  // namespace bellsample
