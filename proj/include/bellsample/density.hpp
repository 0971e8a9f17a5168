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
#include "bellsample/statevector.hpp"

#include <Eigen/Dense>

namespace bellsample {

/// Exact mixed-state oracle for small n. Everything here is O(4^n) or worse
/// and is only used to validate the sample-based estimators.
struct DensityMatrix {
    uint32_t n = 0;
    Eigen::MatrixXcd m;

    DensityMatrix() = default;
    explicit DensityMatrix(uint32_t n_) : n(n_), m(Eigen::MatrixXcd::Zero(int64_t{1} << n_, int64_t{1} << n_)) {
        m(0, 0) = 1;
    }
    static DensityMatrix from_state(const StateVec& s) {
        DensityMatrix d(s.n);
        d.m = s.a * s.a.adjoint();
        return d;
    }

    /// trace-1 / Hermiticity / positivity diagnostics (1e-9 tolerances).
    void validate() const;
};

void apply_gate(DensityMatrix& d, const Gate& g);
void apply_channel(DensityMatrix& d, uint32_t q, const PauliChannel& ch);

/// Exact noisy output state: `channel` on both qubits after every two-qubit
/// gate. Measurement noise is not part of the state (it belongs to readout).
/// Throws ResourceError for n > 10.
DensityMatrix evolve_density(const Circuit& c, const NoiseSpec& noise);

double exact_purity(const DensityMatrix& d);
double exact_fidelity(const DensityMatrix& d, const StateVec& target);
double exact_fidelity(const DensityMatrix& d, const Circuit& target);

/// White-noise model (1-eta)|psi><psi| + eta I/2^n.
DensityMatrix white_noise_state(const StateVec& psi, double eta);

/// Dense matrix of a Hermitian-normalized Pauli.
Eigen::MatrixXcd dense_pauli(const PauliVec& p);

/// Exact transversal-Bell-measurement distribution of rho (x) sigma:
/// P(r) = tr[sigma_r rho sigma_r sigma^T] / 2^n, indexed z | (x << n).
std::vector<double> bell_distribution_mixed(const DensityMatrix& rho, const DensityMatrix& sigma);

BellSampleSet bell_sample_mixed(const DensityMatrix& rho, const DensityMatrix& sigma, size_t shots, uint64_t seed);

/// rho proportional to exp(-beta H) for a Hermitian H (eigendecomposition).
DensityMatrix thermal_state(uint32_t n, const Eigen::MatrixXcd& hamiltonian, double beta);

/// Ground state of a Hermitian H (lowest eigenvalue).
StateVec ground_state(uint32_t n, const Eigen::MatrixXcd& hamiltonian);

}  // namespace bellsample
