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

#include "bellsample/density.hpp"

#include <bit>

namespace bellsample {

void DensityMatrix::validate() const {
    if (std::abs(m.trace().real() - 1.0) > 1e-9 || std::abs(m.trace().imag()) > 1e-9) {
        throw std::logic_error("density matrix: trace must be 1");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::logic_error("density matrix: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9) {
        throw std::logic_error("density matrix: negative eigenvalue");
    }
}

void apply_gate(DensityMatrix& d, const Gate& g) {
    // rho -> U rho U^dagger, column pass then row pass.
    StateVec col(d.n);
    const int64_t dim = d.m.rows();
    for (int64_t c = 0; c < dim; c++) {
        col.a = d.m.col(c);
        apply_gate(col, g);
        d.m.col(c) = col.a;
    }
    for (int64_t r = 0; r < dim; r++) {
        col.a = d.m.row(r).conjugate().transpose();
        apply_gate(col, g);
        d.m.row(r) = col.a.conjugate().transpose();
    }
}

void apply_channel(DensityMatrix& d, uint32_t q, const PauliChannel& ch) {
    if (ch.is_identity()) {
        return;
    }
    Eigen::MatrixXcd acc = ch.p[0] * d.m;
    static const GateKind kinds[3] = {GateKind::X, GateKind::Y, GateKind::Z};
    for (int k = 0; k < 3; k++) {
        if (ch.p[k + 1] == 0) {
            continue;
        }
        DensityMatrix tmp = d;
        apply_gate(tmp, Gate::single(kinds[k], q));
        acc += ch.p[k + 1] * tmp.m;
    }
    d.m = std::move(acc);
}

DensityMatrix evolve_density(const Circuit& c, const NoiseSpec& noise) {
    if (c.n > 10) {
        throw ResourceError("density oracle: n above the cap");
    }
    DensityMatrix d(c.n);
    for (const auto& g : c.gates) {
        apply_gate(d, g);
        if (g.arity() == 2 && noise.has_gate_noise()) {
            apply_channel(d, g.qubits[0], noise.gate_channel);
            apply_channel(d, g.qubits[1], noise.gate_channel);
        }
    }
    return d;
}

double exact_purity(const DensityMatrix& d) {
    return d.m.squaredNorm();  // tr[rho^2] for Hermitian rho
}

double exact_fidelity(const DensityMatrix& d, const StateVec& target) {
    return (target.a.adjoint() * d.m * target.a)(0).real();
}

double exact_fidelity(const DensityMatrix& d, const Circuit& target) {
    return exact_fidelity(d, simulate_state(target, d.n));
}

DensityMatrix white_noise_state(const StateVec& psi, double eta) {
    DensityMatrix d = DensityMatrix::from_state(psi);
    int64_t dim = d.m.rows();
    d.m = (1 - eta) * d.m + (eta / static_cast<double>(dim)) * Eigen::MatrixXcd::Identity(dim, dim);
    return d;
}

Eigen::MatrixXcd dense_pauli(const PauliVec& p) {
    const uint64_t dim = uint64_t{1} << p.n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx global = kIPow[std::popcount(p.z[0] & p.x[0]) & 3];
    for (uint64_t b = 0; b < dim; b++) {
        cplx phase = (std::popcount(b & p.z[0]) & 1) ? -global : global;
        m(b ^ p.x[0], b) = phase;
    }
    return m;
}

std::vector<double> bell_distribution_mixed(const DensityMatrix& rho, const DensityMatrix& sigma) {
    uint32_t n = rho.n;
    if (sigma.n != n) {
        throw std::invalid_argument("bell_distribution_mixed: qubit count mismatch");
    }
    if (2 * n > 24) {
        throw ResourceError("bell_distribution_mixed: table too large");
    }
    const uint64_t dim = uint64_t{1} << n;
    const Eigen::MatrixXcd sig_t = sigma.m.transpose();
    std::vector<double> probs(dim * dim, 0.0);
    double norm = std::ldexp(1.0, -static_cast<int>(n));
    for (uint64_t z = 0; z < dim; z++) {
        for (uint64_t x = 0; x < dim; x++) {
            PauliVec r(n);
            r.z[0] = z;
            r.x[0] = x;
            Eigen::MatrixXcd p = dense_pauli(r);
            // tr[(sigma_r rho sigma_r) sigma^T]
            cplx tr = (p * rho.m * p * sig_t).trace();
            probs[z | (x << n)] = std::max(0.0, tr.real()) * norm;
        }
    }
    return probs;
}

BellSampleSet bell_sample_mixed(const DensityMatrix& rho, const DensityMatrix& sigma, size_t shots, uint64_t seed) {
    auto probs = bell_distribution_mixed(rho, sigma);
    BellSampleSet set;
    set.n = rho.n;
    set.samples.reserve(shots);
    for (size_t idx : sample_from_table(probs, shots, seed)) {
        set.samples.push_back(sample_from_index(rho.n, idx));
    }
    return set;
}

DensityMatrix thermal_state(uint32_t n, const Eigen::MatrixXcd& hamiltonian, double beta) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
    Eigen::VectorXd evals = es.eigenvalues();
    double e0 = evals.minCoeff();
    Eigen::VectorXd w = ((-beta) * (evals.array() - e0)).exp().matrix();
    w /= w.sum();
    DensityMatrix d(n);
    d.m = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    return d;
}

StateVec ground_state(uint32_t n, const Eigen::MatrixXcd& hamiltonian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
    int64_t argmin = 0;
    es.eigenvalues().minCoeff(&argmin);
    StateVec s(n);
    s.a = es.eigenvectors().col(argmin);
    return s;
}

}  // namespace bellsample
