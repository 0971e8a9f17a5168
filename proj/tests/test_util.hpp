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

#include "bellsample/pauli.hpp"
#include "bellsample/rng.hpp"
#include "bellsample/statevector.hpp"

#include <Eigen/Dense>

#include <map>
#include <vector>

namespace bellsample::testing {

inline PauliVec random_pauli(uint32_t n, Rng& rng) {
    PauliVec p(n);
    for (uint32_t q = 0; q < n; q++) {
        p.set_z(q, rng.bit());
        p.set_x(q, rng.bit());
    }
    return p;
}

/// Pearson chi-squared statistic over expected counts (cells with expected
/// counts below 1e-12 require zero observations).
inline double chi2_statistic(const std::map<uint64_t, size_t>& counts, const std::vector<double>& probs,
                             size_t total) {
    double stat = 0;
    std::vector<size_t> observed(probs.size(), 0);
    for (const auto& [idx, c] : counts) {
        observed.at(idx) = c;
    }
    for (size_t i = 0; i < probs.size(); i++) {
        double expected = probs[i] * static_cast<double>(total);
        if (expected < 1e-12) {
            if (observed[i] != 0) {
                return 1e18;  // support violation
            }
            continue;
        }
        double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    return stat;
}

/// Reduced density matrix on `keep' (ascending qubit list) of a pure state.
inline Eigen::MatrixXcd reduced_density(const StateVec& s, const std::vector<uint32_t>& keep) {
    uint32_t k = static_cast<uint32_t>(keep.size());
    std::vector<uint32_t> rest;
    for (uint32_t q = 0; q < s.n; q++) {
        bool in = false;
        for (uint32_t x : keep) {
            in |= x == q;
        }
        if (!in) {
            rest.push_back(q);
        }
    }
    auto scatter = [](const std::vector<uint32_t>& qs, uint64_t bits) {
        uint64_t out = 0;
        for (size_t i = 0; i < qs.size(); i++) {
            out |= ((bits >> i) & 1) << qs[i];
        }
        return out;
    };
    const uint64_t dk = uint64_t{1} << k, dr = uint64_t{1} << rest.size();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
    for (uint64_t a = 0; a < dk; a++) {
        for (uint64_t b = 0; b < dk; b++) {
            cplx acc = 0;
            for (uint64_t r = 0; r < dr; r++) {
                uint64_t ia = scatter(keep, a) | scatter(rest, r);
                uint64_t ib = scatter(keep, b) | scatter(rest, r);
                acc += s.a(ia) * std::conj(s.a(ib));
            }
            rho(a, b) = acc;
        }
    }
    return rho;
}

}  // namespace bellsample::testing
