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

#include "bellsample/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace bellsample {

std::string flags_to_string(uint32_t flags) {
    std::string s;
    auto add = [&](const char* name) {
        if (!s.empty()) {
            s += '|';
        }
        s += name;
    };
    if (flags & kFlagClipped) {
        add("clipped");
    }
    if (flags & kFlagDegenerate) {
        add("degenerate");
    }
    if (flags & kFlagUndersampled) {
        add("undersampled");
    }
    if (flags & kFlagUndefined) {
        add("undefined");
    }
    return s;
}

namespace {

double pm_std_error(double mean, size_t m) {
    // Standard error of a mean of +-1 outcomes.
    double var = std::max(0.0, 1.0 - mean * mean);
    return std::sqrt(var / static_cast<double>(m));
}

EstimateWithError signed_count_estimate(const BellSampleSet& samples, const std::function<int(const PauliVec&)>& sign) {
    if (samples.size() == 0) {
        throw std::invalid_argument("estimator: need at least one sample");
    }
    // Counts, not floats, so chunked merging is exact.
    size_t plus = 0;
    for (const auto& r : samples.samples) {
        plus += sign(r) == 0 ? 1 : 0;
    }
    size_t minus = samples.size() - plus;
    double value = (static_cast<double>(plus) - static_cast<double>(minus)) / static_cast<double>(samples.size());
    return EstimateWithError{value, pm_std_error(value, samples.size()), samples.size(), 0};
}

}  // namespace

EstimateWithError overlap_estimate(const BellSampleSet& samples) {
    return signed_count_estimate(samples, [](const PauliVec& r) { return y_parity(r); });
}

EstimateWithError subsystem_purity(const BellSampleSet& samples, const std::vector<uint32_t>& subsystem) {
    if (subsystem.empty()) {
        return EstimateWithError{1.0, 0.0, samples.size(), kFlagDegenerate};
    }
    auto mask = qubit_mask(samples.n, subsystem);
    return signed_count_estimate(samples, [mask](const PauliVec& r) { return y_parity_masked(r, mask); });
}

namespace {

EstimateWithError clipped_power(const BellSampleSet& samples, double exponent) {
    EstimateWithError purity = overlap_estimate(samples);
    double floor = std::ldexp(1.0, -2 * static_cast<int>(samples.n));  // 1/4^n
    EstimateWithError out;
    out.M_used = purity.M_used;
    double base = purity.value;
    if (base <= floor) {
        base = floor;
        out.flags |= kFlagClipped;
    }
    out.value = std::pow(base, exponent);
    out.std_error = exponent * std::pow(base, exponent - 1.0) * purity.std_error;
    return out;
}

}  // namespace

EstimateWithError root_purity_fidelity(const BellSampleSet& samples) {
    return clipped_power(samples, 0.5);
}

EstimateWithError corrected_fidelity(const BellSampleSet& samples, size_t m) {
    if (m < 1) {
        throw std::invalid_argument("corrected_fidelity: need m >= 1");
    }
    double n = static_cast<double>(samples.n);
    double md = static_cast<double>(m);
    double exponent = md / (n * (2 * md / n + 2.0 / 3.0));
    return clipped_power(samples, exponent);
}

EstimateWithError pauli_sq_expectation(const BellSampleSet& samples, const PauliVec& p) {
    if (p.n != samples.n) {
        throw std::invalid_argument("pauli_sq_expectation: qubit count mismatch");
    }
    int base = y_parity(p);
    return signed_count_estimate(
        samples, [&p, base](const PauliVec& r) { return base ^ symplectic_product(p, r); });
}

ErrorDetectResult error_detect_filter(const BellSampleSet& samples) {
    ErrorDetectResult out;
    out.accepted.n = samples.n;
    out.accepted.pairing = samples.pairing;
    for (const auto& r : samples.samples) {
        if (y_parity(r) == 0) {
            out.accepted.samples.push_back(r);
        }
    }
    size_t m = samples.size();
    out.rejection_rate = m == 0 ? 0.0 : 1.0 - static_cast<double>(out.accepted.size()) / static_cast<double>(m);
    return out;
}

EstimateWithError virtual_distillation(const BellSampleSet& samples, const PauliVec& p, double denominator_threshold) {
    if (samples.size() == 0) {
        throw std::invalid_argument("virtual_distillation: need at least one sample");
    }
    if (p.n != samples.n) {
        throw std::invalid_argument("virtual_distillation: qubit count mismatch");
    }
    // Numerator observable A = (P (x) P) S and denominator S are both diagonal
    // in the Bell basis; accumulate both eigenvalues per sample.
    int base = y_parity(p);
    size_t m = samples.size();
    double sum_num = 0, sum_den = 0, sum_nn = 0, sum_dd = 0, sum_nd = 0;
    for (const auto& r : samples.samples) {
        int parity = y_parity(r);
        double den = parity ? -1.0 : 1.0;
        double num = ((base ^ symplectic_product(p, r) ^ parity) & 1) ? -1.0 : 1.0;
        sum_num += num;
        sum_den += den;
        sum_nn += num * num;
        sum_dd += den * den;
        sum_nd += num * den;
    }
    double mean_num = sum_num / m, mean_den = sum_den / m;
    if (std::abs(mean_den) < denominator_threshold) {
        throw UnstableEstimateError("virtual_distillation: denominator estimate below threshold");
    }
    double ratio = mean_num / mean_den;
    // Delta-method error for the ratio of correlated means.
    double var_num = sum_nn / m - mean_num * mean_num;
    double var_den = sum_dd / m - mean_den * mean_den;
    double cov = sum_nd / m - mean_num * mean_den;
    double var_ratio =
        (var_num + ratio * ratio * var_den - 2 * ratio * cov) / (mean_den * mean_den * static_cast<double>(m));
    return EstimateWithError{ratio, std::sqrt(std::max(0.0, var_ratio)), m, 0};
}

double median_of_means(const std::vector<double>& values, size_t k) {
    if (values.empty() || k < 1) {
        throw std::invalid_argument("median_of_means: need values and k >= 1");
    }
    k = std::min(k, values.size());
    std::vector<double> means;
    size_t base = values.size() / k, extra = values.size() % k, pos = 0;
    for (size_t g = 0; g < k; g++) {
        size_t len = base + (g < extra ? 1 : 0);
        double acc = 0;
        for (size_t i = 0; i < len; i++) {
            acc += values[pos++];
        }
        means.push_back(acc / static_cast<double>(len));
    }
    std::sort(means.begin(), means.end());
    size_t mid = means.size() / 2;
    return means.size() % 2 ? means[mid] : 0.5 * (means[mid - 1] + means[mid]);
}

XebResult xeb(const std::vector<uint64_t>& samples, uint32_t n, const std::function<double(uint64_t)>& ideal_prob,
              double ideal_collision_sum) {
    if (samples.empty()) {
        throw std::invalid_argument("xeb: need at least one sample");
    }
    double dim = std::ldexp(1.0, static_cast<int>(n));
    double sum = 0, sum_sq = 0;
    for (uint64_t x : samples) {
        double p = ideal_prob(x);
        sum += p;
        sum_sq += p * p;
    }
    size_t m = samples.size();
    double mean_p = sum / m;
    XebResult out;
    out.chi = dim * mean_p - 1.0;
    double var_p = std::max(0.0, sum_sq / m - mean_p * mean_p);
    out.chi_std_error = dim * std::sqrt(var_p / static_cast<double>(m));
    out.chi_ideal = dim * ideal_collision_sum - 1.0;
    out.defined = std::abs(out.chi_ideal) > 1e-12;
    out.f_xeb = out.defined ? out.chi / out.chi_ideal : 0.0;
    return out;
}

XebResult xeb(const std::vector<uint64_t>& samples, uint32_t n, const std::vector<double>& ideal_probs) {
    double collision = 0, total = 0;
    for (double p : ideal_probs) {
        collision += p * p;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("xeb: ideal probabilities must be normalized");
    }
    return xeb(
        samples, n, [&ideal_probs](uint64_t x) { return ideal_probs.at(x); }, collision);
}

}  // namespace bellsample
