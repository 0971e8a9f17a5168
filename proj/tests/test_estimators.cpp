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
#include "bellsample/estimators.hpp"
#include "bellsample/generators.hpp"
#include "bellsample/statevector.hpp"
#include "bellsample/tableau.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>

using namespace bellsample;

namespace {

BellSampleSet make_set(uint32_t n, const std::vector<std::string>& strings) {
    BellSampleSet s;
    s.n = n;
    for (const auto& str : strings) {
        s.samples.push_back(parse_pauli(str));
    }
    return s;
}

}  // namespace

TEST_CASE("overlap estimate") {
    CHECK_THROWS_AS(overlap_estimate(BellSampleSet{}), std::invalid_argument);

    BellSampleSet even = make_set(2, {"II", "XZ", "YY", "ZI"});
    EstimateWithError e = overlap_estimate(even);
    CHECK(e.value == 1.0);
    CHECK(e.M_used == 4);

    // Uniform single-qubit outcomes: (3 even - 1 odd)/4 = 1/2 = tr[(I/2)^2].2
    BellSampleSet uniform = make_set(1, {"I", "X", "Z", "Y"});
    CHECK(overlap_estimate(uniform).value == doctest::Approx(0.5));

    // Distinct copies |0>, |1>: overlap 0 in expectation.
    StateVec zero(1);
    Circuit xc(1);
    xc.append(Gate::single(GateKind::X, 0));
    BellSampleSet pair = bell_sample_dense(zero, simulate_state(xc), 40000, 5);
    EstimateWithError o = overlap_estimate(pair);
    CHECK(std::abs(o.value) < 4 * o.std_error + 1e-9);
}

TEST_CASE("estimators are invariant under sample reordering") {
    Circuit c = random_all_to_all_clifford(5, 3, 21);
    BellSampleSet s = bell_sample_clifford(c, attach_noise(c, depolarizing(0.05)), 5000, 4);
    BellSampleSet reversed = s;
    std::reverse(reversed.samples.begin(), reversed.samples.end());
    CHECK(overlap_estimate(s).value == overlap_estimate(reversed).value);
    CHECK(subsystem_purity(s, {0, 2}).value == subsystem_purity(reversed, {0, 2}).value);
    CHECK(pauli_sq_expectation(s, parse_pauli("XZIYZ")).value ==
          pauli_sq_expectation(reversed, parse_pauli("XZIYZ")).value);
}

TEST_CASE("subsystem purity") {
    Circuit bell(2);
    bell.append(Gate::single(GateKind::H, 0));
    bell.append(Gate::two(GateKind::CNOT, 0, 1));
    BellSampleSet samples = bell_sample_clifford(bell, NoiseSpec::noiseless(), 50000, 2);

    // A = [n] reduces to the overlap estimate, bit-identically.
    EstimateWithError full = subsystem_purity(samples, {0, 1});
    EstimateWithError overlap = overlap_estimate(samples);
    CHECK(full.value == overlap.value);
    CHECK(full.std_error == overlap.std_error);

    // Maximally mixed marginal of a Bell pair.
    EstimateWithError half = subsystem_purity(samples, {0});
    CHECK(std::abs(half.value - 0.5) < 3 * half.std_error + 1e-9);

    // Empty subsystem is degenerate and exactly 1.
    EstimateWithError empty = subsystem_purity(samples, {});
    CHECK(empty.value == 1.0);
    CHECK(empty.has_flag(kFlagDegenerate));

    // Stabilizer oracle at n=8: purity estimate vs 2^{-S_A}, and the
    // pure-state duality at the estimator level.
    for (uint64_t seed = 0; seed < 4; seed++) {
        Circuit c = random_brickwork_clifford(8, 2, seed);
        BellSampleSet s = bell_sample_clifford(c, NoiseSpec::noiseless(), 100000, seed + 10);
        std::vector<uint32_t> a = {0, 1, 2, 3}, ac = {4, 5, 6, 7};
        double expect = std::ldexp(1.0, -static_cast<int>(exact_subsystem_renyi2(c, a)));
        EstimateWithError pa = subsystem_purity(s, a);
        EstimateWithError pc = subsystem_purity(s, ac);
        CHECK(std::abs(pa.value - expect) < 3.5 * pa.std_error + 1e-9);
        CHECK(std::abs(pc.value - expect) < 3.5 * pc.std_error + 1e-9);
        CHECK(std::abs(pa.value - pc.value) < 6 * pa.std_error + 1e-9);
    }
}

TEST_CASE("root purity and corrected fidelity arithmetic") {
    // 82 even / 18 odd out of 100: purity exactly 0.64.
    std::vector<std::string> strings;
    for (int i = 0; i < 82; i++) {
        strings.push_back("IIIIIIIIII");
    }
    for (int i = 0; i < 18; i++) {
        strings.push_back("YIIIIIIIII");
    }
    BellSampleSet s = make_set(10, strings);
    CHECK(overlap_estimate(s).value == doctest::Approx(0.64));
    CHECK(root_purity_fidelity(s).value == doctest::Approx(0.8));

    // n=10, m=60: exponent 60/(10 (12 + 2/3)) = 0.473684..., 0.64^x = 0.8095.
    EstimateWithError corr = corrected_fidelity(s, 60);
    CHECK(corr.value == doctest::Approx(0.8095).epsilon(2e-4));

    // m -> infinity recovers the square root.
    EstimateWithError limit = corrected_fidelity(s, 1000000000);
    CHECK(limit.value == doctest::Approx(0.8).epsilon(1e-5));

    // Pure state: purity 1 -> 1.
    BellSampleSet pure = make_set(2, {"II", "II"});
    CHECK(root_purity_fidelity(pure).value == doctest::Approx(1.0));

    // Negative estimates clip at the 1/4^n floor and set the flag.
    BellSampleSet odd = make_set(1, {"Y", "Y", "Y", "I"});
    EstimateWithError clipped = root_purity_fidelity(odd);
    CHECK(clipped.has_flag(kFlagClipped));
    CHECK(clipped.value == doctest::Approx(0.5));  // sqrt(1/4)
}

TEST_CASE("pauli squared expectation") {
    // |0>, P = Z: every sample gives +1.
    BellSampleSet zset = bell_sample_clifford(Circuit(1), NoiseSpec::noiseless(), 5000, 3);
    CHECK(pauli_sq_expectation(zset, parse_pauli("Z")).value == doctest::Approx(1.0));
    EstimateWithError x = pauli_sq_expectation(zset, parse_pauli("X"));
    CHECK(std::abs(x.value) < 4 * x.std_error + 1e-9);

    // T|+>: <X>^2 = <Y>^2 = 1/2, <Z>^2 = 0.
    Circuit tp(1);
    tp.append(Gate::single(GateKind::H, 0));
    tp.append(Gate::single(GateKind::T, 0));
    StateVec psi = simulate_state(tp);
    BellSampleSet tset = bell_sample_dense(psi, psi, 50000, 4);
    for (const char* p : {"X", "Y"}) {
        EstimateWithError e = pauli_sq_expectation(tset, parse_pauli(p));
        CHECK(std::abs(e.value - 0.5) < 3.5 * e.std_error);
    }
    EstimateWithError z = pauli_sq_expectation(tset, parse_pauli("Z"));
    CHECK(std::abs(z.value) < 4 * z.std_error + 1e-9);

    // Stabilizer elements are +-1 definite: zero-variance estimate of 1.
    for (uint64_t seed = 0; seed < 5; seed++) {
        Circuit c = random_all_to_all_clifford(4, 2, seed);
        BellSampleSet s = bell_sample_clifford(c, NoiseSpec::noiseless(), 300, seed);
        Tableau t = simulate_tableau(c);
        CHECK(pauli_sq_expectation(s, t.stabilizer(seed % 4)).value == doctest::Approx(1.0));
    }
}

TEST_CASE("error detection filter") {
    Circuit c = random_all_to_all_clifford(4, 3, 6);
    BellSampleSet clean = bell_sample_clifford(c, NoiseSpec::noiseless(), 20000, 1);
    ErrorDetectResult r = error_detect_filter(clean);
    CHECK(r.rejection_rate == 0.0);
    CHECK(r.accepted.size() == clean.size());

    BellSampleSet noisy = bell_sample_clifford(c, attach_noise(c, depolarizing(0.1)), 20000, 2);
    ErrorDetectResult rn = error_detect_filter(noisy);
    CHECK(rn.rejection_rate > 0.01);
    for (const auto& sample : rn.accepted.samples) {
        CHECK(y_parity(sample) == 0);
    }
    ErrorDetectResult again = error_detect_filter(rn.accepted);
    CHECK(again.rejection_rate == 0.0);
    CHECK(again.accepted.size() == rn.accepted.size());
}

TEST_CASE("virtual distillation") {
    // Pure state, stabilizer P: exactly 1.
    Circuit c = random_all_to_all_clifford(3, 2, 9);
    BellSampleSet s = bell_sample_clifford(c, NoiseSpec::noiseless(), 4000, 7);
    Tableau t = simulate_tableau(c);
    CHECK(virtual_distillation(s, t.stabilizer(1)).value == doctest::Approx(1.0));

    // P = identity: exactly 1 for any samples.
    BellSampleSet noisy = bell_sample_clifford(c, attach_noise(c, depolarizing(0.15)), 4000, 8);
    CHECK(virtual_distillation(noisy, PauliVec(3)).value == doctest::Approx(1.0));

    // rho = (1-eps)|0><0| + eps|1><1|: P=Z gives exactly 1 (Z rho Z = rho);
    // P=X exposes the unsuppressed cross term 2 eps (1-eps) / ((1-eps)^2 + eps^2).
    double eps = 0.2;
    StateVec zero(1);
    Circuit xc(1);
    xc.append(Gate::single(GateKind::X, 0));
    DensityMatrix rho(1);
    rho.m = (1 - eps) * DensityMatrix::from_state(zero).m + eps * DensityMatrix::from_state(simulate_state(xc)).m;
    BellSampleSet mixed = bell_sample_mixed(rho, rho, 200000, 11);
    EstimateWithError vz = virtual_distillation(mixed, parse_pauli("Z"));
    CHECK(std::abs(vz.value - 1.0) < 4 * vz.std_error);
    EstimateWithError vx = virtual_distillation(mixed, parse_pauli("X"));
    double want = 2 * eps * (1 - eps) / ((1 - eps) * (1 - eps) + eps * eps);
    CHECK(std::abs(vx.value - want) < 4 * vx.std_error);

    // Unstable denominator triggers the dedicated error.
    CHECK_THROWS_AS(virtual_distillation(mixed, parse_pauli("Z"), /*denominator_threshold=*/0.9),
                    UnstableEstimateError);
}

TEST_CASE("median of means") {
    CHECK_THROWS_AS(median_of_means({}, 3), std::invalid_argument);
    std::vector<double> constant(10, 2.5);
    CHECK(median_of_means(constant, 4) == doctest::Approx(2.5));
    std::vector<double> vals = {1, 2, 3, 4, 5, 6};
    CHECK(median_of_means(vals, 1) == doctest::Approx(3.5));
    // A heavy outlier stays confined to one group.
    std::vector<double> outlier(9, 0.0);
    outlier.push_back(100.0);
    CHECK(median_of_means(outlier, 5) == doctest::Approx(0.0));
}

TEST_CASE("xeb estimator") {
    // Uniform ideal distribution: chi_ideal = 0, result undefined.
    std::vector<double> uniform(8, 1.0 / 8.0);
    std::vector<uint64_t> samples = {0, 1, 2, 3, 4, 5, 6, 7};
    XebResult u = xeb(samples, 3, uniform);
    CHECK(!u.defined);
    CHECK(u.chi == doctest::Approx(0.0).epsilon(1e-12));

    // Delta distribution sampled perfectly: chi = chi_ideal = 2^n - 1, F = 1.
    std::vector<double> delta(8, 0.0);
    delta[5] = 1.0;
    std::vector<uint64_t> hits(100, 5);
    XebResult d = xeb(hits, 3, delta);
    CHECK(d.defined);
    CHECK(d.chi == doctest::Approx(7.0));
    CHECK(d.chi_ideal == doctest::Approx(7.0));
    CHECK(d.f_xeb == doctest::Approx(1.0));

    CHECK_THROWS_AS(xeb(hits, 3, std::vector<double>(8, 0.3)), std::invalid_argument);
}
