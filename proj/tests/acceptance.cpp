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
//
// Acceptance suite: one pass/fail line per criterion, exit code 0 only when
// every criterion holds. Every tolerance is pinned here; run a single
// criterion with e.g. `acceptance A3`.

#include "bellsample/density.hpp"
#include "bellsample/dfe.hpp"
#include "bellsample/estimators.hpp"
#include "bellsample/generators.hpp"
#include "bellsample/protocols.hpp"
#include "bellsample/random_clifford.hpp"
#include "bellsample/statevector.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

using namespace bellsample;

namespace {

struct Failure {
    std::string what;
};

#define REQUIRE_MSG(cond, msg)                                      \
    do {                                                            \
        if (!(cond)) {                                              \
            std::ostringstream os_;                                 \
            os_ << msg;                                             \
            throw Failure{os_.str()};                               \
        }                                                           \
    } while (0)

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(5);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// A1: every noiseless Bell sample has even Y-parity and lies in one affine
// coset of dimension n.

void a1(std::string& note) {
    size_t circuits = 0, checked = 0;
    for (uint32_t n = 2; n <= 6; n++) {
        for (uint64_t i = 0; i < 10; i++) {
            uint64_t seed = 100 * n + i;
            Circuit c = random_all_to_all_clifford(n, 3, seed);
            CliffordBellSampler sampler(c, NoiseSpec::noiseless());
            AffineCoset support = sampler.noiseless_support();
            REQUIRE_MSG(support.subspace.dim() == n, "support dimension " << support.subspace.dim() << " != " << n);
            BellSampleSet set = sampler.sample_set(100000, seed + 7777);
            for (const auto& r : set.samples) {
                REQUIRE_MSG(y_parity(r) == 0, "odd-parity noiseless sample at n=" << n << " seed=" << seed);
                REQUIRE_MSG(support.contains(r), "sample outside the support coset at n=" << n << " seed=" << seed);
            }
            AffineCoset learned = coset_extract(set.samples);
            REQUIRE_MSG(learned.subspace == support.subspace && learned.offset == support.offset,
                        "extracted coset differs from the exact support at n=" << n);
            circuits++;
            checked += set.size();
        }
    }
    note = std::to_string(circuits) + " circuits, " + std::to_string(checked) + " samples, 0 violations";
}

// ---------------------------------------------------------------------------
// A2: first-moment anticoncentration over uniform Cliffords at n=3 equals
// 1/36 on every even-parity outcome and 0 on odd; second moment over Haar
// unitaries equals (1/3 + (2/3)/8) / C(11,4).

void a2(std::string& note) {
    const uint32_t n = 3;
    const size_t draws = 20000;
    const double dim = 8;
    Rng rng(20260207);
    std::vector<double> sum(64, 0.0), sumsq(64, 0.0);
    for (size_t i = 0; i < draws; i++) {
        Tableau t = random_clifford_tableau(n, rng);
        AffineCoset support = bell_support_coset(t);
        for (uint64_t idx = 0; idx < 64; idx++) {
            double p = support.contains(sample_from_index(n, idx)) ? 1.0 / dim : 0.0;
            sum[idx] += p;
            sumsq[idx] += p * p;
        }
    }
    const double target = 1.0 / 36.0;
    double worst = 0;
    for (uint64_t idx = 0; idx < 64; idx++) {
        double mean = sum[idx] / draws;
        if (y_parity(sample_from_index(n, idx))) {
            REQUIRE_MSG(mean == 0.0, "odd-parity outcome " << idx << " has nonzero average probability");
            continue;
        }
        double var = sumsq[idx] / draws - mean * mean;
        double sem = std::sqrt(var / draws);
        REQUIRE_MSG(std::abs(mean - target) <= 3 * sem,
                    "outcome " << idx << ": mean " << mean << " vs 1/36 = " << target << " (3 sem = " << 3 * sem
                               << ")");
        worst = std::max(worst, std::abs(mean - target) / sem);
    }

    // Second moment, Haar random states, fixed even-parity outcomes.
    const double d4 = 330;  // C(11, 4)
    const double target2 = (1.0 / 3.0 + (2.0 / 3.0) / dim) / d4;
    std::vector<PauliVec> rs = {PauliVec(n), PauliVec::single(n, 0, false, true)};  // identity and X_0
    for (const auto& r : rs) {
        double s = 0, ss = 0;
        const size_t haar_draws = 10000;
        for (size_t i = 0; i < haar_draws; i++) {
            StateVec psi = haar_random_state(n, rng);
            cplx overlap = inner(psi, pauli_apply(conjugated(psi), r));
            double p = std::norm(overlap) / dim;
            double p2 = p * p;
            s += p2;
            ss += p2 * p2;
        }
        double mean = s / haar_draws;
        double sem = std::sqrt((ss / haar_draws - mean * mean) / haar_draws);
        REQUIRE_MSG(std::abs(mean - target2) <= 3 * sem,
                    "second moment " << mean << " vs " << target2 << " (3 sem = " << 3 * sem << ")");
    }
    note = "first moment worst deviation " + format_double(worst) + " sem; second moment within 3 sem";
}

// ---------------------------------------------------------------------------
// A3 / A4 shared sweep machinery.

struct SweepPoint {
    double rate = 0;
    double purity = 0, purity_err = 0;
    double dfe = 0, dfe_err = 0;
    uint32_t n = 0;
    size_t m = 0;
};

SweepPoint run_sweep_point(uint32_t n, uint32_t layers, const PauliChannel& channel, const PauliChannel& meas,
                           size_t circuits, size_t bell_shots, size_t dfe_shots, uint64_t seed) {
    SweepPoint pt;
    pt.n = n;
    std::vector<double> purities, fidelities;
    for (size_t c = 0; c < circuits; c++) {
        Circuit circuit = random_all_to_all_clifford(n, layers, derive_stream(seed, c));
        pt.m = circuit.two_qubit_gate_count();
        NoiseSpec noise = attach_noise(circuit, channel, meas);
        BellSampleSet bell = bell_sample_clifford(circuit, noise, bell_shots, derive_stream(seed, 100 + c));
        purities.push_back(overlap_estimate(bell).value);
        Tableau target = simulate_tableau(circuit);
        TrajectoryPauliSource source(circuit, noise);
        fidelities.push_back(dfe_estimate(target, source, dfe_shots, derive_stream(seed, 200 + c)).value);
    }
    auto mean_std = [](const std::vector<double>& v) {
        double m = 0, s = 0;
        for (double x : v) {
            m += x;
        }
        m /= v.size();
        for (double x : v) {
            s += (x - m) * (x - m);
        }
        s = v.size() > 1 ? std::sqrt(s / (v.size() - 1.0) / v.size()) : 0.0;
        return std::make_pair(m, s);
    };
    std::tie(pt.purity, pt.purity_err) = mean_std(purities);
    std::tie(pt.dfe, pt.dfe_err) = mean_std(fidelities);
    return pt;
}

const std::vector<double> kSweep = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05};

void a3(std::string& note) {
    size_t tested = 0;
    double worst = 0;
    for (uint32_t n : {6u, 12u}) {
        for (size_t i = 0; i < kSweep.size(); i++) {
            double eps = kSweep[i];
            SweepPoint pt = run_sweep_point(n, 12, depolarizing(eps), PauliChannel::identity(),
                                            /*circuits=*/10, /*bell=*/10000, /*dfe=*/10000, 31000 + 100 * n + i);
            if (pt.dfe < 0.1) {
                continue;
            }
            double base = std::max(pt.purity, std::ldexp(1.0, -2 * static_cast<int>(n)));
            double root = std::sqrt(base);
            double root_err = pt.purity_err / (2 * root);
            double tol = std::max(0.02, 3 * std::sqrt(root_err * root_err + pt.dfe_err * pt.dfe_err));
            double dev = std::abs(root - pt.dfe);
            REQUIRE_MSG(dev <= tol, "n=" << n << " eps=" << eps << ": |sqrt(P) - F_DFE| = " << dev << " > " << tol);
            worst = std::max(worst, dev);
            tested++;
        }
    }
    note = std::to_string(tested) + " points with F >= 0.1, worst |sqrt(P)-F| = " + format_double(worst);
}

void a4(std::string& note) {
    const uint32_t n = 12;
    // The Fig. 2 error-rate range: beyond 0.02 the state fidelity at n=12
    // falls under the purity sampling floor of M = 1e5 and no purity-based
    // estimator carries signal.
    const std::vector<double> sweep = {0.001, 0.002, 0.005, 0.01, 0.02};
    double mad_corrected = 0, mad_root = 0;
    size_t points = 0;
    for (size_t i = 0; i < sweep.size(); i++) {
        double eps = sweep[i];
        PauliChannel channel = PauliChannel::xyz(eps, eps / 3, eps / 10);
        SweepPoint pt = run_sweep_point(n, 12, channel, channel, /*circuits=*/10, /*bell=*/10000, /*dfe=*/10000,
                                        41000 + i);
        double base = std::max(pt.purity, std::ldexp(1.0, -2 * static_cast<int>(n)));
        double md = static_cast<double>(pt.m);
        double expnt = md / (n * (2 * md / n + 2.0 / 3.0));
        double corrected = std::pow(base, expnt);
        double corrected_err = expnt * std::pow(base, expnt - 1) * pt.purity_err;
        double root = std::sqrt(base);
        double tol = std::max(0.03, 3 * std::sqrt(corrected_err * corrected_err + pt.dfe_err * pt.dfe_err));
        REQUIRE_MSG(std::abs(corrected - pt.dfe) <= tol, "eps=" << eps << ": |corrected - F_DFE| = "
                                                                << std::abs(corrected - pt.dfe) << " > " << tol);
        mad_corrected += std::abs(corrected - pt.dfe);
        mad_root += std::abs(root - pt.dfe);
        points++;
    }
    mad_corrected /= points;
    mad_root /= points;
    REQUIRE_MSG(mad_corrected < mad_root, "corrected estimator MAD " << mad_corrected
                                                                     << " does not beat root purity " << mad_root);
    note = "corrected MAD " + format_double(mad_corrected) + " < root-purity MAD " + format_double(mad_root);
}

// ---------------------------------------------------------------------------
// A5: Clifford+T learning at n=6, t in {1,2,3}.

void a5(std::string& note) {
    const uint32_t n = 6;
    std::string counts;
    for (uint32_t t : {1u, 2u, 3u}) {
        size_t good = 0;
        for (uint64_t trial = 0; trial < 100; trial++) {
            uint64_t seed = 50000 + 1000 * t + trial;
            Circuit c = clifford_plus_t_random(n, t, 1, seed);
            StateVec psi = simulate_state(c);
            StateVecLearnSource source(psi);
            LearnedState learned = learn_clifford_t(source, 0.05, 0.05, seed + 1);
            REQUIRE_MSG(learned.magic.t_hat <= t,
                        "t_hat " << learned.magic.t_hat << " exceeds the true T-count " << t);
            double f = state_fidelity(reconstruct_state(learned), psi);
            good += f >= 0.95 ? 1 : 0;
        }
        REQUIRE_MSG(good >= 95, "t=" << t << ": only " << good << "/100 trials reached fidelity 0.95");
        counts += (counts.empty() ? "" : "/") + std::to_string(good);
    }
    note = "fidelity >= 0.95 in " + counts + " of 100 trials for t = 1/2/3; t_hat <= t always";
}

// ---------------------------------------------------------------------------
// A6: magic estimator on every 1- and 2-qubit stabilizer state, and the exact
// T|+> distribution.

void a6(std::string& note) {
    // Collect one preparation circuit per distinct stabilizer state.
    std::map<std::string, Circuit> states;
    const auto& table1 = OneQubitCliffordTable::instance();
    for (size_t i = 0; i < table1.size(); i++) {
        Circuit c(1);
        c.append(table1.gate(i, 0));
        states.emplace(simulate_tableau(c).canonical_key(), c);
    }
    REQUIRE_MSG(states.size() == 6, "expected 6 single-qubit stabilizer states, got " << states.size());
    std::map<std::string, Circuit> states2;
    const auto& table2 = TwoQubitCliffordTable::instance();
    for (size_t i = 0; i < table2.size(); i++) {
        Circuit c(2);
        c.append(table2.gate(i, 0, 1));
        states2.emplace(simulate_tableau(c).canonical_key(), c);
    }
    REQUIRE_MSG(states2.size() == 60, "expected 60 two-qubit stabilizer states, got " << states2.size());
    states.insert(states2.begin(), states2.end());

    for (const auto& [key, circuit] : states) {
        BellSampleSet set = bell_sample_clifford(circuit, NoiseSpec::noiseless(), 256, 61000 + states.size());
        MagicEstimate m = magic_estimate(set);
        REQUIRE_MSG(m.t_hat == 0, "stabilizer state reported t_hat " << m.t_hat);
        MagicEstimate ma = magic_estimate(set, DifferenceMode::AllPairs);
        REQUIRE_MSG(ma.t_hat == 0, "stabilizer state reported all-pairs t_hat " << ma.t_hat);
    }

    // T|+>: exact distribution {I: 1/4, X: 1/2, Z: 1/4}, matched by sampling.
    Circuit tp(1);
    tp.append(Gate::single(GateKind::H, 0));
    tp.append(Gate::single(GateKind::T, 0));
    auto probs = bell_distribution_exact(tp);
    REQUIRE_MSG(std::abs(probs[0] - 0.25) < 1e-12 && std::abs(probs[1] - 0.25) < 1e-12 &&
                    std::abs(probs[2] - 0.5) < 1e-12 && probs[3] < 1e-12,
                "T|+> Bell distribution is not {1/4, 1/4, 1/2, 0}");
    StateVec psi = simulate_state(tp);
    BellSampleSet set = bell_sample_dense(psi, psi, 10000, 62000);
    std::map<uint64_t, size_t> counts;
    for (const auto& r : set.samples) {
        counts[index_from_sample(r)]++;
    }
    REQUIRE_MSG(counts.find(3) == counts.end(), "Y outcome sampled from T|+>");
    double chi2 = 0;
    for (uint64_t idx = 0; idx < 3; idx++) {
        double expected = probs[idx] * set.size();
        double d = static_cast<double>(counts[idx]) - expected;
        chi2 += d * d / expected;
    }
    REQUIRE_MSG(chi2 < 13.816, "T|+> sampling chi-squared " << chi2 << " above the 2-dof 0.999 quantile");
    MagicEstimate mt = magic_estimate(set);
    REQUIRE_MSG(mt.t_hat == 1, "T|+> t_hat " << mt.t_hat << " != 1");
    note = "66 stabilizer states at t_hat=0; T|+> t_hat=1, chi2 = " + format_double(chi2);
}

// ---------------------------------------------------------------------------
// A7: depth-test soundness on 1D ring brickwork probes.

Circuit depth_probe(uint32_t d) {
    // Scrambling brickwork probes on 8 qubits. Depth 1 starts on the odd
    // bonds so a cut of the first-half window is crossed immediately; deeper
    // probes entangle every even bond and then swap across the window cuts,
    // saturating the entanglement bound.
    const uint32_t n = 8;
    Circuit c(n);
    std::vector<cplx> swap_m = {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    auto bell_gate = [&c](uint32_t a, uint32_t b) {
        c.append(Gate::single(GateKind::H, a));
        c.append(Gate::two(GateKind::CNOT, a, b));
    };
    if (d == 1) {
        bell_gate(1, 2);
        bell_gate(3, 4);
        bell_gate(5, 6);
        c.append(Gate::two(GateKind::ISWAP, 7, 0));
        c.mark_layer();
        return c;
    }
    bell_gate(0, 1);
    bell_gate(2, 3);
    bell_gate(4, 5);
    bell_gate(6, 7);
    c.mark_layer();
    c.append(Gate::unitary2(3, 4, swap_m));
    c.append(Gate::unitary2(7, 0, swap_m));
    c.append(Gate::two(GateKind::ISWAP, 1, 2));
    c.append(Gate::two(GateKind::ISWAP, 5, 6));
    c.mark_layer();
    for (uint32_t layer = 3; layer <= d; layer++) {
        uint32_t start = (layer + 1) % 2;
        for (uint32_t b = 0; b < n / 2; b++) {
            uint32_t a = (start + 2 * b) % n;
            c.append(Gate::two(GateKind::ISWAP, a, (a + 1) % n));
            c.append(Gate::single(GateKind::SqrtX, a));
            c.append(Gate::single(GateKind::SqrtX, (a + 1) % n));
        }
        c.mark_layer();
    }
    return c;
}

void a7(std::string& note) {
    const uint32_t n = 8;
    const std::vector<uint32_t> window = {0, 1, 2, 3};
    Architecture ring = Architecture::chain(true);
    std::string rates;
    for (uint32_t d = 1; d <= 4; d++) {
        Circuit probe = depth_probe(d);
        REQUIRE_MSG(probe.layers.size() == d, "probe depth mismatch");
        uint32_t s_true = exact_subsystem_renyi2(probe, window);
        REQUIRE_MSG(s_true <= max_entanglement_bound(ring, n, window, d),
                    "probe entanglement exceeds the architecture bound");
        CliffordBellSampler sampler(probe, NoiseSpec::noiseless());
        size_t exact_hits = 0;
        for (uint64_t trial = 0; trial < 500; trial++) {
            BellSampleSet set = sampler.sample_set(100000, 71000 + 1000 * d + trial);
            EstimateWithError purity = subsystem_purity(set, window);
            DepthBoundResult r = depth_test_max(set, ring, 3 * purity.std_error);
            REQUIRE_MSG(r.d_lower <= d, "d_lower " << r.d_lower << " overclaims true depth " << d);
            exact_hits += r.d_lower == d ? 1 : 0;
        }
        if (d <= 2) {
            REQUIRE_MSG(exact_hits >= 400, "d=" << d << ": d_lower = d in only " << exact_hits << "/500 trials");
        }
        rates += (rates.empty() ? "" : "/") + std::to_string(exact_hits);
    }
    note = "d_lower <= d in 2000/2000 trials; d_lower = d in " + rates + " of 500 at d = 1/2/3/4";
}

// ---------------------------------------------------------------------------
// A8: error detection. Noiseless rejection is exactly zero; white-noise
// rejection rates match the exact model; post-selection halves the
// effective noise rate.

void a8(std::string& note) {
    const uint32_t n = 6;
    Circuit c = random_all_to_all_clifford(n, 4, 81234);
    CliffordBellSampler sampler(c, NoiseSpec::noiseless());
    BellSampleSet clean = sampler.sample_set(100000, 1);
    REQUIRE_MSG(error_detect_filter(clean).rejection_rate == 0.0, "noiseless rejection rate nonzero");

    auto p_c = bell_distribution_exact(c);
    const size_t cells = p_c.size();
    auto noisy_table = [&](double eta) {
        double pe = 2 * eta * (1 - eta) + eta * eta;
        std::vector<double> t(cells);
        for (size_t i = 0; i < cells; i++) {
            t[i] = (1 - eta) * (1 - eta) * p_c[i] + pe / static_cast<double>(cells);
        }
        return t;
    };
    auto odd_mass = [&](const std::vector<double>& t) {
        double mass = 0;
        for (size_t i = 0; i < cells; i++) {
            if (y_parity(sample_from_index(n, i))) {
                mass += t[i];
            }
        }
        return mass;
    };
    std::string fits;
    for (double eta : {0.02, 0.05, 0.1}) {
        auto table = noisy_table(eta);
        double exact_rejection = odd_mass(table);
        const size_t shots = 100000;
        auto idxs = sample_from_table(table, shots, 81500 + static_cast<uint64_t>(eta * 1000));
        size_t odd = 0;
        for (size_t idx : idxs) {
            odd += y_parity(sample_from_index(n, idx));
        }
        double measured = static_cast<double>(odd) / shots;
        double sigma = std::sqrt(exact_rejection * (1 - exact_rejection) / shots);
        REQUIRE_MSG(std::abs(measured - exact_rejection) <= 3 * sigma,
                    "eta=" << eta << ": rejection " << measured << " vs exact " << exact_rejection);

        // Post-selected distribution: TVD-fit the effective white-noise rate.
        std::vector<double> post(cells, 0.0);
        double keep = 1 - exact_rejection;
        for (size_t i = 0; i < cells; i++) {
            if (!y_parity(sample_from_index(n, i))) {
                post[i] = table[i] / keep;
            }
        }
        double best_eta = 0, best_tvd = 1e9;
        for (int g = 0; g <= 600; g++) {
            double cand = eta * 1.2 * g / 600.0;
            auto model = noisy_table(cand);
            double tvd = 0;
            for (size_t i = 0; i < cells; i++) {
                tvd += std::abs(model[i] - post[i]);
            }
            tvd /= 2;
            if (tvd < best_tvd) {
                best_tvd = tvd;
                best_eta = cand;
            }
        }
        REQUIRE_MSG(std::abs(best_eta - eta / 2) <= 0.2 * (eta / 2),
                    "eta=" << eta << ": TVD-fit effective rate " << best_eta << " not within 20% of " << eta / 2);
        fits += (fits.empty() ? "" : "/") + format_double(best_eta);
    }
    note = "rejection rates match the exact white-noise model; fitted rates " + fits + " ~ eta/2";
}

// ---------------------------------------------------------------------------
// A9: the noise translation lemma.

void a9(std::string& note) {
    // Superoperator identity on 1000 random channels.
    Rng rng(91);
    auto dense_1q = [](int k) {
        PauliVec p(1);
        p.set_x(0, k == 1 || k == 2);
        p.set_z(0, k == 2 || k == 3);
        return dense_pauli(p);
    };
    Eigen::MatrixXcd swap_m = Eigen::MatrixXcd::Zero(4, 4);
    swap_m(0, 0) = swap_m(3, 3) = swap_m(1, 2) = swap_m(2, 1) = 1;
    auto kron2 = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        Eigen::MatrixXcd out(4, 4);
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
            }
        }
        return out;
    };
    double worst = 0;
    for (int trial = 0; trial < 1000; trial++) {
        PauliChannel p;
        double total = 0;
        for (int i = 0; i < 4; i++) {
            p.p[i] = rng.uniform();
            total += p.p[i];
        }
        for (int i = 0; i < 4; i++) {
            p.p[i] /= total;
        }
        PauliChannel q = purity_to_fidelity_channel(p);
        Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(4, 4), rhs = Eigen::MatrixXcd::Zero(4, 4);
        Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                Eigen::MatrixXcd k = kron2(dense_1q(i), dense_1q(j));
                lhs += p.p[i] * p.p[j] * k * swap_m * k;
            }
            Eigen::MatrixXcd k = kron2(dense_1q(i), id);
            rhs += q.p[i] * k * swap_m * k;
        }
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    REQUIRE_MSG(worst <= 1e-12, "superoperator mismatch " << worst);

    // Ensemble identity: E_C purity(p) = E_C fidelity(q) at n=4, depth 6.
    PauliChannel p = PauliChannel::xyz(0.02, 0.01, 0.015);
    PauliChannel q = purity_to_fidelity_channel(p);
    const size_t circuits = 500;
    std::vector<double> diffs;
    double mean_p = 0, mean_f = 0;
    for (size_t i = 0; i < circuits; i++) {
        Circuit c = random_all_to_all_clifford(4, 6, 92000 + i);
        double purity = exact_purity(evolve_density(c, attach_noise(c, p)));
        double fidelity = exact_fidelity(evolve_density(c, attach_noise(c, q)), c);
        diffs.push_back(purity - fidelity);
        mean_p += purity;
        mean_f += fidelity;
    }
    mean_p /= circuits;
    mean_f /= circuits;
    double mean_d = mean_p - mean_f, var = 0;
    for (double d : diffs) {
        var += (d - mean_d) * (d - mean_d);
    }
    double sem = std::sqrt(var / (circuits - 1.0) / circuits);
    // For Clifford circuits with Pauli noise the identity holds exactly per
    // circuit, so the Monte-Carlo sem collapses to roundoff; keep a floating
    // point floor under the 3-sigma band.
    REQUIRE_MSG(std::abs(mean_d) <= std::max(3 * sem, 1e-12),
                "E[P(p)] - E[F(q)] = " << mean_d << " exceeds 3 sem = " << 3 * sem);
    note = "superop identity to " + format_double(worst) + "; ensemble gap " + format_double(mean_d) + " (3 sem " +
           format_double(3 * sem) + ")";
}

// ---------------------------------------------------------------------------
// A10: the ancilla gadget estimates p1 from Bell samples.

void a10(std::string& note) {
    double worst_sigmas = 0;
    for (uint64_t trial = 0; trial < 20; trial++) {
        Circuit base = clifford_plus_t_random(3, 2, 1, 101000 + trial);
        double p1 = one_probability(simulate_state(base), 0);
        Circuit gadget = bqp_gadget(base);
        StateVec psi = simulate_state(gadget);
        BellSampleSet samples = bell_sample_dense(psi, psi, 100000, 102000 + trial);
        PauliVec x0(gadget.n);
        x0.set_x(0, true);
        EstimateWithError sq = pauli_sq_expectation(samples, x0);
        double target = p1 * p1;
        double sigma = std::sqrt(std::max(1e-12, (1 - target * target) / static_cast<double>(sq.M_used)));
        REQUIRE_MSG(std::abs(sq.value - target) <= 3 * sigma,
                    "trial " << trial << ": <X0>^2 = " << sq.value << " vs p1^2 = " << target);
        worst_sigmas = std::max(worst_sigmas, std::abs(sq.value - target) / sigma);
    }
    note = "20 circuits, worst deviation " + format_double(worst_sigmas) + " sigma";
}

// ---------------------------------------------------------------------------
// A11: virtual distillation cools a thermal transverse-field Ising state.

void a11(std::string& note) {
    const uint32_t n = 6;
    const double g = 2.0;
    const uint64_t dim = uint64_t{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint32_t i = 0; i + 1 < n; i++) {
        PauliVec zz(n);
        zz.set_z(i, true);
        zz.set_z(i + 1, true);
        h -= dense_pauli(zz);
    }
    for (uint32_t i = 0; i < n; i++) {
        PauliVec x(n);
        x.set_x(i, true);
        h -= g * dense_pauli(x);
    }
    StateVec e0 = ground_state(n, h);

    std::vector<PauliVec> observables;
    {
        PauliVec zz(n);
        zz.set_z(2, true);
        zz.set_z(3, true);
        observables.push_back(zz);
        PauliVec x(n);
        x.set_x(2, true);
        observables.push_back(x);
    }
    auto ratio_exact = [&](const DensityMatrix& rho, const PauliVec& p) {
        Eigen::MatrixXcd pm = dense_pauli(p);
        double num = (pm * rho.m * pm * rho.m).trace().real();
        double den = (rho.m * rho.m).trace().real();
        return num / den;
    };
    auto ratio_bell = [&](const DensityMatrix& rho, const PauliVec& p) {
        auto probs = bell_distribution_mixed(rho, rho);
        int base = y_parity(p);
        double num = 0, den = 0;
        for (uint64_t idx = 0; idx < probs.size(); idx++) {
            PauliVec r = sample_from_index(n, idx);
            int parity = y_parity(r);
            num += probs[idx] * (((base ^ symplectic_product(p, r) ^ parity) & 1) ? -1.0 : 1.0);
            den += probs[idx] * (parity ? -1.0 : 1.0);
        }
        return num / den;
    };

    const double beta1 = 0.5, beta2 = 1.0;
    DensityMatrix rho1 = thermal_state(n, h, beta1);
    DensityMatrix rho2 = thermal_state(n, h, beta2);
    std::string factors;
    for (const auto& p : observables) {
        double target = pauli_expectation(e0, p);
        target *= target;
        double r1 = ratio_exact(rho1, p), r2 = ratio_exact(rho2, p);
        // The Bell-sample estimator reproduces the two-copy trace formula.
        REQUIRE_MSG(std::abs(ratio_bell(rho1, p) - r1) <= 1e-9, "bell estimator disagrees with the trace formula");
        double bias1 = std::abs(r1 - target), bias2 = std::abs(r2 - target);
        REQUIRE_MSG(bias1 > 1e-6, "bias already vanishes at beta noise floor; test ill-posed");
        REQUIRE_MSG(bias1 >= 3 * bias2,
                    "doubling beta reduced the bias only " << bias1 / bias2 << "x for " << p.to_pauli_string());
        factors += (factors.empty() ? "" : "/") + format_double(bias1 / std::max(bias2, 1e-300));
    }
    note = "bias suppression factors " + factors + " (>= 3 required)";
}

// ---------------------------------------------------------------------------

struct Criterion {
    const char* id;
    const char* summary;
    void (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {"A1", "Bell-distribution support law", a1},
    {"A2", "First/second-moment anticoncentration", a2},
    {"A3", "Root-purity fidelity tracking", a3},
    {"A4", "Measurement-noise corrected fidelity", a4},
    {"A5", "Clifford+T learning", a5},
    {"A6", "Magic estimator soundness", a6},
    {"A7", "Depth-test soundness", a7},
    {"A8", "Error detection", a8},
    {"A9", "Noise-translation lemma", a9},
    {"A10", "BQP gadget", a10},
    {"A11", "Virtual distillation cooling", a11},
};

}  // namespace

int main(int argc, char** argv) {
    std::string only = argc > 1 ? argv[1] : "";
    int failures = 0;
    for (const auto& c : kCriteria) {
        if (!only.empty() && only != c.id) {
            continue;
        }
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            c.fn(detail);
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %-4s %-40s (%.1fs) %s\n", ok ? "PASS" : "FAIL", c.id, c.summary, secs, detail.c_str());
        std::fflush(stdout);
        failures += ok ? 0 : 1;
    }
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
