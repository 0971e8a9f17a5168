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

#include "bellsample/protocols.hpp"

#include "bellsample/density.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace bellsample {

// ---------------------------------------------------------------------------
// Depth tests.

uint32_t max_entanglement_bound(const Architecture& arch, uint32_t n, const std::vector<uint32_t>& subsystem,
                                uint32_t d) {
    uint32_t a = static_cast<uint32_t>(subsystem.size());
    if (a == 0 || a == n) {
        return 0;
    }
    uint32_t boundary = arch.boundary_edges(n, subsystem);
    uint64_t growth = static_cast<uint64_t>(boundary) * d;
    uint64_t cap = std::min<uint64_t>({a, n - a, n / 2});
    return static_cast<uint32_t>(std::min<uint64_t>(growth, cap));
}

namespace {

std::vector<uint32_t> first_half(uint32_t n) {
    std::vector<uint32_t> a(n / 2);
    for (uint32_t i = 0; i < n / 2; i++) {
        a[i] = i;
    }
    return a;
}

}  // namespace

DepthBoundResult depth_test_max(const BellSampleSet& samples, const Architecture& arch, double epsilon) {
    if (epsilon <= 0) {
        throw std::invalid_argument("depth_test_max: epsilon must be positive");
    }
    uint32_t n = samples.n;
    std::vector<uint32_t> a = first_half(n);
    EstimateWithError purity = subsystem_purity(samples, a);
    DepthBoundResult out;
    out.subsystem = a;
    out.epsilon = epsilon;
    out.entropy_estimate = -std::log2(purity.value + epsilon);
    if (out.entropy_estimate <= 0) {
        out.d_lower = 0;
        return out;
    }
    uint32_t ceiling = std::min<uint32_t>({static_cast<uint32_t>(a.size()), n - static_cast<uint32_t>(a.size()), n / 2});
    double target = std::min(out.entropy_estimate, static_cast<double>(ceiling));
    uint32_t d = 0;
    while (max_entanglement_bound(arch, n, a, d) < target) {
        d++;
    }
    out.d_lower = d;
    return out;
}

PageTable make_page_table(const std::string& arch_name, uint32_t n, const std::vector<uint32_t>& depths,
                          size_t circuits, uint64_t seed,
                          const std::function<Circuit(uint32_t depth, uint64_t seed)>& make_circuit) {
    PageTable t;
    t.arch = arch_name;
    t.n = n;
    std::vector<uint32_t> a = first_half(n);
    double prev = 0;
    for (uint32_t d : depths) {
        double purity_sum = 0;
        for (size_t c = 0; c < circuits; c++) {
            Circuit circ = make_circuit(d, derive_stream(seed, d * 1000003ull + c));
            purity_sum += std::ldexp(1.0, -static_cast<int>(exact_subsystem_renyi2(circ, a)));
        }
        // Clamp Monte-Carlo dips: the achievable average cannot decrease with
        // depth, and depth_test_avg requires a nondecreasing table.
        double value = std::max(prev, -std::log2(purity_sum / static_cast<double>(circuits)));
        t.values[d] = value;
        prev = value;
    }
    return t;
}

DepthBoundResult depth_test_avg(const std::vector<BellSampleSet>& per_circuit_samples, const PageTable& table,
                                double epsilon) {
    if (table.values.empty()) {
        throw std::invalid_argument("depth_test_avg: empty page table");
    }
    if (per_circuit_samples.empty()) {
        throw std::invalid_argument("depth_test_avg: need samples");
    }
    double prev = 0;
    for (const auto& [d, v] : table.values) {
        if (v < prev - 1e-9) {
            throw std::invalid_argument("depth_test_avg: page table must be nondecreasing in depth");
        }
        prev = std::max(prev, v);
    }
    uint32_t n = per_circuit_samples.front().n;
    std::vector<uint32_t> a = first_half(n);
    // Average the purity estimates over circuits first, then threshold.
    double purity_sum = 0;
    for (const auto& s : per_circuit_samples) {
        purity_sum += subsystem_purity(s, a).value;
    }
    double purity = purity_sum / static_cast<double>(per_circuit_samples.size());
    DepthBoundResult out;
    out.subsystem = a;
    out.epsilon = epsilon;
    out.entropy_estimate = -std::log2(purity + epsilon);
    out.d_lower = 0;
    if (out.entropy_estimate <= 0) {
        return out;
    }
    double max_t = 0;
    for (const auto& [d, v] : table.values) {
        max_t = std::max(max_t, v);
    }
    double target = std::min(out.entropy_estimate, max_t);
    for (const auto& [d, v] : table.values) {
        if (v >= target) {
            out.d_lower = d;
            return out;
        }
    }
    out.d_lower = table.values.rbegin()->first;
    return out;
}

std::string page_table_to_json(const PageTable& t) {
    nlohmann::json j;
    j["arch"] = t.arch;
    j["n"] = t.n;
    nlohmann::json vals = nlohmann::json::object();
    for (const auto& [d, v] : t.values) {
        vals[std::to_string(d)] = v;
    }
    j["values"] = std::move(vals);
    return j.dump();
}

PageTable parse_page_table(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    PageTable t;
    t.arch = j.value("arch", std::string{});
    t.n = j.at("n").get<uint32_t>();
    for (const auto& [key, val] : j.at("values").items()) {
        t.values[static_cast<uint32_t>(std::stoul(key))] = val.get<double>();
    }
    return t;
}

// ---------------------------------------------------------------------------
// Magic estimation.

MagicEstimate magic_estimate(const BellSampleSet& samples, DifferenceMode mode) {
    if (samples.size() < 2) {
        throw std::invalid_argument("magic_estimate: need at least 2 samples");
    }
    F2Subspace g(samples.n);
    const auto& b = samples.samples;
    if (mode == DifferenceMode::DisjointPairs) {
        for (size_t i = 0; i + 1 < b.size(); i += 2) {
            g.insert(b[i] ^ b[i + 1]);
        }
    } else {
        for (size_t i = 1; i < b.size(); i++) {
            g.insert(b[i] ^ b[0]);  // spans the same subspace as all pairs
        }
    }
    MagicEstimate out;
    out.g_prime = g;
    out.undersampled = g.dim() < samples.n;
    out.t_hat = g.dim() > samples.n ? g.dim() - samples.n : 0;
    uint32_t rad_dim = g.radical().dim();
    out.nullity_hat = samples.n > rad_dim ? samples.n - rad_dim : 0;
    return out;
}

// ---------------------------------------------------------------------------
// Clifford synthesis from commuting generators.

namespace {

struct LabelConjugator {
    // Phase-free conjugation rules applied to working labels as gates are
    // emitted; signs are free (the contract allows +-Z_i).
    static void apply(std::vector<PauliVec>& work, const Gate& g) {
        for (auto& v : work) {
            switch (g.kind) {
                case GateKind::H: {
                    uint32_t q = g.qubits[0];
                    bool x = v.get_x(q), z = v.get_z(q);
                    v.set_x(q, z);
                    v.set_z(q, x);
                    break;
                }
                case GateKind::S: {
                    uint32_t q = g.qubits[0];
                    v.set_z(q, v.get_z(q) ^ v.get_x(q));
                    break;
                }
                case GateKind::CNOT: {
                    uint32_t c = g.qubits[0], t = g.qubits[1];
                    v.set_x(t, v.get_x(t) ^ v.get_x(c));
                    v.set_z(c, v.get_z(c) ^ v.get_z(t));
                    break;
                }
                case GateKind::CZ: {
                    uint32_t a = g.qubits[0], b = g.qubits[1];
                    v.set_z(a, v.get_z(a) ^ v.get_x(b));
                    v.set_z(b, v.get_z(b) ^ v.get_x(a));
                    break;
                }
                default:
                    throw std::logic_error("synthesis conjugator: unsupported gate");
            }
        }
    }
};

}  // namespace

SignedPauli conjugate_pauli(const Tableau& t, const SignedPauli& p) {
    uint32_t n = t.num_qubits();
    SignedPauli acc(n);
    int extra_i = 0;
    for (uint32_t q = 0; q < n; q++) {
        bool x = p.v.get_x(q), z = p.v.get_z(q);
        if (x) {
            acc = acc * SignedPauli(t.destabilizer(q), t.destabilizer_sign(q) ? 2 : 0);
        }
        if (z) {
            acc = acc * SignedPauli(t.stabilizer(q), t.stabilizer_sign(q) ? 2 : 0);
        }
        if (x && z) {
            extra_i++;
        }
    }
    acc.phase = static_cast<uint8_t>((acc.phase + extra_i + p.phase) & 3);
    return acc;
}

Circuit clifford_from_isotropic(const std::vector<PauliVec>& generators, uint32_t n) {
    size_t k = generators.size();
    if (k > n) {
        throw std::invalid_argument("clifford_from_isotropic: too many generators");
    }
    F2Subspace independent(n);
    for (size_t i = 0; i < k; i++) {
        if (generators[i].n != n) {
            throw std::invalid_argument("clifford_from_isotropic: qubit count mismatch");
        }
        if (!independent.insert(generators[i])) {
            throw std::invalid_argument("clifford_from_isotropic: generators must be independent");
        }
        for (size_t j = 0; j < i; j++) {
            if (symplectic_product(generators[i], generators[j])) {
                throw std::invalid_argument("clifford_from_isotropic: generators must commute");
            }
        }
    }
    Circuit c(n);
    std::vector<PauliVec> work = generators;
    auto emit = [&](Gate g) {
        LabelConjugator::apply(work, g);
        c.append(std::move(g));
    };
    for (uint32_t i = 0; i < k; i++) {
        // Pivot: an x bit at position >= i, else convert a z bit with H.
        uint32_t q = n;
        for (uint32_t j = i; j < n && q == n; j++) {
            if (work[i].get_x(j)) {
                q = j;
            }
        }
        if (q == n) {
            for (uint32_t j = i; j < n && q == n; j++) {
                if (work[i].get_z(j)) {
                    q = j;
                }
            }
            if (q == n) {
                throw std::invalid_argument("clifford_from_isotropic: generator dependent on earlier ones");
            }
            emit(Gate::single(GateKind::H, q));
        }
        if (q != i) {
            emit(Gate::two(GateKind::CNOT, i, q));
            emit(Gate::two(GateKind::CNOT, q, i));
            emit(Gate::two(GateKind::CNOT, i, q));
        }
        for (uint32_t j = 0; j < n; j++) {
            if (j != i && work[i].get_x(j)) {
                emit(Gate::two(GateKind::CNOT, i, j));
            }
        }
        if (work[i].get_z(i)) {
            emit(Gate::single(GateKind::S, i));
        }
        for (uint32_t j = i + 1; j < n; j++) {
            if (work[i].get_z(j)) {
                emit(Gate::two(GateKind::CZ, i, j));
            }
        }
    }
    for (uint32_t i = 0; i < k; i++) {
        emit(Gate::single(GateKind::H, i));
    }
    // Self-check: conjugation through the tableau must land on +-Z_i.
    Tableau t = simulate_tableau(c);
    for (uint32_t i = 0; i < k; i++) {
        SignedPauli image = conjugate_pauli(t, SignedPauli(generators[i], 0));
        if (image.v != PauliVec::single(n, i, true, false)) {
            throw std::logic_error("clifford_from_isotropic: postcondition violated");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Learning.

StateVecLearnSource::StateVecLearnSource(StateVec psi) : psi_(std::move(psi)) {}

BellSampleSet StateVecLearnSource::bell_samples(size_t shots, uint64_t seed) {
    return bell_sample_dense(psi_, psi_, shots, seed);
}

void StateVecLearnSource::set_basis(const Circuit& u) {
    rotated_ = psi_;
    for (const auto& g : u.gates) {
        apply_gate(rotated_, g);
    }
    table_cache_.clear();
}

std::pair<uint64_t, int> StateVecLearnSource::measure_copy(const PauliVec& tail, Rng& rng) {
    if (rotated_.n != psi_.n) {
        throw std::logic_error("measure_copy: set_basis was not called");
    }
    auto key = std::make_pair(tail.z[0], tail.x[0]);
    auto it = table_cache_.find(key);
    if (it == table_cache_.end()) {
        // Rotate the tail Pauli's eigenbasis to computational: X -> H,
        // Y -> H Sdg, Z -> nothing; then the joint distribution is a table.
        StateVec v = rotated_;
        for (uint32_t q = 0; q < v.n; q++) {
            bool x = tail.get_x(q), z = tail.get_z(q);
            if (x && z) {
                apply_gate(v, Gate::single(GateKind::Sdg, q));
                apply_gate(v, Gate::single(GateKind::H, q));
            } else if (x) {
                apply_gate(v, Gate::single(GateKind::H, q));
            }
        }
        std::vector<double> cum(v.a.size());
        double acc = 0;
        for (int64_t i = 0; i < v.a.size(); i++) {
            acc += std::norm(v.a(i));
            cum[i] = acc;
        }
        it = table_cache_.emplace(key, std::move(cum)).first;
    }
    const auto& cum = it->second;
    double u = rng.uniform() * cum.back();
    uint64_t z = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
    uint64_t support = tail.z[0] | tail.x[0];
    int pm = (std::popcount(z & support) & 1) ? -1 : 1;
    return {z, pm};
}

std::string LearnedState::x_string() const {
    std::string s(n - t_hat, '0');
    for (uint32_t i = 0; i < n - t_hat; i++) {
        s[i] = ((x_bits >> i) & 1) ? '1' : '0';
    }
    return s;
}

LearnedState learn_clifford_t(LearnSource& source, double epsilon, double delta, uint64_t seed, uint32_t t_cap) {
    if (epsilon <= 0 || epsilon >= 1 || delta <= 0 || delta >= 1) {
        throw std::invalid_argument("learn_clifford_t: epsilon and delta must lie in (0, 1)");
    }
    uint32_t n = source.num_qubits();
    size_t bell_shots = static_cast<size_t>(std::ceil(2.0 * n * std::log(1.0 / delta) / epsilon));
    BellSampleSet bell = source.bell_samples(bell_shots, derive_stream(seed, 1));
    LearnedState out;
    out.n = n;
    out.magic = magic_estimate(bell);
    F2Subspace radical = out.magic.g_prime.radical();
    uint32_t r = radical.dim();
    uint32_t k = n - r;
    if (k > t_cap) {
        throw ResourceError("learn_clifford_t: estimated T-count above the tomography cap");
    }
    out.t_hat = k;
    out.clifford = clifford_from_isotropic(radical.basis(), n);
    source.set_basis(out.clifford);

    size_t copies = static_cast<size_t>(std::ceil(4.0 * std::ldexp(1.0, k) * std::log(1.0 / delta) /
                                                  (epsilon * epsilon)));
    size_t num_tails = (size_t{1} << (2 * k)) - 1;
    size_t per_tail = num_tails == 0 ? copies : (copies + num_tails - 1) / num_tails;

    struct TailData {
        PauliVec tail;
        std::vector<std::pair<uint64_t, int>> shots;
    };
    std::vector<TailData> tails;
    if (num_tails == 0) {
        tails.push_back(TailData{PauliVec(n), {}});
        per_tail = copies;
    } else {
        for (uint64_t label = 1; label < (uint64_t{1} << (2 * k)); label++) {
            PauliVec tail(n);
            tail.z[0] = ((label >> k) & ((uint64_t{1} << k) - 1)) << r;
            tail.x[0] = (label & ((uint64_t{1} << k) - 1)) << r;
            tails.push_back(TailData{tail, {}});
        }
    }
    Rng rng(derive_stream(seed, 2));
    const uint64_t x_mask = r >= 64 ? ~uint64_t{0} : (uint64_t{1} << r) - 1;
    std::unordered_map<uint64_t, size_t> x_counts;
    size_t total_shots = 0;
    for (auto& td : tails) {
        td.shots.reserve(per_tail);
        for (size_t s = 0; s < per_tail; s++) {
            auto [bits, pm] = source.measure_copy(td.tail, rng);
            td.shots.emplace_back(bits & x_mask, pm);
            x_counts[bits & x_mask]++;
            total_shots++;
        }
    }
    uint64_t x_major = 0;
    size_t best = 0;
    for (const auto& [x, count] : x_counts) {
        if (count > best) {
            best = count;
            x_major = x;
        }
    }
    if (2 * best < total_shots) {
        throw AmbiguousOutcomeError("learn_clifford_t: majority computational outcome below 50% frequency");
    }
    out.x_bits = x_major;

    if (k == 0) {
        out.phi = StateVec(0);
        return out;
    }
    // Linear-inversion tomography on the tail, projected to the closest pure
    // state (dominant eigenvector).
    const int64_t dim = int64_t{1} << k;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& td : tails) {
        long long acc = 0;
        size_t kept = 0;
        for (const auto& [x, pm] : td.shots) {
            if (x == x_major) {
                acc += pm;
                kept++;
            }
        }
        double mean = kept == 0 ? 0.0 : static_cast<double>(acc) / static_cast<double>(kept);
        PauliVec local(k);
        local.z[0] = td.tail.z[0] >> r;
        local.x[0] = td.tail.x[0] >> r;
        rho += mean * dense_pauli(local);
    }
    rho /= static_cast<double>(dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    int64_t argmax = 0;
    es.eigenvalues().maxCoeff(&argmax);
    StateVec phi(k);
    phi.a = es.eigenvectors().col(argmax);
    // Deterministic global phase: largest component real positive.
    int64_t big = 0;
    phi.a.cwiseAbs().maxCoeff(&big);
    cplx ph = phi.a(big) / std::abs(phi.a(big));
    phi.a /= ph;
    out.phi = std::move(phi);
    return out;
}

StateVec reconstruct_state(const LearnedState& l, uint32_t cap) {
    if (l.n > cap) {
        throw ResourceError("reconstruct_state: n above the statevector cap");
    }
    uint32_t r = l.n - l.t_hat;
    StateVec full(l.n);
    full.a.setZero();
    const int64_t tail_dim = int64_t{1} << l.t_hat;
    for (int64_t t = 0; t < tail_dim; t++) {
        full.a(static_cast<int64_t>(l.x_bits) | (t << r)) = l.t_hat == 0 ? 1.0 : l.phi.a(t);
    }
    Circuit inv = l.clifford.inverse();
    for (const auto& g : inv.gates) {
        apply_gate(full, g);
    }
    return full;
}

std::string learned_state_to_json(const LearnedState& l) {
    nlohmann::json j;
    j["clifford"] = nlohmann::json::parse(serialize(l.clifford));
    j["x"] = l.x_string();
    nlohmann::json phi = nlohmann::json::array();
    for (int64_t i = 0; i < l.phi.a.size(); i++) {
        phi.push_back({l.phi.a(i).real(), l.phi.a(i).imag()});
    }
    j["phi"] = std::move(phi);
    j["t_hat"] = l.t_hat;
    j["n"] = l.n;
    return j.dump();
}

LearnedState learned_state_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    LearnedState l;
    l.clifford = parse_circuit(j.at("clifford").dump());
    l.n = j.at("n").get<uint32_t>();
    l.t_hat = j.at("t_hat").get<uint32_t>();
    std::string x = j.at("x").get<std::string>();
    l.x_bits = 0;
    for (size_t i = 0; i < x.size(); i++) {
        if (x[i] == '1') {
            l.x_bits |= uint64_t{1} << i;
        }
    }
    l.phi = StateVec(l.t_hat);
    auto phi = j.at("phi");
    for (int64_t i = 0; i < l.phi.a.size(); i++) {
        l.phi.a(i) = cplx(phi.at(i).at(0).get<double>(), phi.at(i).at(1).get<double>());
    }
    return l;
}

}  // namespace bellsample
