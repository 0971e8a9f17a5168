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

#include "bellsample/bell_sampling.hpp"

#include <bit>
#include <fstream>
#include <sstream>

namespace bellsample {

namespace detail {

namespace {

using Bits = std::array<uint64_t, 2>;

bool bits_get(const Bits& b, uint32_t i) {
    return (b[i >> 6] >> (i & 63)) & 1;
}

void bits_flip(Bits& b, uint32_t i) {
    b[i >> 6] ^= uint64_t{1} << (i & 63);
}

void bits_xor(Bits& a, const Bits& b) {
    a[0] ^= b[0];
    a[1] ^= b[1];
}

bool bits_zero(const Bits& b) {
    return (b[0] | b[1]) == 0;
}

uint32_t bits_lowest(const Bits& b) {
    if (b[0]) {
        return std::countr_zero(b[0]);
    }
    return 64 + std::countr_zero(b[1]);
}

}  // namespace

CompiledCliffordProgram::CompiledCliffordProgram(uint32_t n, const std::vector<ProgramItem>& items)
    : n_(n), ideal_(n) {
    if (n > kMaxQubits) {
        throw ResourceError("compiled program exceeds the qubit cap");
    }
    // Compile gates into actions, assign channel slots, build the ideal tableau.
    for (const auto& item : items) {
        if (item.is_gate) {
            auto action = clifford_action_of(item.gate);
            if (!action) {
                throw UnsupportedGateError(std::string("non-Clifford gate in stabilizer engine: ") +
                                           gate_name(item.gate.kind));
            }
            steps_.push_back(CompiledStep{*action, item.gate.qubits});
            ideal_.apply(*action, item.gate.qubits);
        } else {
            if (item.channel.is_identity()) {
                continue;
            }
            uint32_t slot = static_cast<uint32_t>(channels_.size());
            for (uint32_t i = 0; i < channels_.size(); i++) {
                if (channels_[i].p == item.channel.p) {
                    slot = i;
                    break;
                }
            }
            if (slot == channels_.size()) {
                channels_.push_back(item.channel);
            }
            NoiseSite site;
            site.qubit = item.qubit;
            site.channel = slot;
            site.step_marker = steps_.size();
            sites_.push_back(site);
        }
    }

    // Affine outcome space of measuring every qubit of the ideal state:
    // signed elimination of the x parts leaves the pure-Z subgroup, whose
    // sign bits pin the outcome constraints z.o = s.
    std::vector<SignedPauli> work;
    for (uint32_t i = 0; i < n_; i++) {
        work.push_back(ideal_.stabilizer_signed(i));
    }
    for (uint32_t col = 0; col < n_; col++) {
        size_t piv = work.size();
        for (size_t i = 0; i < work.size(); i++) {
            if (work[i].v.get_x(col)) {
                piv = i;
                break;
            }
        }
        if (piv == work.size()) {
            continue;
        }
        SignedPauli pivot = work[piv];
        work.erase(work.begin() + piv);
        for (auto& row : work) {
            if (row.v.get_x(col)) {
                row = pivot * row;
            }
        }
    }
    struct Eq {
        Bits mask;
        uint8_t rhs;
        uint32_t pivot;
    };
    std::vector<Eq> eqs;
    for (const auto& g : work) {
        Eq e{g.v.z, static_cast<uint8_t>(g.phase == 2), 0};
        for (const auto& prior : eqs) {
            if (bits_get(e.mask, prior.pivot)) {
                bits_xor(e.mask, prior.mask);
                e.rhs ^= prior.rhs;
            }
        }
        if (bits_zero(e.mask)) {
            if (e.rhs) {
                throw std::logic_error("outcome space: inconsistent sign constraints");
            }
            continue;
        }
        e.pivot = bits_lowest(e.mask);
        for (auto& prior : eqs) {
            if (bits_get(prior.mask, e.pivot)) {
                bits_xor(prior.mask, e.mask);
                prior.rhs ^= e.rhs;
            }
        }
        eqs.push_back(e);
    }
    particular_ = Bits{{0, 0}};
    std::vector<bool> is_pivot(n_, false);
    for (const auto& e : eqs) {
        is_pivot[e.pivot] = true;
        if (e.rhs) {
            bits_flip(particular_, e.pivot);
        }
    }
    for (uint32_t f = 0; f < n_; f++) {
        if (is_pivot[f]) {
            continue;
        }
        Bits v{{0, 0}};
        bits_flip(v, f);
        for (const auto& e : eqs) {
            if (bits_get(e.mask, f)) {
                bits_flip(v, e.pivot);
            }
        }
        kernel_.push_back(v);
        kernel_free_bit_.push_back(f);
    }
    rank_ = static_cast<uint32_t>(kernel_.size());

    // Backward pass: propagate each noise site's X and Z injections to the
    // end of the circuit. Only the x part of the propagated label can flip a
    // computational outcome; the full label is kept for trajectory consumers.
    std::vector<PauliVec> img_x(n_), img_z(n_);
    for (uint32_t q = 0; q < n_; q++) {
        img_x[q] = PauliVec::single(n_, q, false, true);
        img_z[q] = PauliVec::single(n_, q, true, false);
    }
    size_t site_idx = sites_.size();
    for (size_t step = steps_.size(); step-- > 0;) {
        while (site_idx > 0 && sites_[site_idx - 1].step_marker > step) {
            NoiseSite& s = sites_[--site_idx];
            s.full_x = img_x[s.qubit];
            s.full_z = img_z[s.qubit];
            s.end_x = s.full_x.x;
            s.end_z = s.full_z.x;
        }
        const CompiledStep& st = steps_[step];
        uint32_t arity = st.action.arity;
        PauliVec nx[2], nz[2];
        for (uint32_t j = 0; j < arity; j++) {
            auto combine = [&](CliffordAction::Entry e) {
                PauliVec acc(n_);
                for (uint32_t b = 0; b < arity; b++) {
                    if ((e.x >> b) & 1) {
                        acc.xor_with(img_x[st.qubits[b]]);
                    }
                    if ((e.z >> b) & 1) {
                        acc.xor_with(img_z[st.qubits[b]]);
                    }
                }
                return acc;
            };
            nx[j] = combine(st.action.image_x(j));
            nz[j] = combine(st.action.image_z(j));
        }
        for (uint32_t j = 0; j < arity; j++) {
            img_x[st.qubits[j]] = nx[j];
            img_z[st.qubits[j]] = nz[j];
        }
    }
    while (site_idx > 0) {
        NoiseSite& s = sites_[--site_idx];
        s.full_x = img_x[s.qubit];
        s.full_z = img_z[s.qubit];
        s.end_x = s.full_x.x;
        s.end_z = s.full_z.x;
    }
}

std::array<uint64_t, 2> CompiledCliffordProgram::sample_outcome(Rng& rng) const {
    Bits out = particular_;
    for (const auto& site : sites_) {
        switch (channels_[site.channel].sample(rng)) {
            case 0:
                break;
            case 1:
                bits_xor(out, site.end_x);
                break;
            case 2:
                bits_xor(out, site.end_x);
                bits_xor(out, site.end_z);
                break;
            case 3:
                bits_xor(out, site.end_z);
                break;
        }
    }
    uint64_t r0 = rng.next_u64();
    uint64_t r1 = rank_ > 64 ? rng.next_u64() : 0;
    for (uint32_t i = 0; i < rank_; i++) {
        if ((i < 64 ? (r0 >> i) : (r1 >> (i - 64))) & 1) {
            bits_xor(out, kernel_[i]);
        }
    }
    return out;
}

PauliVec CompiledCliffordProgram::sample_end_pauli(Rng& rng) const {
    PauliVec e(n_);
    for (const auto& site : sites_) {
        switch (channels_[site.channel].sample(rng)) {
            case 0:
                break;
            case 1:
                e.xor_with(site.full_x);
                break;
            case 2:
                e.xor_with(site.full_x);
                e.xor_with(site.full_z);
                break;
            case 3:
                e.xor_with(site.full_z);
                break;
        }
    }
    return e;
}

bool CompiledCliffordProgram::in_support(const std::array<uint64_t, 2>& outcome) const {
    Bits v = outcome;
    bits_xor(v, particular_);
    for (uint32_t i = 0; i < rank_; i++) {
        if (bits_get(v, kernel_free_bit_[i])) {
            bits_xor(v, kernel_[i]);
        }
    }
    return bits_zero(v);
}

}  // namespace detail

// ---------------------------------------------------------------------------

namespace {

void push_gate(std::vector<detail::ProgramItem>& items, const Gate& g) {
    items.push_back(detail::ProgramItem{true, g, 0, PauliChannel::identity()});
}

void push_site(std::vector<detail::ProgramItem>& items, uint32_t q, const PauliChannel& ch) {
    items.push_back(detail::ProgramItem{false, Gate{}, q, ch});
}

}  // namespace

CliffordBellSampler::CliffordBellSampler(const Circuit& c, const NoiseSpec& noise)
    : n_(c.n), circuit_(c), program_(build_program(c, noise)) {}

detail::CompiledCliffordProgram CliffordBellSampler::build_program(const Circuit& c, const NoiseSpec& noise) {
    if (c.n > kMaxQubits / 2) {
        throw ResourceError("bell sampler: circuit too wide");
    }
    uint32_t n = c.n;
    std::vector<detail::ProgramItem> items;
    for (uint32_t copy = 0; copy < 2; copy++) {
        for (const auto& g : c.gates) {
            Gate shifted = g;
            for (auto& q : shifted.qubits) {
                q += copy * n;
            }
            push_gate(items, shifted);
            if (g.arity() == 2 && noise.has_gate_noise()) {
                push_site(items, shifted.qubits[0], noise.gate_channel);
                push_site(items, shifted.qubits[1], noise.gate_channel);
            }
        }
    }
    for (uint32_t i = 0; i < n; i++) {
        push_gate(items, Gate::two(GateKind::CNOT, i, n + i));
    }
    // Measurement noise sits after the entangling layer of the Bell
    // measurement and before the Hadamard/computational readout.
    if (noise.has_measurement_noise()) {
        for (uint32_t q = 0; q < 2 * n; q++) {
            push_site(items, q, noise.measurement_channel);
        }
    }
    for (uint32_t i = 0; i < n; i++) {
        push_gate(items, Gate::single(GateKind::H, i));
    }
    return detail::CompiledCliffordProgram(2 * n, items);
}

PauliVec CliffordBellSampler::sample(Rng& rng) const {
    auto out = program_.sample_outcome(rng);
    PauliVec r(n_);
    // Measured bits 0..n-1 are the z part; n..2n-1 the x part.
    if (n_ == 64) {
        r.z[0] = out[0];
        r.x[0] = out[1];
    } else {
        uint64_t zmask = (uint64_t{1} << n_) - 1;
        r.z[0] = out[0] & zmask;
        r.x[0] = (out[0] >> n_) | (n_ > 0 && 2 * n_ > 64 ? out[1] << (64 - n_) : 0);
        r.x[0] &= zmask;
    }
    return r;
}

BellSampleSet CliffordBellSampler::sample_set(size_t shots, uint64_t seed) const {
    BellSampleSet set;
    set.n = n_;
    set.samples.reserve(shots);
    constexpr size_t kChunk = 4096;
    for (size_t start = 0, chunk = 0; start < shots; start += kChunk, chunk++) {
        Rng rng(derive_stream(seed, chunk));
        size_t stop = std::min(shots, start + kChunk);
        for (size_t i = start; i < stop; i++) {
            set.samples.push_back(sample(rng));
        }
    }
    return set;
}

AffineCoset CliffordBellSampler::noiseless_support() const {
    return bell_support_coset(simulate_tableau(circuit_));
}

BellSampleSet bell_sample_clifford(const Circuit& c, const NoiseSpec& noise, size_t shots, uint64_t seed) {
    return CliffordBellSampler(c, noise).sample_set(shots, seed);
}

CliffordComputationalSampler::CliffordComputationalSampler(const Circuit& c, const NoiseSpec& noise,
                                                           bool measurement_noise)
    : n_(c.n), program_(build_program(c, noise, measurement_noise)) {}

detail::CompiledCliffordProgram CliffordComputationalSampler::build_program(const Circuit& c, const NoiseSpec& noise,
                                                                            bool measurement_noise) {
    if (c.n > 64) {
        throw ResourceError("computational sampler: circuit too wide");
    }
    std::vector<detail::ProgramItem> items;
    for (const auto& g : c.gates) {
        push_gate(items, g);
        if (g.arity() == 2 && noise.has_gate_noise()) {
            push_site(items, g.qubits[0], noise.gate_channel);
            push_site(items, g.qubits[1], noise.gate_channel);
        }
    }
    if (measurement_noise && noise.has_measurement_noise()) {
        for (uint32_t q = 0; q < c.n; q++) {
            push_site(items, q, noise.measurement_channel);
        }
    }
    return detail::CompiledCliffordProgram(c.n, items);
}

uint64_t CliffordComputationalSampler::sample(Rng& rng) const {
    return program_.sample_outcome(rng)[0];
}

std::vector<uint64_t> CliffordComputationalSampler::sample_set(size_t shots, uint64_t seed) const {
    std::vector<uint64_t> out;
    out.reserve(shots);
    constexpr size_t kChunk = 4096;
    for (size_t start = 0, chunk = 0; start < shots; start += kChunk, chunk++) {
        Rng rng(derive_stream(seed, chunk));
        size_t stop = std::min(shots, start + kChunk);
        for (size_t i = start; i < stop; i++) {
            out.push_back(sample(rng));
        }
    }
    return out;
}

double CliffordComputationalSampler::ideal_prob(uint64_t outcome) const {
    return program_.ideal_prob({outcome, 0});
}

// ---------------------------------------------------------------------------
// File format.

std::string bell_samples_to_text(const BellSampleSet& s) {
    std::string out = "bellsamples v1 n=" + std::to_string(s.n) + " pairing=" + s.pairing + "\n";
    for (const auto& r : s.samples) {
        out += r.to_bit_string();
        out += '\n';
    }
    return out;
}

BellSampleSet bell_samples_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("bellsamples v1 n=", 0) != 0) {
        throw ParseError("expected 'bellsamples v1 n=<n> pairing=zx' header", 1, 1);
    }
    size_t pos = header.find("n=") + 2;
    size_t space = header.find(' ', pos);
    BellSampleSet set;
    set.n = static_cast<uint32_t>(std::stoul(header.substr(pos, space - pos)));
    size_t ppos = header.find("pairing=");
    set.pairing = ppos == std::string::npos ? "zx" : header.substr(ppos + 8);
    std::string line;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        if (line.size() != 2 * set.n) {
            throw ParseError("sample line must have 2n bits", line_no, 1);
        }
        set.samples.push_back(parse_pauli(line));
    }
    return set;
}

void save_bell_samples(const std::string& path, const BellSampleSet& s) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << bell_samples_to_text(s);
}

BellSampleSet load_bell_samples(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return bell_samples_from_text(buf.str());
}

}  // namespace bellsample
