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

#include "bellsample/circuit.hpp"

#include "bellsample/pauli.hpp"
#include "bellsample/tableau.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

namespace bellsample {

namespace {

constexpr cplx kI{0, 1};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<cplx> fixed_matrix(GateKind k) {
    switch (k) {
        case GateKind::H:
            return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case GateKind::S:
            return {1, 0, 0, kI};
        case GateKind::Sdg:
            return {1, 0, 0, -kI};
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -kI, kI, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::SqrtX:
            return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)};
        case GateKind::T:
            return {1, 0, 0, std::exp(kI * (std::numbers::pi / 4))};
        case GateKind::Tdg:
            return {1, 0, 0, std::exp(-kI * (std::numbers::pi / 4))};
        case GateKind::CNOT:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
        case GateKind::CZ:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
        case GateKind::ISWAP:
            return {1, 0, 0, 0, 0, 0, kI, 0, 0, kI, 0, 0, 0, 0, 0, 1};
        default:
            throw std::logic_error("fixed_matrix: not a fixed gate");
    }
}

std::vector<cplx> pauli_rot_matrix(const std::string& axis, double theta) {
    size_t k = axis.size();
    size_t dim = size_t{1} << k;
    // exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P.
    std::vector<cplx> m(dim * dim, 0);
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (size_t row = 0; row < dim; row++) {
        m[row * dim + row] += c;
        // P maps |row> -> phase |row ^ xmask>, first axis char is the high bit.
        size_t col = row;
        cplx phase = 1;
        for (size_t j = 0; j < k; j++) {
            size_t bit = size_t{1} << (k - 1 - j);
            bool b = row & bit;
            switch (axis[j]) {
                case 'I':
                    break;
                case 'X':
                    col ^= bit;
                    break;
                case 'Y':
                    col ^= bit;
                    phase *= b ? -kI : kI;
                    break;
                case 'Z':
                    phase *= b ? -1.0 : 1.0;
                    break;
                default:
                    throw std::invalid_argument("pauli_rot: invalid axis character");
            }
        }
        // Column `col` of P has entry phase at row... P|col'> convention: build
        // by acting on basis column: P_{row', col'} with row' = col' ^ xmask.
        m[col * dim + row] += -kI * s * phase;
    }
    return m;
}

void check_unitary(const std::vector<cplx>& m, size_t dim) {
    if (m.size() != dim * dim) {
        throw std::invalid_argument("unitary gate: wrong matrix size");
    }
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            cplx acc = 0;
            for (size_t k = 0; k < dim; k++) {
                acc += std::conj(m[k * dim + i]) * m[k * dim + j];
            }
            cplx want = i == j ? 1.0 : 0.0;
            if (std::abs(acc - want) > 1e-10) {
                throw std::invalid_argument("unitary gate: matrix is not unitary to 1e-10");
            }
        }
    }
}

}  // namespace

Gate Gate::unitary1(uint32_t q, std::vector<cplx> m) {
    check_unitary(m, 2);
    return Gate{GateKind::Unitary1, {q}, std::move(m), "", 0};
}

Gate Gate::unitary2(uint32_t a, uint32_t b, std::vector<cplx> m) {
    check_unitary(m, 4);
    return Gate{GateKind::Unitary2, {a, b}, std::move(m), "", 0};
}

Gate Gate::pauli_rot(std::vector<uint32_t> qs, std::string axis, double theta) {
    if (axis.size() != qs.size() || qs.empty()) {
        throw std::invalid_argument("pauli_rot: axis length must match qubit count");
    }
    return Gate{GateKind::PauliRot, std::move(qs), {}, std::move(axis), theta};
}

std::vector<cplx> Gate::to_matrix() const {
    switch (kind) {
        case GateKind::Unitary1:
        case GateKind::Unitary2:
            return matrix;
        case GateKind::PauliRot:
            return pauli_rot_matrix(axis, theta);
        default:
            return fixed_matrix(kind);
    }
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::SqrtX: return "SQRTX";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "TDG";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::ISWAP: return "ISWAP";
        case GateKind::Unitary1: return "U1";
        case GateKind::Unitary2: return "U2";
        case GateKind::PauliRot: return "PROT";
    }
    return "?";
}

void Circuit::append(Gate g) {
    uint32_t want = 1;
    switch (g.kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::ISWAP:
        case GateKind::Unitary2:
            want = 2;
            break;
        case GateKind::PauliRot:
            want = g.arity();
            break;
        default:
            break;
    }
    if (g.arity() != want) {
        throw std::invalid_argument("gate arity mismatch");
    }
    for (size_t i = 0; i < g.qubits.size(); i++) {
        if (g.qubits[i] >= n) {
            throw std::invalid_argument("gate qubit index out of range");
        }
        for (size_t j = i + 1; j < g.qubits.size(); j++) {
            if (g.qubits[i] == g.qubits[j]) {
                throw std::invalid_argument("gate qubit indices must be distinct");
            }
        }
    }
    gates.push_back(std::move(g));
}

size_t Circuit::two_qubit_gate_count() const {
    size_t m = 0;
    for (const auto& g : gates) {
        m += g.arity() == 2 ? 1 : 0;
    }
    return m;
}

bool Circuit::is_clifford() const {
    for (const auto& g : gates) {
        if (!clifford_action_of(g).has_value()) {
            return false;
        }
    }
    return true;
}

Circuit Circuit::inverse() const {
    Circuit inv(n);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const Gate& g = *it;
        switch (g.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
            case GateKind::CNOT:
            case GateKind::CZ:
                inv.gates.push_back(g);
                break;
            case GateKind::S:
                inv.gates.push_back(Gate::single(GateKind::Sdg, g.qubits[0]));
                break;
            case GateKind::Sdg:
                inv.gates.push_back(Gate::single(GateKind::S, g.qubits[0]));
                break;
            case GateKind::T:
                inv.gates.push_back(Gate::single(GateKind::Tdg, g.qubits[0]));
                break;
            case GateKind::Tdg:
                inv.gates.push_back(Gate::single(GateKind::T, g.qubits[0]));
                break;
            case GateKind::PauliRot:
                inv.gates.push_back(Gate::pauli_rot(g.qubits, g.axis, -g.theta));
                break;
            default: {
                // Adjoint of the matrix form.
                std::vector<cplx> m = g.to_matrix();
                size_t dim = g.arity() == 1 ? 2 : 4;
                std::vector<cplx> adj(m.size());
                for (size_t i = 0; i < dim; i++) {
                    for (size_t j = 0; j < dim; j++) {
                        adj[i * dim + j] = std::conj(m[j * dim + i]);
                    }
                }
                if (dim == 2) {
                    inv.gates.push_back(Gate::unitary1(g.qubits[0], std::move(adj)));
                } else {
                    inv.gates.push_back(Gate::unitary2(g.qubits[0], g.qubits[1], std::move(adj)));
                }
                break;
            }
        }
    }
    return inv;
}

void Circuit::validate() const {
    if (n > kMaxQubits / 2) {
        throw std::invalid_argument("circuit too wide for the bit-packed engines");
    }
    Circuit probe(n);
    for (const auto& g : gates) {
        probe.append(g);  // reuses the per-gate checks
        if (g.kind == GateKind::Unitary1) {
            check_unitary(g.matrix, 2);
        } else if (g.kind == GateKind::Unitary2) {
            check_unitary(g.matrix, 4);
        }
    }
    size_t prev = 0;
    for (size_t b : layers) {
        if (b < prev || b > gates.size()) {
            throw std::invalid_argument("layer boundaries must be monotone");
        }
        prev = b;
    }
}

// ---------------------------------------------------------------------------
// Serialization: {"n": int, "gates": [{"g": "H", "q": [0]}, ...], "layers": [...]}

std::string serialize(const Circuit& c) {
    nlohmann::json j;
    j["n"] = c.n;
    j["gates"] = nlohmann::json::array();
    for (const auto& g : c.gates) {
        nlohmann::json jg;
        jg["g"] = gate_name(g.kind);
        jg["q"] = g.qubits;
        if (g.kind == GateKind::Unitary1 || g.kind == GateKind::Unitary2) {
            nlohmann::json m = nlohmann::json::array();
            for (const auto& e : g.matrix) {
                m.push_back({e.real(), e.imag()});
            }
            jg["m"] = std::move(m);
        } else if (g.kind == GateKind::PauliRot) {
            jg["axis"] = g.axis;
            jg["theta"] = g.theta;
        }
        j["gates"].push_back(std::move(jg));
    }
    if (!c.layers.empty()) {
        j["layers"] = c.layers;
    }
    return j.dump();
}

namespace {

GateKind gate_kind_from_name(const std::string& s) {
    static const std::pair<const char*, GateKind> table[] = {
        {"H", GateKind::H},         {"S", GateKind::S},         {"SDG", GateKind::Sdg},
        {"X", GateKind::X},         {"Y", GateKind::Y},         {"Z", GateKind::Z},
        {"SQRTX", GateKind::SqrtX}, {"T", GateKind::T},         {"TDG", GateKind::Tdg},
        {"CNOT", GateKind::CNOT},   {"CZ", GateKind::CZ},       {"ISWAP", GateKind::ISWAP},
        {"U1", GateKind::Unitary1}, {"U2", GateKind::Unitary2}, {"PROT", GateKind::PauliRot},
    };
    for (const auto& [name, kind] : table) {
        if (s == name) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown gate name: " + s);
}

ParseError parse_error_at(const std::string& text, size_t byte, const std::string& what) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return ParseError(what, line, col);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error_at(text, e.byte, e.what());
    }
    try {
        Circuit c(j.at("n").get<uint32_t>());
        for (const auto& jg : j.value("gates", nlohmann::json::array())) {
            GateKind kind = gate_kind_from_name(jg.at("g").get<std::string>());
            std::vector<uint32_t> qs = jg.at("q").get<std::vector<uint32_t>>();
            if (kind == GateKind::Unitary1 || kind == GateKind::Unitary2) {
                std::vector<cplx> m;
                for (const auto& e : jg.at("m")) {
                    m.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
                }
                c.append(kind == GateKind::Unitary1 ? Gate::unitary1(qs.at(0), std::move(m))
                                                    : Gate::unitary2(qs.at(0), qs.at(1), std::move(m)));
            } else if (kind == GateKind::PauliRot) {
                c.append(Gate::pauli_rot(qs, jg.at("axis").get<std::string>(), jg.at("theta").get<double>()));
            } else {
                c.append(Gate{kind, qs, {}, "", 0});
            }
        }
        if (j.contains("layers")) {
            c.layers = j["layers"].get<std::vector<size_t>>();
        }
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

uint32_t Architecture::boundary_edges(uint32_t n, const std::vector<uint32_t>& subsystem) const {
    std::vector<bool> in(n, false);
    for (uint32_t q : subsystem) {
        if (q >= n) {
            throw std::invalid_argument("subsystem index out of range");
        }
        in[q] = true;
    }
    size_t a = subsystem.size();
    if (a == 0 || a == n) {
        return 0;
    }
    switch (kind) {
        case Kind::Chain1DOpen:
        case Kind::Chain1DClosed: {
            // Contiguity check: members must form one run (cyclically for the
            // closed chain).
            uint32_t runs = 0;
            for (uint32_t q = 0; q < n; q++) {
                uint32_t next = (q + 1) % n;
                if (kind == Kind::Chain1DOpen && next == 0) {
                    continue;
                }
                if (in[q] && !in[next]) {
                    runs++;
                }
            }
            if (kind == Kind::Chain1DOpen && in[n - 1]) {
                runs++;
            }
            if (runs != 1) {
                throw std::invalid_argument("chain subsystem must be contiguous");
            }
            uint32_t edges = 0;
            for (uint32_t q = 0; q < n; q++) {
                uint32_t next = (q + 1) % n;
                if (kind == Kind::Chain1DOpen && next == 0) {
                    continue;
                }
                edges += in[q] != in[next] ? 1 : 0;
            }
            return edges;
        }
        case Kind::AllToAll:
            return static_cast<uint32_t>(a * (n - a));
        case Kind::Grid2D: {
            if (rows * cols != n) {
                throw std::invalid_argument("grid dimensions do not match qubit count");
            }
            uint32_t edges = 0;
            for (uint32_t r = 0; r < rows; r++) {
                for (uint32_t c = 0; c < cols; c++) {
                    uint32_t q = r * cols + c;
                    if (c + 1 < cols && in[q] != in[q + 1]) {
                        edges++;
                    }
                    if (r + 1 < rows && in[q] != in[q + cols]) {
                        edges++;
                    }
                }
            }
            return edges;
        }
    }
    return 0;
}

}  // namespace bellsample
