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

#include "bellsample/experiment.hpp"

#include "bellsample/bell_sampling.hpp"
#include "bellsample/dfe.hpp"
#include "bellsample/estimators.hpp"
#include "bellsample/generators.hpp"
#include "bellsample/statevector.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace bellsample {

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    ExperimentConfig c;
    c.name = j.value("name", c.name);
    const auto& jc = j.at("circuit");
    if (jc.contains("file")) {
        c.generator = "file";
        c.circuit_file = jc["file"].get<std::string>();
    } else {
        c.generator = jc.at("generator").get<std::string>();
        c.n = jc.value("n", 0u);
        c.layers = jc.value("layers", jc.value("depth", 1u));
        c.scrambling = jc.value("scrambling", false);
        c.t_count = jc.value("t", 0u);
    }
    if (j.contains("noise")) {
        const auto& jn = j["noise"];
        c.noise_kind = jn.value("kind", std::string("depolarizing"));
        if (jn.contains("weights")) {
            auto w = jn["weights"].get<std::vector<double>>();
            if (w.size() != 3) {
                throw std::invalid_argument("config: noise.weights must have 3 entries");
            }
            c.xyz_weights = {w[0], w[1], w[2]};
        }
        c.measurement_noise = jn.value("measurement", std::string("none")) == "same";
    } else {
        c.noise_kind = "none";
    }
    if (j.contains("sweep")) {
        c.sweep = j["sweep"].get<std::vector<double>>();
    } else {
        c.sweep = {j.value("error_rate", 0.0)};
    }
    c.engine = j.value("engine", std::string("auto"));
    c.shots = j.value("shots", size_t{100000});
    c.dfe_shots = j.value("dfe_shots", size_t{0});
    c.circuits_per_point = j.value("circuits_per_point", size_t{1});
    if (!j.contains("seed")) {
        throw std::invalid_argument("config: seed is mandatory for reproducibility");
    }
    c.seed = j["seed"].get<uint64_t>();
    if (j.contains("estimators")) {
        c.estimators = j["estimators"].get<std::vector<std::string>>();
    }
    return c;
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["name"] = c.name;
    if (c.generator == "file") {
        j["circuit"] = {{"file", c.circuit_file}};
    } else {
        j["circuit"] = {{"generator", c.generator}, {"n", c.n}, {"layers", c.layers},
                        {"scrambling", c.scrambling}, {"t", c.t_count}};
    }
    if (c.noise_kind != "none") {
        j["noise"] = {{"kind", c.noise_kind},
                      {"weights", std::vector<double>{c.xyz_weights[0], c.xyz_weights[1], c.xyz_weights[2]}},
                      {"measurement", c.measurement_noise ? "same" : "none"}};
    }
    j["sweep"] = c.sweep;
    j["engine"] = c.engine;
    j["shots"] = c.shots;
    j["dfe_shots"] = c.dfe_shots;
    j["circuits_per_point"] = c.circuits_per_point;
    j["seed"] = c.seed;
    j["estimators"] = c.estimators;
    return j.dump(2);
}

namespace {

Circuit build_circuit(const ExperimentConfig& c, uint64_t seed) {
    if (c.generator == "all_to_all") {
        return random_all_to_all_clifford(c.n, c.layers, seed);
    }
    if (c.generator == "crystalline") {
        return crystalline_floquet(c.n, c.layers, c.scrambling);
    }
    if (c.generator == "brickwork") {
        return random_brickwork_clifford(c.n, c.layers, seed);
    }
    if (c.generator == "clifford_t") {
        return clifford_plus_t_random(c.n, c.t_count, c.layers, seed);
    }
    if (c.generator == "file") {
        std::ifstream f(c.circuit_file);
        if (!f) {
            throw std::runtime_error("cannot open circuit file " + c.circuit_file);
        }
        std::stringstream buf;
        buf << f.rdbuf();
        return parse_circuit(buf.str());
    }
    throw std::invalid_argument("unknown circuit generator: " + c.generator);
}

PauliChannel channel_at(const ExperimentConfig& c, double rate) {
    if (c.noise_kind == "none" || rate == 0) {
        return PauliChannel::identity();
    }
    if (c.noise_kind == "depolarizing") {
        return depolarizing(rate);
    }
    if (c.noise_kind == "xyz") {
        return PauliChannel::xyz(rate * c.xyz_weights[0], rate * c.xyz_weights[1], rate * c.xyz_weights[2]);
    }
    throw std::invalid_argument("unknown noise kind: " + c.noise_kind);
}

struct PointAccumulator {
    double purity_sum = 0, purity_var = 0;
    double dfe_sum = 0, dfe_var = 0;
    double chi_sum = 0, chi_ideal_sum = 0, chi_var = 0;
    size_t circuits = 0;
    size_t bell_shots = 0, dfe_shots = 0, xeb_shots = 0;
    size_t m_two_qubit = 0;
    uint32_t n = 0;
};

void run_point(const ExperimentConfig& config, size_t point, double rate, std::vector<ResultRow>& rows) {
    PauliChannel channel = channel_at(config, rate);
    PauliChannel meas = config.measurement_noise ? channel : PauliChannel::identity();
    bool want_dfe = false, want_xeb = false;
    for (const auto& e : config.estimators) {
        want_dfe |= e == "dfe";
        want_xeb |= e == "xeb";
    }
    PointAccumulator acc;
    size_t per_circuit = std::max<size_t>(1, config.shots / config.circuits_per_point);
    size_t dfe_total = config.dfe_shots ? config.dfe_shots : config.shots;
    size_t dfe_per_circuit = std::max<size_t>(1, dfe_total / config.circuits_per_point);

    for (size_t ci = 0; ci < config.circuits_per_point; ci++) {
        uint64_t circuit_seed = derive_stream(config.seed, point * 1000003ull + ci);
        Circuit circuit = build_circuit(config, circuit_seed);
        acc.n = circuit.n;
        acc.m_two_qubit = circuit.two_qubit_gate_count();
        NoiseSpec noise = attach_noise(circuit, channel, meas);
        bool clifford = circuit.is_clifford();
        if (config.engine == "sv" || (config.engine == "auto" && !clifford)) {
            if (noise.has_gate_noise() || noise.has_measurement_noise()) {
                throw UnsupportedGateError("statevector engine does not support noisy sampling");
            }
            if (want_dfe || want_xeb) {
                throw UnsupportedGateError("dfe/xeb estimators need the stabilizer engine");
            }
            StateVec psi = simulate_state(circuit);
            BellSampleSet bell = bell_sample_dense(psi, psi, per_circuit, derive_stream(circuit_seed, 10));
            EstimateWithError p = overlap_estimate(bell);
            acc.purity_sum += p.value;
            acc.purity_var += p.std_error * p.std_error;
            acc.bell_shots += bell.size();
        } else {
            BellSampleSet bell = bell_sample_clifford(circuit, noise, per_circuit, derive_stream(circuit_seed, 10));
            EstimateWithError p = overlap_estimate(bell);
            acc.purity_sum += p.value;
            acc.purity_var += p.std_error * p.std_error;
            acc.bell_shots += bell.size();
            if (want_dfe) {
                Tableau target = simulate_tableau(circuit);
                TrajectoryPauliSource source(circuit, noise);
                EstimateWithError f = dfe_estimate(target, source, dfe_per_circuit, derive_stream(circuit_seed, 11));
                acc.dfe_sum += f.value;
                acc.dfe_var += f.std_error * f.std_error;
                acc.dfe_shots += f.M_used;
            }
            if (want_xeb) {
                CliffordComputationalSampler noisy(circuit, noise, /*measurement_noise=*/true);
                CliffordComputationalSampler ideal(circuit, NoiseSpec::noiseless());
                auto zs = noisy.sample_set(per_circuit, derive_stream(circuit_seed, 12));
                double collision = std::ldexp(1.0, -static_cast<int>(ideal.support_rank()));
                XebResult x = xeb(
                    zs, circuit.n, [&ideal](uint64_t v) { return ideal.ideal_prob(v); }, collision);
                acc.chi_sum += x.chi;
                acc.chi_ideal_sum += x.chi_ideal;
                acc.chi_var += x.chi_std_error * x.chi_std_error;
                acc.xeb_shots += zs.size();
            }
        }
        acc.circuits++;
    }

    double k = static_cast<double>(acc.circuits);
    double purity = acc.purity_sum / k;
    double purity_err = std::sqrt(acc.purity_var) / k;
    for (const auto& e : config.estimators) {
        ResultRow row;
        row.experiment = config.name;
        row.point = point;
        row.point_value = rate;
        row.estimator = e;
        if (e == "purity" || e == "overlap") {
            row.value = purity;
            row.std_error = purity_err;
            row.shots = acc.bell_shots;
        } else if (e == "root_purity") {
            double base = std::max(purity, std::ldexp(1.0, -2 * static_cast<int>(acc.n)));
            row.value = std::sqrt(base);
            row.std_error = purity_err / (2 * std::sqrt(base));
            row.shots = acc.bell_shots;
            if (base != purity) {
                row.flags = "clipped";
            }
        } else if (e == "corrected_fidelity") {
            double n = acc.n, m = static_cast<double>(acc.m_two_qubit);
            double expnt = m / (n * (2 * m / n + 2.0 / 3.0));
            double base = std::max(purity, std::ldexp(1.0, -2 * static_cast<int>(acc.n)));
            row.value = std::pow(base, expnt);
            row.std_error = expnt * std::pow(base, expnt - 1) * purity_err;
            row.shots = acc.bell_shots;
            if (base != purity) {
                row.flags = "clipped";
            }
        } else if (e == "dfe") {
            row.value = acc.dfe_sum / k;
            row.std_error = std::sqrt(acc.dfe_var) / k;
            row.shots = acc.dfe_shots;
        } else if (e == "xeb") {
            double chi_ideal = acc.chi_ideal_sum / k;
            if (std::abs(chi_ideal) < 1e-12) {
                row.flags = "undefined";
                row.shots = acc.xeb_shots;
            } else {
                row.value = (acc.chi_sum / k) / chi_ideal;
                row.std_error = (std::sqrt(acc.chi_var) / k) / std::abs(chi_ideal);
                row.shots = acc.xeb_shots;
            }
        } else {
            throw std::invalid_argument("unknown estimator: " + e);
        }
        rows.push_back(std::move(row));
    }
}

}  // namespace

ExperimentResults run_experiment(const ExperimentConfig& config, size_t workers) {
    size_t points = config.sweep.size();
    std::vector<std::vector<ResultRow>> per_point(points);
    auto work = [&](size_t p) {
        try {
            run_point(config, p, config.sweep[p], per_point[p]);
        } catch (const std::exception& e) {
            ResultRow row;
            row.experiment = config.name;
            row.point = p;
            row.point_value = config.sweep[p];
            row.estimator = "error";
            row.error = e.what();
            per_point[p] = {std::move(row)};
        }
    };
    if (workers <= 1 || points <= 1) {
        for (size_t p = 0; p < points; p++) {
            work(p);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (size_t w = 0; w < std::min(workers, points); w++) {
            pool.emplace_back([&] {
                for (size_t p = next.fetch_add(1); p < points; p = next.fetch_add(1)) {
                    work(p);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    ExperimentResults results;
    for (auto& rows : per_point) {
        for (auto& r : rows) {
            results.rows.push_back(std::move(r));
        }
    }
    return results;
}

std::string ExperimentResults::to_csv() const {
    std::ostringstream out;
    out << "experiment,point,estimator,value,std_error,M,flags\n";
    out.precision(12);
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            out << r.experiment << ',' << r.point_value << ",error,,,0,\"" << r.error << "\"\n";
            continue;
        }
        out << r.experiment << ',' << r.point_value << ',' << r.estimator << ',' << r.value << ',' << r.std_error
            << ',' << r.shots << ',' << r.flags << '\n';
    }
    return out.str();
}

std::string ExperimentResults::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["experiment"] = r.experiment;
        j["point"] = r.point_value;
        j["estimator"] = r.estimator;
        j["value"] = r.value;
        j["std_error"] = r.std_error;
        j["M"] = r.shots;
        j["flags"] = r.flags;
        if (!r.error.empty()) {
            j["error"] = r.error;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

}  // namespace bellsample
