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

#include "bellsample/dfe.hpp"
#include "bellsample/estimators.hpp"
#include "bellsample/experiment.hpp"
#include "bellsample/generators.hpp"
#include "bellsample/protocols.hpp"
#include "bellsample/statevector.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace bellsample;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << text;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
    } else {
        write_file(out_path, text);
    }
}

Circuit load_circuit(const std::string& path) {
    return parse_circuit(read_file(path));
}

NoiseSpec load_noise(const Circuit& c, const std::string& path) {
    if (path.empty()) {
        return NoiseSpec::noiseless();
    }
    auto j = nlohmann::json::parse(read_file(path));
    PauliChannel channel = j.contains("channel") ? parse_channel(j["channel"].dump()) : PauliChannel::identity();
    PauliChannel meas = j.contains("measurement") ? parse_channel(j["measurement"].dump()) : PauliChannel::identity();
    return attach_noise(c, channel, meas);
}

Architecture parse_arch(const std::string& name) {
    if (name == "chain-closed") {
        return Architecture::chain(true);
    }
    if (name == "chain-open") {
        return Architecture::chain(false);
    }
    if (name == "all-to-all") {
        return Architecture::all_to_all();
    }
    throw std::invalid_argument("unknown architecture: " + name);
}

std::string resolve_config(const std::string& name) {
    if (std::filesystem::exists(name)) {
        return name;
    }
    std::string preset = "presets/" + name + ".json";
    if (std::filesystem::exists(preset)) {
        return preset;
    }
    throw std::runtime_error("config not found: " + name);
}

nlohmann::json estimate_to_json(const std::string& name, const EstimateWithError& e) {
    nlohmann::json j;
    j["estimator"] = name;
    j["value"] = e.value;
    j["std_error"] = e.std_error;
    j["M"] = e.M_used;
    j["flags"] = flags_to_string(e.flags);
    return j;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Bell sampling toolkit: samplers, estimators and protocol drivers"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    auto* run = app.add_subcommand("run", "Run an experiment config or preset and emit CSV");
    std::string run_config, run_out;
    uint64_t run_seed = 0;
    size_t run_shots = 0, run_workers = 1;
    std::string run_engine;
    bool run_seed_set = false, run_shots_set = false;
    run->add_option("--config", run_config, "Config file path or preset name")->required();
    run->add_option("--seed", run_seed, "Override the config seed")->each([&](const std::string&) { run_seed_set = true; });
    run->add_option("--shots", run_shots, "Override shots per point")->each([&](const std::string&) { run_shots_set = true; });
    run->add_option("--out", run_out, "Output path (default stdout)");
    run->add_option("--engine", run_engine, "stab | sv | auto");
    run->add_option("--workers", run_workers, "Worker threads over sweep points");
    bool run_json = false;
    run->add_flag("--json", run_json, "Emit JSON records instead of CSV");
    run->callback([&] {
        ExperimentConfig config = parse_experiment_config(read_file(resolve_config(run_config)));
        if (run_seed_set) {
            config.seed = run_seed;
        }
        if (run_shots_set) {
            config.shots = run_shots;
        }
        if (!run_engine.empty()) {
            config.engine = run_engine;
        }
        ExperimentResults results = run_experiment(config, run_workers);
        emit(run_out, run_json ? results.to_json() : results.to_csv());
    });

    // --- gen-circuit --------------------------------------------------------
    auto* gen = app.add_subcommand("gen-circuit", "Emit a generator circuit as JSON");
    std::string gc_generator = "all_to_all", gc_out;
    uint32_t gc_n = 4, gc_layers = 1, gc_t = 0;
    bool gc_scrambling = false;
    uint64_t gc_seed = 1;
    gen->add_option("--generator", gc_generator, "all_to_all | crystalline | brickwork | clifford_t");
    gen->add_option("--n", gc_n, "Qubit count");
    gen->add_option("--layers", gc_layers, "Layers / depth / Clifford block depth");
    gen->add_option("--t", gc_t, "T-gate count (clifford_t)");
    gen->add_flag("--scrambling", gc_scrambling, "Crystalline scrambling variant");
    gen->add_option("--seed", gc_seed, "RNG seed");
    gen->add_option("--out", gc_out, "Output path (default stdout)");
    gen->callback([&] {
        Circuit c;
        if (gc_generator == "all_to_all") {
            c = random_all_to_all_clifford(gc_n, gc_layers, gc_seed);
        } else if (gc_generator == "crystalline") {
            c = crystalline_floquet(gc_n, gc_layers, gc_scrambling);
        } else if (gc_generator == "brickwork") {
            c = random_brickwork_clifford(gc_n, gc_layers, gc_seed);
        } else if (gc_generator == "clifford_t") {
            c = clifford_plus_t_random(gc_n, gc_t, gc_layers, gc_seed);
        } else {
            throw std::invalid_argument("unknown generator: " + gc_generator);
        }
        emit(gc_out, serialize(c));
    });

    // --- sample-bell --------------------------------------------------------
    auto* sample = app.add_subcommand("sample-bell", "Draw transversal Bell samples from two circuit copies");
    std::string sb_circuit, sb_noise, sb_out, sb_engine = "auto";
    size_t sb_shots = 1000;
    uint64_t sb_seed = 1;
    sample->add_option("--circuit", sb_circuit, "Circuit JSON file")->required();
    sample->add_option("--noise", sb_noise, "Noise config JSON file");
    sample->add_option("--shots", sb_shots, "Number of samples");
    sample->add_option("--seed", sb_seed, "RNG seed");
    sample->add_option("--engine", sb_engine, "stab | sv | auto");
    sample->add_option("--out", sb_out, "Output file (default stdout)");
    sample->callback([&] {
        Circuit c = load_circuit(sb_circuit);
        NoiseSpec noise = load_noise(c, sb_noise);
        BellSampleSet set;
        bool clifford = c.is_clifford();
        if (sb_engine == "stab" || (sb_engine == "auto" && clifford)) {
            set = bell_sample_clifford(c, noise, sb_shots, sb_seed);
        } else {
            if (noise.has_gate_noise() || noise.has_measurement_noise()) {
                throw UnsupportedGateError("statevector engine does not support noisy sampling");
            }
            StateVec psi = simulate_state(c);
            set = bell_sample_dense(psi, psi, sb_shots, sb_seed);
        }
        emit(sb_out, bell_samples_to_text(set));
    });

    // --- estimate ------------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "Apply an estimator to a Bell sample file");
    std::string es_samples, es_name, es_pauli, es_subsystem, es_out;
    size_t es_m = 0;
    est->add_option("--samples", es_samples, "Bell sample file")->required();
    est->add_option("--estimator", es_name, "overlap|purity|root-purity|corrected-fidelity|pauli-sq|subsystem-purity|virtual-distillation|error-detect")
        ->required();
    est->add_option("--pauli", es_pauli, "Pauli string (IXYZ or 2n bits)");
    est->add_option("--subsystem", es_subsystem, "Comma-separated qubit list");
    est->add_option("--m", es_m, "Two-qubit gate count (corrected-fidelity)");
    est->add_option("--out", es_out, "Output path (default stdout)");
    est->callback([&] {
        BellSampleSet samples = load_bell_samples(es_samples);
        nlohmann::json j;
        if (es_name == "overlap" || es_name == "purity") {
            j = estimate_to_json(es_name, overlap_estimate(samples));
        } else if (es_name == "root-purity") {
            j = estimate_to_json(es_name, root_purity_fidelity(samples));
        } else if (es_name == "corrected-fidelity") {
            j = estimate_to_json(es_name, corrected_fidelity(samples, es_m));
        } else if (es_name == "pauli-sq") {
            j = estimate_to_json(es_name, pauli_sq_expectation(samples, parse_pauli(es_pauli)));
        } else if (es_name == "virtual-distillation") {
            j = estimate_to_json(es_name, virtual_distillation(samples, parse_pauli(es_pauli)));
        } else if (es_name == "subsystem-purity") {
            std::vector<uint32_t> subsystem;
            std::stringstream ss(es_subsystem);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                subsystem.push_back(static_cast<uint32_t>(std::stoul(tok)));
            }
            j = estimate_to_json(es_name, subsystem_purity(samples, subsystem));
        } else if (es_name == "error-detect") {
            ErrorDetectResult r = error_detect_filter(samples);
            j["estimator"] = es_name;
            j["rejection_rate"] = r.rejection_rate;
            j["accepted"] = r.accepted.size();
            j["M"] = samples.size();
        } else {
            throw std::invalid_argument("unknown estimator: " + es_name);
        }
        emit(es_out, j.dump(2));
    });

    // --- depth-test ----------------------------------------------------------
    auto* depth = app.add_subcommand("depth-test", "Lower-bound circuit depth from Bell samples");
    std::vector<std::string> dt_samples;
    std::string dt_arch = "chain-closed", dt_table, dt_out;
    double dt_eps = 0;
    depth->add_option("--samples", dt_samples, "Bell sample file(s); several for the average test")->required();
    depth->add_option("--arch", dt_arch, "chain-closed | chain-open | all-to-all");
    depth->add_option("--epsilon", dt_eps, "Error tolerance (0: 3x the purity standard error)");
    depth->add_option("--page-table", dt_table, "Page-table JSON: run the average-entanglement test");
    depth->add_option("--out", dt_out, "Output path (default stdout)");
    depth->callback([&] {
        std::vector<BellSampleSet> sets;
        for (const auto& path : dt_samples) {
            sets.push_back(load_bell_samples(path));
        }
        double eps = dt_eps;
        if (eps <= 0) {
            std::vector<uint32_t> a(sets[0].n / 2);
            for (uint32_t i = 0; i < sets[0].n / 2; i++) {
                a[i] = i;
            }
            eps = 3 * subsystem_purity(sets[0], a).std_error;
        }
        DepthBoundResult r;
        if (!dt_table.empty()) {
            r = depth_test_avg(sets, parse_page_table(read_file(dt_table)), eps);
        } else {
            r = depth_test_max(sets[0], parse_arch(dt_arch), eps);
        }
        nlohmann::json j;
        j["d_lower"] = r.d_lower;
        j["entropy_estimate"] = r.entropy_estimate;
        j["epsilon"] = r.epsilon;
        j["subsystem"] = r.subsystem;
        emit(dt_out, j.dump(2));
    });

    // --- magic ----------------------------------------------------------------
    auto* magic = app.add_subcommand("magic", "Estimate the stabilizer nullity from Bell samples");
    std::string mg_samples, mg_out;
    bool mg_all_pairs = false;
    magic->add_option("--samples", mg_samples, "Bell sample file")->required();
    magic->add_flag("--all-pairs", mg_all_pairs, "Span all pairwise differences");
    magic->add_option("--out", mg_out, "Output path (default stdout)");
    magic->callback([&] {
        BellSampleSet samples = load_bell_samples(mg_samples);
        MagicEstimate m =
            magic_estimate(samples, mg_all_pairs ? DifferenceMode::AllPairs : DifferenceMode::DisjointPairs);
        nlohmann::json j;
        j["t_hat"] = m.t_hat;
        j["dim_g_prime"] = m.g_prime.dim();
        j["undersampled"] = m.undersampled;
        j["nullity_hat"] = m.nullity_hat;
        emit(mg_out, j.dump(2));
    });

    // --- learn-ct ---------------------------------------------------------------
    auto* learn = app.add_subcommand("learn-ct", "Learn a low-T-count state from Bell samples plus single copies");
    std::string lc_circuit, lc_out;
    double lc_eps = 0.05, lc_delta = 0.05;
    uint64_t lc_seed = 1;
    bool lc_fidelity = false;
    learn->add_option("--circuit", lc_circuit, "Circuit JSON preparing the state")->required();
    learn->add_option("--epsilon", lc_eps, "Error budget");
    learn->add_option("--delta", lc_delta, "Failure probability");
    learn->add_option("--seed", lc_seed, "RNG seed");
    learn->add_flag("--fidelity", lc_fidelity, "Also report reconstruction fidelity (statevector oracle)");
    learn->add_option("--out", lc_out, "Output path (default stdout)");
    learn->callback([&] {
        Circuit c = load_circuit(lc_circuit);
        StateVec psi = simulate_state(c);
        StateVecLearnSource source(psi);
        LearnedState learned = learn_clifford_t(source, lc_eps, lc_delta, lc_seed);
        nlohmann::json j = nlohmann::json::parse(learned_state_to_json(learned));
        if (lc_fidelity) {
            j["fidelity"] = state_fidelity(reconstruct_state(learned), psi);
        }
        emit(lc_out, j.dump(2));
    });

    // --- page-table ---------------------------------------------------------------
    auto* page = app.add_subcommand("page-table", "Average exact subsystem entropies into a page table");
    std::string pt_arch = "chain-closed", pt_gen = "brickwork", pt_out;
    uint32_t pt_n = 8;
    std::string pt_depths = "1,2,3,4";
    size_t pt_circuits = 200;
    uint64_t pt_seed = 1;
    page->add_option("--arch", pt_arch, "Architecture label stored in the table");
    page->add_option("--generator", pt_gen, "brickwork | crystalline | crystalline-scrambling | all-to-all");
    page->add_option("--n", pt_n, "Qubit count");
    page->add_option("--depths", pt_depths, "Comma-separated depth list");
    page->add_option("--circuits", pt_circuits, "Circuits averaged per depth");
    page->add_option("--seed", pt_seed, "RNG seed");
    page->add_option("--out", pt_out, "Output path (default stdout)");
    page->callback([&] {
        std::vector<uint32_t> depths;
        std::stringstream ss(pt_depths);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            depths.push_back(static_cast<uint32_t>(std::stoul(tok)));
        }
        auto make = [&](uint32_t d, uint64_t s) -> Circuit {
            if (pt_gen == "brickwork") {
                return random_brickwork_clifford(pt_n, d, s);
            }
            if (pt_gen == "crystalline") {
                return crystalline_floquet(pt_n, d, false);
            }
            if (pt_gen == "crystalline-scrambling") {
                return crystalline_floquet(pt_n, d, true);
            }
            if (pt_gen == "all-to-all") {
                return random_all_to_all_clifford(pt_n, d, s);
            }
            throw std::invalid_argument("unknown generator: " + pt_gen);
        };
        PageTable t = make_page_table(pt_arch, pt_n, depths, pt_circuits, pt_seed, make);
        emit(pt_out, page_table_to_json(t));
    });

    // --- gadget-p1 ---------------------------------------------------------------
    auto* gadget = app.add_subcommand("gadget-p1", "Estimate Pr[first qubit = 1] via the ancilla gadget");
    std::string gp_circuit, gp_out;
    size_t gp_shots = 100000;
    uint64_t gp_seed = 1;
    gadget->add_option("--circuit", gp_circuit, "Circuit JSON file")->required();
    gadget->add_option("--shots", gp_shots, "Bell samples from the gadget");
    gadget->add_option("--seed", gp_seed, "RNG seed");
    gadget->add_option("--out", gp_out, "Output path (default stdout)");
    gadget->callback([&] {
        Circuit c = load_circuit(gp_circuit);
        Circuit g = bqp_gadget(c);
        StateVec psi = simulate_state(g);
        BellSampleSet samples = bell_sample_dense(psi, psi, gp_shots, gp_seed);
        PauliVec x0(g.n);
        x0.set_x(0, true);
        EstimateWithError sq = pauli_sq_expectation(samples, x0);
        nlohmann::json j;
        j["p1"] = std::sqrt(std::max(0.0, sq.value));
        j["x0_squared"] = sq.value;
        j["std_error"] = sq.std_error;
        j["M"] = sq.M_used;
        emit(gp_out, j.dump(2));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = e.what();
        std::cerr << err.dump() << std::endl;
        return 1;
    }
}
