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

#include "bellsample/circuit.hpp"
#include "bellsample/noise.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bellsample {

/// Declarative experiment description; see presets/ for examples.
struct ExperimentConfig {
    std::string name = "experiment";

    // Circuit source: a generator with parameters, or a serialized file.
    std::string generator;  // all_to_all | crystalline | brickwork | clifford_t | file
    std::string circuit_file;
    uint32_t n = 0;
    uint32_t layers = 1;
    bool scrambling = false;
    uint32_t t_count = 0;

    // Noise: per-sweep-point channel.
    std::string noise_kind = "depolarizing";  // depolarizing | xyz | none
    std::array<double, 3> xyz_weights{{1, 1, 1}};
    bool measurement_noise = false;  // same channel on readout when true

    std::vector<double> sweep;  // error rates; one point when size 1
    std::string engine = "auto";
    size_t shots = 100000;
    size_t dfe_shots = 0;  // 0: same as shots
    size_t circuits_per_point = 1;
    uint64_t seed = 1;
    std::vector<std::string> estimators{"dfe", "root_purity"};
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& c);

struct ResultRow {
    std::string experiment;
    size_t point = 0;
    double point_value = 0;
    std::string estimator;
    double value = 0;
    double std_error = 0;
    size_t shots = 0;
    std::string flags;
    std::string error;  // nonempty when the point failed (sweep continues)
};

struct ExperimentResults {
    std::vector<ResultRow> rows;
    std::string to_csv() const;
    std::string to_json() const;
};

/// Runs every sweep point (worker pool over points; per-point RNG streams are
/// derived from (seed, point), so the worker count never changes results).
/// Engine-cap failures are recorded per point without aborting the sweep.
ExperimentResults run_experiment(const ExperimentConfig& config, size_t workers = 1);

}  // namespace bellsample
