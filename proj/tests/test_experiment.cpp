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

#include <doctest.h>

using namespace bellsample;

namespace {

const char* kTinyConfig = R"({
  "name": "tiny",
  "circuit": {"generator": "all_to_all", "n": 4, "layers": 4},
  "noise": {"kind": "depolarizing", "measurement": "none"},
  "sweep": [0.0, 0.02],
  "shots": 6000,
  "circuits_per_point": 2,
  "seed": 11,
  "estimators": ["dfe", "root_purity", "corrected_fidelity", "purity", "xeb"]
})";

}  // namespace

TEST_CASE("experiment config parsing") {
    ExperimentConfig c = parse_experiment_config(kTinyConfig);
    CHECK(c.name == "tiny");
    CHECK(c.generator == "all_to_all");
    CHECK(c.n == 4);
    CHECK(c.sweep == std::vector<double>{0.0, 0.02});
    CHECK(c.estimators.size() == 5);
    CHECK(!c.measurement_noise);
    // The seed is mandatory.
    CHECK_THROWS_AS(parse_experiment_config(R"({"circuit": {"generator": "all_to_all", "n": 4}})"),
                    std::invalid_argument);
    // Round trip through the emitter.
    ExperimentConfig back = parse_experiment_config(experiment_config_to_json(c));
    CHECK(back.n == c.n);
    CHECK(back.sweep == c.sweep);
    CHECK(back.seed == c.seed);
}

TEST_CASE("noiseless points report fidelity 1 and runs are deterministic") {
    ExperimentConfig c = parse_experiment_config(kTinyConfig);
    ExperimentResults results = run_experiment(c);
    ExperimentResults again = run_experiment(c);
    CHECK(results.to_csv() == again.to_csv());
    // ... regardless of the worker count.
    ExperimentResults parallel = run_experiment(c, 4);
    CHECK(results.to_csv() == parallel.to_csv());

    bool saw_noiseless_dfe = false, saw_noisy_dfe = false;
    for (const auto& row : results.rows) {
        CHECK(row.error.empty());
        if (row.point_value == 0.0 && (row.estimator == "dfe" || row.estimator == "root_purity" ||
                                       row.estimator == "corrected_fidelity")) {
            CHECK(std::abs(row.value - 1.0) <= 3 * row.std_error + 1e-9);
            saw_noiseless_dfe |= row.estimator == "dfe";
        }
        if (row.point_value == 0.02 && row.estimator == "dfe") {
            CHECK(row.value < 1.0);
            CHECK(row.value > 0.3);
            saw_noisy_dfe = true;
        }
    }
    CHECK(saw_noiseless_dfe);
    CHECK(saw_noisy_dfe);

    std::string csv = results.to_csv();
    CHECK(csv.rfind("experiment,point,estimator,value,std_error,M,flags\n", 0) == 0);
}

TEST_CASE("engine cap errors are recorded without aborting the sweep") {
    ExperimentConfig c = parse_experiment_config(kTinyConfig);
    c.generator = "clifford_t";
    c.t_count = 1;  // non-Clifford: auto engine picks the statevector path
    c.estimators = {"dfe"};
    ExperimentResults results = run_experiment(c);
    REQUIRE(!results.rows.empty());
    for (const auto& row : results.rows) {
        CHECK(!row.error.empty());
    }
}
