// Copyright 2026 The qtraj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Declarative experiment configs and the runner behind the qtraj CLI.
//
// Config schema (JSON object; unknown keys are rejected):
//
//   experiment           "channel" | "lindblad" | "trajectories" |
//                        "randomness-pump" | "info-gain"      (required)
//   interaction          "sigma-z-x" | "cnot" | "swap" |
//                        {"hamiltonian": 4x4} | {"unitary": 4x4}
//                                                  (default "sigma-z-x")
//   epsilon              coupling, >= 0                        (default 0.1)
//   delta_t              probe spacing, > 0                    (default 1)
//   probe_prep           amplitude pair                        (default [1, 0])
//   probe_axis           unit 3-vector                         (default [0, 0, 1])
//   initial_state        amplitude pair | "maximally-mixed"    (default [1, 1])
//   steps                integer >= 0 (>= 1 for the pump)      (default 100)
//   ensemble             integer >= 1                          (default 1)
//   seed                 integer >= 0                          (default 0)
//   unraveling           "exact" | "jump" | "diffusion"        (default "exact")
//   output_dir           path                                  (default "qtraj-out")
//   snapshot_stride      integer >= 1                          (default 1)
//   integrator_substeps  RK4 steps per delta_t, >= 1           (default 20)
//   saved_trajectories   records written to trajectories.json  (default 16)
//
// Amplitudes are numbers or [re, im] pairs and are normalized on load.
// Matrices are arrays of rows, entries again numbers or [re, im] pairs.
// "cnot" and "swap" are fixed unitaries (epsilon is ignored); the
// "sigma-z-x" preset is H = sigma_z (x) sigma_x with U = exp(-i epsilon H).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qtraj/errors.hpp"
#include "qtraj/evolve.hpp"
#include "qtraj/measure.hpp"
#include "qtraj/state.hpp"

namespace qtraj {

// Config validation failure; `where` is a JSON pointer or "line:col".
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string where, const std::string& message)
      : ValidationError(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class ExperimentKind { channel, lindblad, trajectories, randomness_pump,
                            info_gain };

std::string_view experiment_name(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::channel;
  // Exactly one of these is set.
  std::optional<CMat> hamiltonian;
  std::optional<CMat> unitary;
  double epsilon = 0.1;
  double delta_t = 1.0;
  PureState probe_prep = ket0();
  BlochAxis probe_axis = BlochAxis::z();
  bool probe_axis_given = false;
  // nullopt = maximally mixed
  std::optional<PureState> initial_state;
  std::int64_t steps = 100;
  std::int64_t ensemble = 1;
  std::uint64_t seed = 0;
  Unraveling unraveling = Unraveling::exact;
  std::filesystem::path output_dir = "qtraj-out";
  std::int64_t snapshot_stride = 1;
  std::int64_t integrator_substeps = 20;
  std::int64_t saved_trajectories = 16;

  // Effective config with every default filled in; parsing it again yields
  // an identical config.
  nlohmann::json effective;

  // The interaction unitary (fixed, or exp(-i epsilon H)).
  CMat interaction_unitary() const;
  // Requires a Hamiltonian interaction.
  InteractionSpec interaction_spec() const;
  DensityMatrix initial_density() const;
};

// Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ConfigOverrides {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> ensemble;
};

// Applies CLI overrides on the JSON level and re-parses.
ExperimentConfig apply_overrides(const ExperimentConfig& cfg,
                                 const ConfigOverrides& o);

// Named configs covering the worked examples.
std::vector<std::pair<std::string, nlohmann::json>> presets();
std::optional<nlohmann::json> find_preset(const std::string& name);

// Interaction presets by name ("sigma-z-x", "cnot", "swap").
struct InteractionPreset {
  std::optional<CMat> hamiltonian;
  std::optional<CMat> unitary;
};
InteractionPreset interaction_preset(const std::string& name);

struct RunSummary {
  std::vector<std::pair<std::string, std::string>> lines;
  std::vector<std::filesystem::path> artifacts;

  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void print(std::ostream& os) const;
};

// Runs the experiment and writes its artifacts into cfg.output_dir
// (created if needed). All files are written after the computation.
RunSummary run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

}  // namespace qtraj
