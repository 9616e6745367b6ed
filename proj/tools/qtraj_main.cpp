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

// qtraj command-line runner.
//
//   qtraj run <config.json | preset:NAME> [--output-dir D] [--seed N]
//             [--ensemble N] [--threads N]
//   qtraj validate <config.json | preset:NAME>
//   qtraj presets list
//   qtraj presets show NAME
//
// Exit status: 0 success, 1 unexpected error, 2 config validation failure,
// 3 numerical invariant violation.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qtraj/errors.hpp"
#include "qtraj/experiment.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

qtraj::ExperimentConfig load(const std::string& source) {
  const std::string prefix = "preset:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string name = source.substr(prefix.size());
    const auto j = qtraj::find_preset(name);
    if (!j) throw qtraj::ConfigError(source, "no such preset");
    return qtraj::parse_config(*j);
  }
  return qtraj::load_config(source);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qtraj: a q-bit monitored by a stream of probe q-bits"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> ensemble;
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "config file or preset:NAME")
      ->required();
  run->add_option("--output-dir", output_dir, "override output_dir");
  run->add_option("--seed", seed, "override seed");
  run->add_option("--ensemble", ensemble, "override ensemble size");
  run->add_option("--threads", threads,
                  "worker threads for trajectories (0 = all cores)");

  auto* validate = app.add_subcommand("validate", "check a config and exit");
  validate->add_option("config", config_path, "config file or preset:NAME")
      ->required();

  auto* presets = app.add_subcommand("presets", "list or print presets");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "list preset names");
  std::string preset_name;
  auto* show = presets->add_subcommand("show", "print a preset config");
  show->add_option("name", preset_name)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& [name, j] : qtraj::presets()) {
        std::cout << name << "  (" << j["experiment"].get<std::string>()
                  << ")\n";
      }
      return 0;
    }
    if (*show) {
      const auto j = qtraj::find_preset(preset_name);
      if (!j) {
        std::cerr << "error: no preset named '" << preset_name << "'\n";
        return kExitConfig;
      }
      std::cout << j->dump(2) << '\n';
      return 0;
    }
    if (*validate) {
      const auto cfg = load(config_path);
      std::cout << "ok: " << qtraj::experiment_name(cfg.experiment) << '\n';
      return 0;
    }
    if (*run) {
      qtraj::ConfigOverrides o;
      if (output_dir) o.output_dir = *output_dir;
      o.seed = seed;
      o.ensemble = ensemble;
      const auto cfg = qtraj::apply_overrides(load(config_path), o);
      qtraj::run_experiment(cfg, threads).print(std::cout);
      return 0;
    }
  } catch (const qtraj::ConfigError& e) {
    std::cerr << "config error at " << e.what() << '\n';
    return kExitConfig;
  } catch (const qtraj::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qtraj::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
