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

#include "qtraj/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "qtraj/info.hpp"
#include "qtraj/io.hpp"

namespace qtraj {

using nlohmann::json;

std::string_view experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::channel:
      return "channel";
    case ExperimentKind::lindblad:
      return "lindblad";
    case ExperimentKind::trajectories:
      return "trajectories";
    case ExperimentKind::randomness_pump:
      return "randomness-pump";
    case ExperimentKind::info_gain:
      return "info-gain";
  }
  return "channel";
}

//------------------------------------------------------------------------
// Presets
//------------------------------------------------------------------------

InteractionPreset interaction_preset(const std::string& name) {
  if (name == "sigma-z-x") return {tensor_product(pauli_z(), pauli_x()), {}};
  if (name == "cnot") return {{}, gate_cnot()};
  if (name == "swap") return {{}, gate_swap()};
  throw ValidationError("unknown interaction preset '" + name +
                        "' (expected sigma-z-x, cnot or swap)");
}

std::vector<std::pair<std::string, json>> presets() {
  return {
      {"cnot-z-info",
       {{"experiment", "info-gain"},
        {"interaction", "cnot"},
        {"probe_prep", {1, 0}},
        {"probe_axis", {0, 0, 1}},
        {"initial_state", "maximally-mixed"},
        {"output_dir", "qtraj-out/cnot-z-info"}}},
      {"cnot-x-info",
       {{"experiment", "info-gain"},
        {"interaction", "cnot"},
        {"probe_prep", {1, 0}},
        {"probe_axis", {1, 0, 0}},
        {"initial_state", "maximally-mixed"},
        {"output_dir", "qtraj-out/cnot-x-info"}}},
      {"dephasing-channel",
       {{"experiment", "channel"},
        {"interaction", "sigma-z-x"},
        {"epsilon", 0.1},
        {"initial_state", {0.6, 0.8}},
        {"steps", 500},
        {"output_dir", "qtraj-out/dephasing-channel"}}},
      {"dephasing-lindblad",
       {{"experiment", "lindblad"},
        {"interaction", "sigma-z-x"},
        {"epsilon", 0.1},
        {"initial_state", {1, 1}},
        {"steps", 200},
        {"output_dir", "qtraj-out/dephasing-lindblad"}}},
      {"jump-trajectories",
       {{"experiment", "trajectories"},
        {"interaction", "sigma-z-x"},
        {"unraveling", "jump"},
        {"epsilon", 0.1},
        {"initial_state", {1, 1}},
        {"steps", 100},
        {"ensemble", 20000},
        {"seed", 1},
        {"output_dir", "qtraj-out/jump-trajectories"}}},
      {"diffusion-trajectories",
       {{"experiment", "trajectories"},
        {"interaction", "sigma-z-x"},
        {"unraveling", "diffusion"},
        {"probe_axis", {1, 0, 0}},
        {"epsilon", 0.1},
        {"initial_state", {1, 1}},
        {"steps", 100},
        {"ensemble", 20000},
        {"seed", 2},
        {"output_dir", "qtraj-out/diffusion-trajectories"}}},
      {"randomness-pump",
       {{"experiment", "randomness-pump"},
        {"steps", 1000},
        {"seed", 3},
        {"output_dir", "qtraj-out/randomness-pump"}}},
  };
}

std::optional<json> find_preset(const std::string& name) {
  for (auto& [n, j] : presets()) {
    if (n == name) return j;
  }
  return std::nullopt;
}

//------------------------------------------------------------------------
// Parsing
//------------------------------------------------------------------------

namespace {

const std::set<std::string> kKeys = {
    "experiment",    "interaction",       "epsilon",
    "delta_t",       "probe_prep",        "probe_axis",
    "initial_state", "steps",             "ensemble",
    "seed",          "unraveling",        "output_dir",
    "snapshot_stride", "integrator_substeps", "saved_trajectories"};

template <class F>
auto field(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ConfigError(where, e.what());
  } catch (const StructuralError& e) {
    throw ConfigError(where, e.what());
  } catch (const json::exception& e) {
    throw ConfigError(where, e.what());
  }
}

double get_real(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where, "must be finite");
  return v;
}

std::int64_t get_int(const json& j, const std::string& where,
                     std::int64_t min) {
  if (!j.is_number_integer()) throw ConfigError(where, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < min) {
    throw ConfigError(where, "must be >= " + std::to_string(min));
  }
  return v;
}

cplx get_complex(const json& j, const std::string& where) {
  if (j.is_number()) return get_real(j, where);
  if (j.is_array() && j.size() == 2) {
    return {get_real(j[0], where + "/0"), get_real(j[1], where + "/1")};
  }
  throw ConfigError(where, "expected a number or a [re, im] pair");
}

CMat get_matrix4(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) {
    throw ConfigError(where, "expected 4 rows");
  }
  CMat m(4);
  for (int r = 0; r < 4; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string rw = where + "/" + std::to_string(r);
    if (!row.is_array() || row.size() != 4) {
      throw ConfigError(rw, "expected 4 entries");
    }
    for (int c = 0; c < 4; ++c) {
      m(r, c) = get_complex(row[static_cast<std::size_t>(c)],
                            rw + "/" + std::to_string(c));
    }
  }
  return m;
}

PureState get_pure(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(where, "expected an amplitude pair");
  }
  const cplx a = get_complex(j[0], where + "/0");
  const cplx b = get_complex(j[1], where + "/1");
  return field(where, [&] { return PureState::normalize(CVec{a, b}); });
}

json defaults() {
  return {{"interaction", "sigma-z-x"},
          {"epsilon", 0.1},
          {"delta_t", 1.0},
          {"probe_prep", {1, 0}},
          {"probe_axis", {0, 0, 1}},
          {"initial_state", {1, 1}},
          {"steps", 100},
          {"ensemble", 1},
          {"seed", 0},
          {"unraveling", "exact"},
          {"output_dir", "qtraj-out"},
          {"snapshot_stride", 1},
          {"integrator_substeps", 20},
          {"saved_trajectories", 16}};
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("/", "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("/" + key, "unknown key");
  }
  if (!j.contains("experiment")) {
    throw ConfigError("/experiment", "required key is missing");
  }

  ExperimentConfig cfg;
  cfg.effective = j;
  const json defs = defaults();
  for (const auto& [key, value] : defs.items()) {
    if (!cfg.effective.contains(key)) cfg.effective[key] = value;
  }
  const json& e = cfg.effective;

  {
    const auto& v = e["experiment"];
    const std::string name = v.is_string() ? v.get<std::string>() : "";
    if (name == "channel") {
      cfg.experiment = ExperimentKind::channel;
    } else if (name == "lindblad") {
      cfg.experiment = ExperimentKind::lindblad;
    } else if (name == "trajectories") {
      cfg.experiment = ExperimentKind::trajectories;
    } else if (name == "randomness-pump") {
      cfg.experiment = ExperimentKind::randomness_pump;
    } else if (name == "info-gain") {
      cfg.experiment = ExperimentKind::info_gain;
    } else {
      throw ConfigError("/experiment",
                        "expected channel, lindblad, trajectories, "
                        "randomness-pump or info-gain");
    }
  }

  {
    const auto& v = e["interaction"];
    if (v.is_string()) {
      const auto p = field("/interaction", [&] {
        return interaction_preset(v.get<std::string>());
      });
      cfg.hamiltonian = p.hamiltonian;
      cfg.unitary = p.unitary;
    } else if (v.is_object() && v.size() == 1 && v.contains("hamiltonian")) {
      CMat h = get_matrix4(v["hamiltonian"], "/interaction/hamiltonian");
      if (!h.is_hermitian(kHermitianTol)) {
        throw ConfigError("/interaction/hamiltonian", "matrix is not Hermitian");
      }
      cfg.hamiltonian = h;
    } else if (v.is_object() && v.size() == 1 && v.contains("unitary")) {
      CMat u = get_matrix4(v["unitary"], "/interaction/unitary");
      if (!u.is_unitary(1e-10)) {
        throw ConfigError("/interaction/unitary", "matrix is not unitary");
      }
      cfg.unitary = u;
    } else {
      throw ConfigError("/interaction",
                        "expected a preset name or an object with exactly one "
                        "of \"hamiltonian\" / \"unitary\"");
    }
  }

  cfg.epsilon = get_real(e["epsilon"], "/epsilon");
  if (cfg.epsilon < 0.0) throw ConfigError("/epsilon", "must be >= 0");
  cfg.delta_t = get_real(e["delta_t"], "/delta_t");
  if (!(cfg.delta_t > 0.0)) throw ConfigError("/delta_t", "must be > 0");

  cfg.probe_prep = get_pure(e["probe_prep"], "/probe_prep");

  {
    const auto& v = e["probe_axis"];
    if (!v.is_array() || v.size() != 3) {
      throw ConfigError("/probe_axis", "expected a 3-vector");
    }
    const std::array<double, 3> n{get_real(v[0], "/probe_axis/0"),
                                  get_real(v[1], "/probe_axis/1"),
                                  get_real(v[2], "/probe_axis/2")};
    cfg.probe_axis = field("/probe_axis", [&] { return BlochAxis(n); });
    cfg.probe_axis_given = j.contains("probe_axis");
  }

  {
    const auto& v = e["initial_state"];
    if (v.is_string()) {
      if (v.get<std::string>() != "maximally-mixed") {
        throw ConfigError("/initial_state",
                          "expected an amplitude pair or \"maximally-mixed\"");
      }
      cfg.initial_state.reset();
    } else {
      cfg.initial_state = get_pure(v, "/initial_state");
    }
  }

  cfg.steps = get_int(e["steps"], "/steps", 0);
  cfg.ensemble = get_int(e["ensemble"], "/ensemble", 1);
  if (!e["seed"].is_number_unsigned() &&
      !(e["seed"].is_number_integer() && e["seed"].get<std::int64_t>() >= 0)) {
    throw ConfigError("/seed", "expected a non-negative integer");
  }
  cfg.seed = e["seed"].get<std::uint64_t>();
  {
    const auto& v = e["unraveling"];
    if (!v.is_string()) throw ConfigError("/unraveling", "expected a string");
    cfg.unraveling =
        field("/unraveling", [&] { return parse_unraveling(v.get<std::string>()); });
  }
  if (!e["output_dir"].is_string() ||
      e["output_dir"].get<std::string>().empty()) {
    throw ConfigError("/output_dir", "expected a non-empty path string");
  }
  cfg.output_dir = e["output_dir"].get<std::string>();
  cfg.snapshot_stride = get_int(e["snapshot_stride"], "/snapshot_stride", 1);
  cfg.integrator_substeps =
      get_int(e["integrator_substeps"], "/integrator_substeps", 1);
  cfg.saved_trajectories =
      get_int(e["saved_trajectories"], "/saved_trajectories", 0);

  // Cross-field rules.
  switch (cfg.experiment) {
    case ExperimentKind::lindblad:
      if (!cfg.hamiltonian) {
        throw ConfigError("/interaction",
                          "lindblad needs a Hamiltonian interaction");
      }
      break;
    case ExperimentKind::trajectories:
      if (!cfg.initial_state) {
        throw ConfigError("/initial_state",
                          "trajectories need a pure initial state");
      }
      if (cfg.unraveling != Unraveling::exact) {
        if (!cfg.hamiltonian) {
          throw ConfigError("/interaction",
                            "jump and diffusion unravelings need a "
                            "Hamiltonian interaction");
        }
        const BlochAxis want = cfg.unraveling == Unraveling::jump
                                   ? BlochAxis::z()
                                   : BlochAxis::x();
        if (cfg.probe_axis_given &&
            cfg.probe_axis.components() != want.components()) {
          throw ConfigError("/probe_axis",
                            std::string("the ") +
                                std::string(unraveling_name(cfg.unraveling)) +
                                " unraveling measures probes along " +
                                (cfg.unraveling == Unraveling::jump ? "z"
                                                                    : "x"));
        }
      }
      break;
    case ExperimentKind::randomness_pump:
      if (cfg.steps < 1) throw ConfigError("/steps", "must be >= 1");
      break;
    case ExperimentKind::channel:
    case ExperimentKind::info_gain:
      break;
  }
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:col.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(std::to_string(line) + ":" + std::to_string(col),
                      "JSON parse error");
  }
  return parse_config(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot read config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ExperimentConfig apply_overrides(const ExperimentConfig& cfg,
                                 const ConfigOverrides& o) {
  json j = cfg.effective;
  if (o.output_dir) j["output_dir"] = o.output_dir->string();
  if (o.seed) j["seed"] = *o.seed;
  if (o.ensemble) j["ensemble"] = *o.ensemble;
  return parse_config(j);
}

CMat ExperimentConfig::interaction_unitary() const {
  if (unitary) return *unitary;
  return weak_unitary(*hamiltonian, epsilon);
}

InteractionSpec ExperimentConfig::interaction_spec() const {
  if (!hamiltonian) {
    throw ConfigError("/interaction", "a Hamiltonian interaction is required");
  }
  InteractionSpec s;
  s.hamiltonian = *hamiltonian;
  s.epsilon = epsilon;
  s.delta_t = delta_t;
  s.probe_prep = probe_prep;
  s.validate();
  return s;
}

DensityMatrix ExperimentConfig::initial_density() const {
  return initial_state ? density_from_pure(*initial_state) : maximally_mixed(2);
}

//------------------------------------------------------------------------
// Summary
//------------------------------------------------------------------------

void RunSummary::add(std::string key, std::string value) {
  lines.emplace_back(std::move(key), std::move(value));
}

void RunSummary::add(std::string key, double value) {
  add(std::move(key), format_double(value));
}

void RunSummary::print(std::ostream& os) const {
  std::size_t width = 0;
  for (const auto& [k, v] : lines) width = std::max(width, k.size());
  for (const auto& [k, v] : lines) {
    os << k << ':' << std::string(width - k.size() + 1, ' ') << v << '\n';
  }
  for (const auto& p : artifacts) os << "wrote " << p.string() << '\n';
}

//------------------------------------------------------------------------
// Runner
//------------------------------------------------------------------------

namespace {

std::string matrix_string(const CMat& m) {
  std::string s = "[";
  for (int r = 0; r < m.dim(); ++r) {
    s += r ? ", [" : "[";
    for (int c = 0; c < m.dim(); ++c) {
      if (c) s += ", ";
      s += format_double(m(r, c).real());
      if (m(r, c).imag() != 0.0) {
        s += (m(r, c).imag() < 0 ? "-" : "+") +
             format_double(std::abs(m(r, c).imag())) + "i";
      }
    }
    s += "]";
  }
  return s + "]";
}

// Channel-step ledger entry for the transition rho_before -> rho_after.
InfoLedgerEntry channel_ledger(std::int64_t step, const DensityMatrix& before,
                               const DensityMatrix& after,
                               const KrausPair& kraus) {
  InfoLedgerEntry e;
  e.step = step;
  const auto p = outcome_probabilities(before, kraus);
  e.shannon_bits = shannon_entropy(std::clamp(p[0], 0.0, 1.0));
  e.info_gain_bits = info_gain(before, kraus);
  e.entanglement_bits = probe_entropy(before, kraus);
  e.vn_entropy_bits = von_neumann_entropy(after);
  return e;
}

double max_entry_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

// Integrates the derived master equation and samples it at t * delta_t.
std::vector<DensityMatrix> lindblad_at_probe_times(const ExperimentConfig& cfg,
                                                   double* trace_drift) {
  const InteractionSpec spec = cfg.interaction_spec();
  const LindbladParams params = derive_lindblad(spec);
  const double dt = cfg.delta_t / static_cast<double>(cfg.integrator_substeps);
  if (generator_norm(params) * dt >= 0.1) {
    throw ConfigError("/integrator_substeps",
                      "RK4 step too large for this generator; need at least " +
                          std::to_string(static_cast<std::int64_t>(std::ceil(
                              generator_norm(params) * cfg.delta_t / 0.1))) +
                          " substeps");
  }
  const LindbladSeries s = lindblad_integrate(
      cfg.initial_density(), params, dt,
      static_cast<double>(cfg.steps) * cfg.delta_t);
  if (trace_drift) *trace_drift = s.max_trace_drift;
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  for (std::int64_t t = 0; t <= cfg.steps; ++t) {
    out.push_back(s.states[static_cast<std::size_t>(t * cfg.integrator_substeps)]);
  }
  return out;
}

struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

template <class T>
std::vector<T> strided(const std::vector<T>& v, std::int64_t stride) {
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); i += static_cast<std::size_t>(stride)) {
    out.push_back(v[i]);
  }
  return out;
}

std::vector<double> probe_times(std::int64_t steps, double delta_t,
                                std::int64_t stride) {
  std::vector<double> t;
  for (std::int64_t k = 0; k <= steps; k += stride) {
    t.push_back(static_cast<double>(k) * delta_t);
  }
  return t;
}

void run_channel(const ExperimentConfig& cfg, RunSummary& sum, Artifacts& art) {
  const KrausPair kraus =
      kraus_from_probe(cfg.interaction_unitary(), cfg.probe_prep, cfg.probe_axis);
  const auto series = channel_evolve(cfg.initial_density(), kraus, cfg.steps);
  std::vector<InfoLedgerEntry> ledger;
  double total_gain = 0.0;
  for (std::int64_t t = 1; t <= cfg.steps; ++t) {
    const auto& before = series[static_cast<std::size_t>(t - 1)];
    const auto& after = series[static_cast<std::size_t>(t)];
    InfoLedgerEntry e = channel_ledger(t, before, after, kraus);
    total_gain += e.info_gain_bits;
    if (t % cfg.snapshot_stride == 0) ledger.push_back(e);
  }
  const auto shown = strided(series, cfg.snapshot_stride);
  art.add("series.csv",
          series_csv(probe_times(cfg.steps, cfg.delta_t, cfg.snapshot_stride),
                     shown));
  art.add("ledger.csv", ledger_csv(ledger));

  sum.add("steps", std::to_string(cfg.steps));
  sum.add("kraus_completeness_error", kraus.completeness_error());
  sum.add("final_vn_entropy_bits", von_neumann_entropy(series.back()));
  sum.add("final_rho", matrix_string(series.back().matrix()));
  sum.add("total_info_gain_bits", total_gain);
  if (cfg.hamiltonian) {
    double drift = 0.0;
    const auto lind = lindblad_at_probe_times(cfg, &drift);
    double dev = 0.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
      dev = std::max(dev, max_entry_distance(series[t], lind[t]));
    }
    sum.add("max_deviation_from_lindblad", dev);
  }
}

void run_lindblad(const ExperimentConfig& cfg, RunSummary& sum, Artifacts& art) {
  double drift = 0.0;
  const auto lind = lindblad_at_probe_times(cfg, &drift);
  const KrausPair kraus =
      kraus_from_probe(cfg.interaction_unitary(), cfg.probe_prep, cfg.probe_axis);
  const auto chan = channel_evolve(cfg.initial_density(), kraus, cfg.steps);
  double dev = 0.0;
  for (std::size_t t = 0; t < lind.size(); ++t) {
    dev = std::max(dev, max_entry_distance(lind[t], chan[t]));
  }
  art.add("series.csv",
          series_csv(probe_times(cfg.steps, cfg.delta_t, cfg.snapshot_stride),
                     strided(lind, cfg.snapshot_stride)));

  const LindbladParams params = derive_lindblad(cfg.interaction_spec());
  sum.add("h_eff", matrix_string(params.h_eff));
  sum.add("lindblad_op", matrix_string(params.lindblad_op));
  sum.add("final_vn_entropy_bits", von_neumann_entropy(lind.back()));
  sum.add("final_rho", matrix_string(lind.back().matrix()));
  sum.add("max_trace_drift", drift);
  sum.add("max_deviation_from_channel", dev);
}

void run_trajectories(const ExperimentConfig& cfg, unsigned threads,
                      RunSummary& sum, Artifacts& art) {
  EnsembleJob job;
  job.unraveling = cfg.unraveling;
  job.psi0 = *cfg.initial_state;
  if (cfg.hamiltonian) {
    job.spec = cfg.interaction_spec();
  } else {
    job.spec.delta_t = cfg.delta_t;
  }
  job.probe_axis = cfg.probe_axis;
  if (cfg.unitary) {
    job.exact_kraus =
        kraus_from_probe(*cfg.unitary, cfg.probe_prep, cfg.probe_axis);
  }
  job.steps = cfg.steps;
  job.n_trajectories = cfg.ensemble;
  job.master_seed = cfg.seed;
  job.options.snapshot_stride = cfg.snapshot_stride;
  job.options.delta_t = cfg.delta_t;

  const auto keep = static_cast<std::size_t>(
      std::max<std::int64_t>(1, std::min(cfg.saved_trajectories, cfg.ensemble)));
  const EnsembleRun run = run_ensemble(job, keep, threads);
  const EnsembleResult& r = run.result;

  // Oracle: the averaged channel with the same probe coupling.
  const KrausPair kraus =
      job.exact_kraus ? *job.exact_kraus
                      : kraus_from_probe(cfg.interaction_unitary(),
                                         cfg.probe_prep, cfg.probe_axis);
  const auto chan = channel_evolve(cfg.initial_density(), kraus, cfg.steps);
  double dev = 0.0, dev_se = 0.0;
  for (std::size_t s = 0; s < r.mean_rho.size(); ++s) {
    const auto t = static_cast<std::size_t>(s) *
                   static_cast<std::size_t>(cfg.snapshot_stride);
    const double d = max_entry_distance(r.mean_rho[s], chan[t]);
    dev = std::max(dev, d);
    if (r.stderr_max[s] > 0.0) dev_se = std::max(dev_se, d / r.stderr_max[s]);
  }

  art.add("series.csv", series_csv(r.times, r.mean_rho, r.stderr_max));
  art.add("ledger.csv", ledger_csv(run.kept.front().ledger));
  json trajs = json::array();
  for (std::size_t i = 0;
       i < run.kept.size() &&
       i < static_cast<std::size_t>(cfg.saved_trajectories);
       ++i) {
    trajs.push_back(record_to_json(run.kept[i]));
  }
  const json doc = {{"master_seed", cfg.seed},
                    {"n_trajectories", cfg.ensemble},
                    {"unraveling", std::string(unraveling_name(cfg.unraveling))},
                    {"trajectories", std::move(trajs)}};
  art.add("trajectories.json", doc.dump(1) + "\n");

  double gain = 0.0;
  for (const auto& e : run.kept.front().ledger) gain += e.info_gain_bits;
  sum.add("n_trajectories", std::to_string(r.n_trajectories));
  sum.add("unraveling", std::string(unraveling_name(cfg.unraveling)));
  const std::string count_key = cfg.unraveling == Unraveling::jump
                                    ? "mean_jump_count"
                                    : "mean_minus_outcomes";
  sum.add(count_key, r.mean_jump_count);
  sum.add(count_key + "_stderr",
          std::sqrt(r.jump_count_variance / static_cast<double>(r.n_trajectories)));
  sum.add("final_vn_entropy_bits", von_neumann_entropy(r.mean_rho.back()));
  sum.add("final_mean_rho", matrix_string(r.mean_rho.back().matrix()));
  sum.add("total_info_gain_bits", gain);
  sum.add("max_deviation_from_channel", dev);
  sum.add("max_deviation_in_stderr", dev_se);
}

void run_pump(const ExperimentConfig& cfg, RunSummary& sum, Artifacts& art) {
  const PumpRun run = randomness_pump(cfg.steps, cfg.seed);
  std::vector<DensityMatrix> rhos;
  std::vector<double> times;
  for (std::size_t k = 0; k < run.states.size();
       k += static_cast<std::size_t>(cfg.snapshot_stride)) {
    rhos.push_back(density_from_pure(run.states[k]));
    times.push_back(static_cast<double>(k) * cfg.delta_t);
  }
  art.add("series.csv", series_csv(times, rhos));
  art.add("ledger.csv", ledger_csv(run.ledger));

  std::string outcomes, axes;
  for (std::size_t k = 0; k < run.outcomes.size(); ++k) {
    outcomes.push_back(sign_char(run.outcomes[k]));
    axes.push_back(k % 2 == 0 ? 'z' : 'x');
  }
  json snaps = json::array();
  for (std::size_t k = 0; k < run.states.size();
       k += static_cast<std::size_t>(cfg.snapshot_stride)) {
    snaps.push_back({{"step", k},
                     {"time", static_cast<double>(k) * cfg.delta_t},
                     {"state", state_to_json(run.states[k])}});
  }
  json record = json::object();
  record["seed"] = cfg.seed;
  record["axes"] = axes;
  record["outcomes"] = outcomes;
  record["snapshots"] = std::move(snaps);
  json doc = json::object();
  doc["master_seed"] = cfg.seed;
  doc["n_trajectories"] = 1;
  doc["unraveling"] = "projective";
  doc["trajectories"] = json::array({std::move(record)});
  art.add("trajectories.json", doc.dump(1) + "\n");

  double shannon = 0.0, gain = 0.0;
  for (const auto& e : run.ledger) {
    shannon += e.shannon_bits;
    gain += e.info_gain_bits;
  }
  sum.add("steps", std::to_string(cfg.steps));
  sum.add("total_shannon_bits", shannon);
  sum.add("total_info_gain_bits", gain);
  sum.add("final_purity", density_from_pure(run.states.back()).purity());
  sum.add("final_vn_entropy_bits", run.ledger.back().vn_entropy_bits);
}

void run_info_gain(const ExperimentConfig& cfg, RunSummary& sum,
                   Artifacts& art) {
  const KrausPair kraus =
      kraus_from_probe(cfg.interaction_unitary(), cfg.probe_prep, cfg.probe_axis);
  const DensityMatrix rho = cfg.initial_density();
  const auto p = outcome_probabilities(rho, kraus);
  const DensityMatrix avg = channel_step(rho, kraus);

  InfoLedgerEntry e;
  e.step = 1;
  e.shannon_bits = shannon_entropy(std::clamp(p[0], 0.0, 1.0));
  e.info_gain_bits = info_gain(rho, kraus);
  e.entanglement_bits = probe_entropy(rho, kraus);
  // Mean entropy left in the system after reading the probe.
  e.vn_entropy_bits = von_neumann_entropy(rho) - e.info_gain_bits;
  art.add("ledger.csv", ledger_csv(std::vector<InfoLedgerEntry>{e}));
  art.add("series.csv",
          series_csv(std::vector<double>{0.0, cfg.delta_t},
                     std::vector<DensityMatrix>{rho, avg}));

  sum.add("a_plus", matrix_string(kraus.a_plus));
  sum.add("a_minus", matrix_string(kraus.a_minus));
  sum.add("kraus_completeness_error", kraus.completeness_error());
  sum.add("p_plus", p[0]);
  sum.add("p_minus", p[1]);
  sum.add("shannon_bits", e.shannon_bits);
  sum.add("info_gain_bits", e.info_gain_bits);
  for (Sign s : {Sign::plus, Sign::minus}) {
    const double pk = p[s == Sign::plus ? 0 : 1];
    const std::string key = std::string("post_state_") +
                            (s == Sign::plus ? "plus" : "minus");
    if (pk >= kDegenerateProbability) {
      sum.add(key, matrix_string(branch_state(rho, kraus, s).matrix()));
    } else {
      sum.add(key, "(outcome impossible)");
    }
  }
  sum.add("final_vn_entropy_bits", von_neumann_entropy(avg));
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  RunSummary sum;
  Artifacts art;
  sum.add("experiment", std::string(experiment_name(cfg.experiment)));
  switch (cfg.experiment) {
    case ExperimentKind::channel:
      run_channel(cfg, sum, art);
      break;
    case ExperimentKind::lindblad:
      run_lindblad(cfg, sum, art);
      break;
    case ExperimentKind::trajectories:
      run_trajectories(cfg, threads, sum, art);
      break;
    case ExperimentKind::randomness_pump:
      run_pump(cfg, sum, art);
      break;
    case ExperimentKind::info_gain:
      run_info_gain(cfg, sum, art);
      break;
  }
  art.add("config.echo.json", cfg.effective.dump(2) + "\n");

  std::filesystem::create_directories(cfg.output_dir);
  for (const auto& [name, content] : art.files) {
    const auto path = cfg.output_dir / name;
    write_file(path, content);
    sum.artifacts.push_back(path);
  }
  return sum;
}

}  // namespace qtraj
