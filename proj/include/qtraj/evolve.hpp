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

// Time evolution of one system q-bit under a stream of probe q-bits:
// the averaged channel, its weak-coupling Lindblad limit, and stochastic
// pure-state trajectories conditioned on probe measurement records.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtraj/info.hpp"
#include "qtraj/measure.hpp"
#include "qtraj/state.hpp"

namespace qtraj {

// One probe arrives every delta_t and interacts through
// U = exp(-i epsilon H).
struct InteractionSpec {
  CMat hamiltonian{4};
  double epsilon = 0.0;
  double delta_t = 1.0;
  PureState probe_prep = ket0();

  // Throws ValidationError on epsilon < 0, delta_t <= 0 or non-Hermitian H.
  void validate() const;
  CMat unitary() const;
  KrausPair kraus(const BlochAxis& probe_axis) const;
};

struct LindbladParams {
  CMat h_eff{2};
  CMat lindblad_op{2};
};

//------------------------------------------------------------------------
// Averaged evolution
//------------------------------------------------------------------------

// rho -> sum_k A_k rho A_k^dagger
DensityMatrix channel_step(const DensityMatrix& rho, const KrausPair& kraus);

// [rho0, rho1, ..., rho_steps]
std::vector<DensityMatrix> channel_evolve(const DensityMatrix& rho0,
                                          const KrausPair& kraus,
                                          std::int64_t steps);

// <bra|_p H |ket>_p as a system operator.
CMat probe_matrix_element(const CMat& h, const CVec& bra, const CVec& ket);

// (-conj(b), conj(a)) for |phi> = (a, b).
CVec orthogonal_complement(const CVec& phi);

// h_eff = (eps/dt) <phi0|H|phi0>, L = (eps/sqrt(dt)) <phi0_perp|H|phi0>.
LindbladParams derive_lindblad(const InteractionSpec& spec);

// Right-hand side of the master equation.
CMat lindblad_rhs(const CMat& rho, const LindbladParams& params);

// Bound on the generator norm used for step-size validation:
// 2 |H_eff| + 2 |L|^2 in the Frobenius norm.
double generator_norm(const LindbladParams& params);

struct LindbladSeries {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double max_trace_drift = 0.0;
};

// Fixed-step classical RK4. The step is shortened so that t_final is hit
// exactly; throws ValidationError if generator_norm * dt >= 0.1.
LindbladSeries lindblad_integrate(const DensityMatrix& rho0,
                                  const LindbladParams& params, double dt,
                                  double t_final);

//------------------------------------------------------------------------
// Trajectories
//------------------------------------------------------------------------

enum class Unraveling { exact, jump, diffusion };

std::string_view unraveling_name(Unraveling u);
Unraveling parse_unraveling(std::string_view name);

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  Unraveling unraveling = Unraveling::exact;
  // One entry per interaction step; for the jump unraveling '-' is a jump.
  std::vector<Sign> outcomes;
  // Snapshots every `stride` steps, starting with the initial state.
  std::vector<std::int64_t> snapshot_steps;
  std::vector<double> times;
  std::vector<PureState> states;
  std::vector<InfoLedgerEntry> ledger;
  std::int64_t jump_count = 0;
  std::int64_t renormalization_flags = 0;

  std::string outcome_string() const;
};

struct TrajectoryOptions {
  std::int64_t snapshot_stride = 1;
  // Probe spacing for the recorded times. The jump and diffusion
  // unravelings take it from their InteractionSpec instead.
  double delta_t = 1.0;
  bool record_ledger = true;
};

TrajectoryRecord trajectory_exact(const PureState& psi0, const KrausPair& kraus,
                                  std::int64_t steps, std::uint64_t seed,
                                  const TrajectoryOptions& opts = {});

// z-axis probe measurement; '-' outcomes are jumps. Throws ValidationError
// unless A+ is proportional to the identity up to O(epsilon^2).
TrajectoryRecord trajectory_jump(const PureState& psi0,
                                 const InteractionSpec& spec,
                                 std::int64_t steps, std::uint64_t seed,
                                 const TrajectoryOptions& opts = {});

// x-axis probe measurement; both outcomes must have probability exactly
// 1/2 for every state (A+/- = U+/- / sqrt(2) with U+/- unitary).
TrajectoryRecord trajectory_diffusion(const PureState& psi0,
                                      const InteractionSpec& spec,
                                      std::int64_t steps, std::uint64_t seed,
                                      const TrajectoryOptions& opts = {});

KrausPair jump_kraus(const InteractionSpec& spec);
KrausPair diffusion_kraus(const InteractionSpec& spec);

//------------------------------------------------------------------------
// Ensembles
//------------------------------------------------------------------------

struct EnsembleResult {
  std::int64_t n_trajectories = 0;
  std::vector<double> times;
  std::vector<DensityMatrix> mean_rho;
  // Largest standard error of the mean over the real and imaginary parts
  // of the four entries.
  std::vector<double> stderr_max;
  double mean_jump_count = 0.0;
  double jump_count_variance = 0.0;
};

// Streaming reduction. Records must be added in trajectory-index order for
// bit-reproducible sums.
class EnsembleAccumulator {
 public:
  void add(const TrajectoryRecord& rec);
  std::int64_t size() const noexcept { return n_; }
  EnsembleResult result() const;

 private:
  std::int64_t n_ = 0;
  Unraveling unraveling_ = Unraveling::exact;
  std::vector<std::int64_t> steps_;
  std::vector<double> times_;
  // 8 real components per snapshot (re/im of the four entries).
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
  double jumps_ = 0.0;
  double jumps_sq_ = 0.0;
};

// Throws ValidationError on empty or inhomogeneous input.
EnsembleResult ensemble_average(std::span<const TrajectoryRecord> records);

struct EnsembleJob {
  Unraveling unraveling = Unraveling::exact;
  PureState psi0 = ket_plus();
  InteractionSpec spec;
  BlochAxis probe_axis = BlochAxis::z();  // exact unraveling only
  // Exact unraveling only: use these operators instead of deriving them
  // from `spec` (e.g. for interactions given directly as a unitary).
  std::optional<KrausPair> exact_kraus;
  std::int64_t steps = 0;
  std::int64_t n_trajectories = 1;
  std::uint64_t master_seed = 0;
  TrajectoryOptions options;
};

TrajectoryRecord run_trajectory(const EnsembleJob& job, std::int64_t index);

struct EnsembleRun {
  EnsembleResult result;
  // The first `keep` records, in index order.
  std::vector<TrajectoryRecord> kept;
};

// Runs the ensemble on `threads` workers (0 = hardware concurrency).
// Trajectory i uses seed stream_seed(master_seed, i); the result does not
// depend on the thread count.
EnsembleRun run_ensemble(const EnsembleJob& job, std::size_t keep = 0,
                         unsigned threads = 0);

}  // namespace qtraj
