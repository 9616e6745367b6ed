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

#include "qtraj/evolve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qtraj/errors.hpp"
#include "qtraj/rng.hpp"

namespace qtraj {

//------------------------------------------------------------------------
// InteractionSpec
//------------------------------------------------------------------------

void InteractionSpec::validate() const {
  if (hamiltonian.dim() != 4) {
    throw ValidationError("interaction: hamiltonian must be 4x4");
  }
  if (!hamiltonian.is_hermitian(kHermitianTol)) {
    throw ValidationError("interaction: hamiltonian is not Hermitian");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("interaction: epsilon must be finite and >= 0");
  }
  if (!(delta_t > 0.0) || !std::isfinite(delta_t)) {
    throw ValidationError("interaction: delta_t must be finite and > 0");
  }
  if (probe_prep.dim() != 2) {
    throw ValidationError("interaction: probe preparation must be a q-bit");
  }
}

CMat InteractionSpec::unitary() const {
  validate();
  return weak_unitary(hamiltonian, epsilon);
}

KrausPair InteractionSpec::kraus(const BlochAxis& probe_axis) const {
  return kraus_from_probe(unitary(), probe_prep, probe_axis);
}

//------------------------------------------------------------------------
// Channel and master equation
//------------------------------------------------------------------------

DensityMatrix channel_step(const DensityMatrix& rho, const KrausPair& kraus) {
  if (rho.dim() != 2) throw StructuralError("channel_step expects dim 2");
  const CMat& m = rho.matrix();
  CMat out = kraus.a_plus * m * kraus.a_plus.adjoint() +
             kraus.a_minus * m * kraus.a_minus.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

std::vector<DensityMatrix> channel_evolve(const DensityMatrix& rho0,
                                          const KrausPair& kraus,
                                          std::int64_t steps) {
  if (steps < 0) throw ValidationError("channel_evolve: steps must be >= 0");
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(rho0);
  for (std::int64_t t = 0; t < steps; ++t) {
    out.push_back(channel_step(out.back(), kraus));
  }
  return out;
}

CMat probe_matrix_element(const CMat& h, const CVec& bra, const CVec& ket) {
  if (h.dim() != 4 || bra.dim() != 2 || ket.dim() != 2) {
    throw StructuralError("probe_matrix_element: expects 4x4 and q-bit vectors");
  }
  CMat out(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          s += std::conj(bra[m]) * h(2 * i + m, 2 * j + n) * ket[n];
      out(i, j) = s;
    }
  return out;
}

CVec orthogonal_complement(const CVec& phi) {
  if (phi.dim() != 2) throw StructuralError("orthogonal_complement: dim 2");
  return CVec{-std::conj(phi[1]), std::conj(phi[0])};
}

LindbladParams derive_lindblad(const InteractionSpec& spec) {
  spec.validate();
  const CVec& phi0 = spec.probe_prep.amplitudes();
  const CVec phi_perp = orthogonal_complement(phi0);
  LindbladParams p;
  p.h_eff = (spec.epsilon / spec.delta_t) *
            probe_matrix_element(spec.hamiltonian, phi0, phi0);
  p.h_eff = 0.5 * (p.h_eff + p.h_eff.adjoint());
  p.lindblad_op = (spec.epsilon / std::sqrt(spec.delta_t)) *
                  probe_matrix_element(spec.hamiltonian, phi_perp, phi0);
  return p;
}

CMat lindblad_rhs(const CMat& rho, const LindbladParams& params) {
  const cplx i(0.0, 1.0);
  const CMat& h = params.h_eff;
  const CMat& l = params.lindblad_op;
  const CMat ldl = l.adjoint() * l;
  return -i * (h * rho - rho * h) + l * rho * l.adjoint() -
         0.5 * (ldl * rho) - 0.5 * (rho * ldl);
}

namespace {

double frobenius(const CMat& m) {
  double s = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) s += std::norm(m(r, c));
  return std::sqrt(s);
}

}  // namespace

double generator_norm(const LindbladParams& params) {
  const double l = frobenius(params.lindblad_op);
  return 2.0 * frobenius(params.h_eff) + 2.0 * l * l;
}

LindbladSeries lindblad_integrate(const DensityMatrix& rho0,
                                  const LindbladParams& params, double dt,
                                  double t_final) {
  if (rho0.dim() != 2) throw StructuralError("lindblad_integrate expects dim 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("lindblad_integrate: dt must be > 0");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ValidationError("lindblad_integrate: t_final must be >= 0");
  }
  if (!params.h_eff.is_hermitian(kHermitianTol)) {
    throw ValidationError("lindblad_integrate: h_eff is not Hermitian");
  }
  if (generator_norm(params) * dt >= 0.1) {
    throw ValidationError(
        "lindblad_integrate: step too large (generator norm * dt = " +
        std::to_string(generator_norm(params) * dt) + ", must be < 0.1)");
  }
  const auto n = static_cast<std::int64_t>(std::ceil(t_final / dt - 1e-9));
  const double h = n > 0 ? t_final / static_cast<double>(n) : 0.0;

  LindbladSeries out;
  out.times.reserve(static_cast<std::size_t>(n) + 1);
  out.states.reserve(static_cast<std::size_t>(n) + 1);
  out.times.push_back(0.0);
  out.states.push_back(rho0);
  CMat rho = rho0.matrix();
  for (std::int64_t k = 1; k <= n; ++k) {
    const CMat k1 = lindblad_rhs(rho, params);
    const CMat k2 = lindblad_rhs(rho + (0.5 * h) * k1, params);
    const CMat k3 = lindblad_rhs(rho + (0.5 * h) * k2, params);
    const CMat k4 = lindblad_rhs(rho + h * k3, params);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint());
    const double tr = rho.trace().real();
    const double drift = std::abs(tr - 1.0);
    if (drift > 1e-10) {
      throw InvariantViolation("trace-preservation",
                               "RK4 step changed the trace by " +
                                   std::to_string(drift));
    }
    out.max_trace_drift = std::max(out.max_trace_drift, drift);
    rho *= 1.0 / tr;
    out.times.push_back(static_cast<double>(k) * h);
    out.states.emplace_back(rho);
  }
  return out;
}

//------------------------------------------------------------------------
// Trajectories
//------------------------------------------------------------------------

std::string_view unraveling_name(Unraveling u) {
  switch (u) {
    case Unraveling::exact:
      return "exact";
    case Unraveling::jump:
      return "jump";
    case Unraveling::diffusion:
      return "diffusion";
  }
  return "exact";
}

Unraveling parse_unraveling(std::string_view name) {
  if (name == "exact") return Unraveling::exact;
  if (name == "jump") return Unraveling::jump;
  if (name == "diffusion") return Unraveling::diffusion;
  throw ValidationError("unknown unraveling '" + std::string(name) +
                        "' (expected exact, jump or diffusion)");
}

std::string TrajectoryRecord::outcome_string() const {
  std::string s;
  s.reserve(outcomes.size());
  for (Sign o : outcomes) s.push_back(sign_char(o));
  return s;
}

namespace {

InfoLedgerEntry ledger_entry(std::int64_t step, const PureState& before,
                             const PureState& after, double p_plus,
                             const KrausPair& kraus) {
  InfoLedgerEntry e;
  e.step = step;
  const DensityMatrix rho_before = density_from_pure(before);
  e.shannon_bits = shannon_entropy(std::clamp(p_plus, 0.0, 1.0));
  e.info_gain_bits = info_gain(rho_before, kraus);
  e.entanglement_bits = probe_entropy(rho_before, kraus);
  e.vn_entropy_bits = von_neumann_entropy(density_from_pure(after));
  return e;
}

TrajectoryRecord run_kraus_trajectory(const PureState& psi0,
                                      const KrausPair& kraus,
                                      std::int64_t steps, std::uint64_t seed,
                                      const TrajectoryOptions& opts,
                                      Unraveling unraveling) {
  if (psi0.dim() != 2) throw StructuralError("trajectory expects a q-bit state");
  if (steps < 0) throw ValidationError("trajectory: steps must be >= 0");
  if (opts.snapshot_stride < 1) {
    throw ValidationError("trajectory: snapshot_stride must be >= 1");
  }
  TrajectoryRecord rec;
  rec.seed = seed;
  rec.unraveling = unraveling;
  rec.outcomes.reserve(static_cast<std::size_t>(steps));
  const auto n_snap = static_cast<std::size_t>(steps / opts.snapshot_stride + 1);
  rec.snapshot_steps.reserve(n_snap);
  rec.times.reserve(n_snap);
  rec.states.reserve(n_snap);

  auto snapshot = [&](std::int64_t step, const PureState& s) {
    rec.snapshot_steps.push_back(step);
    rec.times.push_back(static_cast<double>(step) * opts.delta_t);
    rec.states.push_back(s);
  };

  snapshot(0, psi0);
  if (opts.record_ledger) {
    InfoLedgerEntry e0;
    e0.vn_entropy_bits = von_neumann_entropy(density_from_pure(psi0));
    rec.ledger.push_back(e0);
  }

  Rng rng(seed);
  PureState psi = psi0;
  for (std::int64_t step = 1; step <= steps; ++step) {
    const double u = rng.uniform();
    const CVec vp = kraus.a_plus * psi.amplitudes();
    const CVec vm = kraus.a_minus * psi.amplitudes();
    const double pp = std::norm(vp[0]) + std::norm(vp[1]);
    const double pm = std::norm(vm[0]) + std::norm(vm[1]);
    const Sign sign = select_sign(pp, u);
    const double p = sign == Sign::plus ? pp : pm;
    if (!(p >= kDegenerateProbability)) {
      throw DegenerateOutcomeError(std::string("trajectory step ") +
                                   std::to_string(step) + ": outcome " +
                                   sign_char(sign) + " has probability " +
                                   std::to_string(p));
    }
    PureState next = PureState::normalize(
        (1.0 / std::sqrt(p)) * (sign == Sign::plus ? vp : vm));
    if (next.renormalized()) ++rec.renormalization_flags;
    rec.outcomes.push_back(sign);
    if (sign == Sign::minus) ++rec.jump_count;
    if (step % opts.snapshot_stride == 0) {
      snapshot(step, next);
      if (opts.record_ledger) {
        rec.ledger.push_back(ledger_entry(step, psi, next, pp, kraus));
      }
    }
    psi = std::move(next);
  }
  return rec;
}

}  // namespace

TrajectoryRecord trajectory_exact(const PureState& psi0, const KrausPair& kraus,
                                  std::int64_t steps, std::uint64_t seed,
                                  const TrajectoryOptions& opts) {
  return run_kraus_trajectory(psi0, kraus, steps, seed, opts,
                              Unraveling::exact);
}

KrausPair jump_kraus(const InteractionSpec& spec) {
  KrausPair k = spec.kraus(BlochAxis::z());
  const CMat scaled = k.a_plus(0, 0) * CMat::identity(2);
  const double dev = max_abs_diff(k.a_plus, scaled);
  const double bound = spec.epsilon * spec.epsilon + 1e-12;
  if (dev > bound) {
    throw ValidationError(
        "jump unraveling: no-jump operator is not proportional to the "
        "identity to O(epsilon^2) (deviation " +
        std::to_string(dev) + ")");
  }
  return k;
}

KrausPair diffusion_kraus(const InteractionSpec& spec) {
  KrausPair k = spec.kraus(BlochAxis::x());
  const CMat half = 0.5 * CMat::identity(2);
  const double dev =
      std::max(max_abs_diff(k.a_plus.adjoint() * k.a_plus, half),
               max_abs_diff(k.a_minus.adjoint() * k.a_minus, half));
  if (dev > 1e-10) {
    throw ValidationError(
        "diffusion unraveling: x-axis outcomes are not equiprobable for "
        "every state (deviation " +
        std::to_string(dev) + ")");
  }
  return k;
}

TrajectoryRecord trajectory_jump(const PureState& psi0,
                                 const InteractionSpec& spec,
                                 std::int64_t steps, std::uint64_t seed,
                                 const TrajectoryOptions& opts) {
  TrajectoryOptions o = opts;
  o.delta_t = spec.delta_t;
  return run_kraus_trajectory(psi0, jump_kraus(spec), steps, seed, o,
                              Unraveling::jump);
}

TrajectoryRecord trajectory_diffusion(const PureState& psi0,
                                      const InteractionSpec& spec,
                                      std::int64_t steps, std::uint64_t seed,
                                      const TrajectoryOptions& opts) {
  TrajectoryOptions o = opts;
  o.delta_t = spec.delta_t;
  return run_kraus_trajectory(psi0, diffusion_kraus(spec), steps, seed, o,
                              Unraveling::diffusion);
}

//------------------------------------------------------------------------
// Ensembles
//------------------------------------------------------------------------

void EnsembleAccumulator::add(const TrajectoryRecord& rec) {
  if (n_ == 0) {
    unraveling_ = rec.unraveling;
    steps_ = rec.snapshot_steps;
    times_ = rec.times;
    sum_.assign(steps_.size() * 8, 0.0);
    sum_sq_.assign(steps_.size() * 8, 0.0);
  } else if (rec.unraveling != unraveling_ || rec.snapshot_steps != steps_ ||
             rec.times != times_) {
    throw ValidationError(
        "ensemble_average: records differ in unraveling or time grid");
  }
  for (std::size_t s = 0; s < steps_.size(); ++s) {
    const PureState& psi = rec.states[s];
    const cplx a = psi[0], b = psi[1];
    const cplx r01 = a * std::conj(b);
    const double comps[8] = {std::norm(a), 0.0,         r01.real(),
                             r01.imag(),   r01.real(),  -r01.imag(),
                             std::norm(b), 0.0};
    for (int c = 0; c < 8; ++c) {
      sum_[s * 8 + c] += comps[c];
      sum_sq_[s * 8 + c] += comps[c] * comps[c];
    }
  }
  const auto j = static_cast<double>(rec.jump_count);
  jumps_ += j;
  jumps_sq_ += j * j;
  ++n_;
}

EnsembleResult EnsembleAccumulator::result() const {
  if (n_ == 0) throw ValidationError("ensemble_average: no trajectories");
  EnsembleResult r;
  r.n_trajectories = n_;
  r.times = times_;
  const auto n = static_cast<double>(n_);
  for (std::size_t s = 0; s < steps_.size(); ++s) {
    CMat m(2);
    double se = 0.0;
    for (int c = 0; c < 8; ++c) {
      const double mean = sum_[s * 8 + c] / n;
      if (n_ > 1) {
        const double var =
            std::max(0.0, (sum_sq_[s * 8 + c] - n * mean * mean) / (n - 1.0));
        se = std::max(se, std::sqrt(var / n));
      }
      const int entry = c / 2;
      if (c % 2 == 0) {
        m(entry / 2, entry % 2) += mean;
      } else {
        m(entry / 2, entry % 2) += cplx(0.0, mean);
      }
    }
    r.mean_rho.emplace_back(m);
    r.stderr_max.push_back(se);
  }
  r.mean_jump_count = jumps_ / n;
  r.jump_count_variance =
      n_ > 1 ? std::max(0.0, (jumps_sq_ - n * r.mean_jump_count *
                                              r.mean_jump_count) /
                                 (n - 1.0))
             : 0.0;
  return r;
}

EnsembleResult ensemble_average(std::span<const TrajectoryRecord> records) {
  EnsembleAccumulator acc;
  for (const auto& rec : records) acc.add(rec);
  return acc.result();
}

namespace {

KrausPair job_kraus(const EnsembleJob& job) {
  switch (job.unraveling) {
    case Unraveling::jump:
      return jump_kraus(job.spec);
    case Unraveling::diffusion:
      return diffusion_kraus(job.spec);
    case Unraveling::exact:
      break;
  }
  if (job.exact_kraus) return *job.exact_kraus;
  return job.spec.kraus(job.probe_axis);
}

TrajectoryRecord job_trajectory(const EnsembleJob& job, const KrausPair& kraus,
                                std::int64_t index, bool ledger) {
  TrajectoryOptions o = job.options;
  if (!job.exact_kraus) o.delta_t = job.spec.delta_t;
  o.record_ledger = o.record_ledger && ledger;
  return run_kraus_trajectory(
      job.psi0, kraus, job.steps,
      stream_seed(job.master_seed, static_cast<std::uint64_t>(index)), o,
      job.unraveling);
}

}  // namespace

TrajectoryRecord run_trajectory(const EnsembleJob& job, std::int64_t index) {
  return job_trajectory(job, job_kraus(job), index, true);
}

EnsembleRun run_ensemble(const EnsembleJob& job, std::size_t keep,
                         unsigned threads) {
  if (job.n_trajectories < 1) {
    throw ValidationError("ensemble: n_trajectories must be >= 1");
  }
  const KrausPair kraus = job_kraus(job);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  EnsembleRun run;
  EnsembleAccumulator acc;
  constexpr std::int64_t kChunk = 2048;
  std::vector<TrajectoryRecord> chunk;
  for (std::int64_t begin = 0; begin < job.n_trajectories; begin += kChunk) {
    const std::int64_t end = std::min(job.n_trajectories, begin + kChunk);
    chunk.assign(static_cast<std::size_t>(end - begin), TrajectoryRecord{});
    std::atomic<std::int64_t> next{begin};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
      for (std::int64_t i = next++; i < end; i = next++) {
        try {
          chunk[static_cast<std::size_t>(i - begin)] = job_trajectory(
              job, kraus, i, static_cast<std::size_t>(i) < keep);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    };
    const unsigned n_workers = static_cast<unsigned>(
        std::min<std::int64_t>(threads, end - begin));
    if (n_workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    // Reduce in index order.
    for (auto& rec : chunk) {
      acc.add(rec);
      if (run.kept.size() < keep) run.kept.push_back(std::move(rec));
    }
  }
  run.result = acc.result();
  return run;
}

}  // namespace qtraj
