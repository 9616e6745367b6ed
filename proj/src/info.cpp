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

#include "qtraj/info.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtraj/errors.hpp"
#include "qtraj/rng.hpp"

namespace qtraj {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double spectrum_entropy(const CMat& m) {
  const HermitianEigen e = eigh(0.5 * (m + m.adjoint()));
  double s = 0.0;
  for (int k = 0; k < e.dim; ++k) {
    const double lambda = e.values[k];
    if (lambda < -kStateTol) {
      throw InvariantViolation("density-positivity",
                               "eigenvalue " + std::to_string(lambda) +
                                   " below -1e-10");
    }
    s -= xlog2x(std::max(lambda, 0.0));
  }
  return std::max(s, 0.0);
}

}  // namespace

double shannon_entropy(double p_plus) {
  if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
    throw ValidationError("shannon_entropy: probability " +
                          std::to_string(p_plus) + " outside [0, 1]");
  }
  return -xlog2x(p_plus) - xlog2x(1.0 - p_plus);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return spectrum_entropy(rho.matrix());
}

double entanglement_entropy(const PureState& joint) {
  if (joint.dim() != 4) {
    throw StructuralError("entanglement_entropy expects a joint state");
  }
  const CMat proj = outer(joint.amplitudes(), joint.amplitudes());
  const double s_sys = spectrum_entropy(partial_trace(proj, Subsystem::system));
  const double s_probe = spectrum_entropy(partial_trace(proj, Subsystem::probe));
  if (std::abs(s_sys - s_probe) > 1e-10) {
    throw InvariantViolation("entropy-symmetry",
                             "reduced entropies differ by " +
                                 std::to_string(std::abs(s_sys - s_probe)));
  }
  return s_sys;
}

double info_gain(const DensityMatrix& rho_before, const KrausPair& kraus) {
  double gain = von_neumann_entropy(rho_before);
  const auto p = outcome_probabilities(rho_before, kraus);
  for (Sign s : {Sign::plus, Sign::minus}) {
    const double pk = p[s == Sign::plus ? 0 : 1];
    if (pk < kDegenerateProbability) continue;
    gain -= pk * von_neumann_entropy(branch_state(rho_before, kraus, s));
  }
  return gain;
}

double probe_entropy(const DensityMatrix& rho, const KrausPair& kraus) {
  CMat probe(2);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const CMat& ak = k == 0 ? kraus.a_plus : kraus.a_minus;
      const CMat& al = l == 0 ? kraus.a_plus : kraus.a_minus;
      probe(k, l) = (ak * rho.matrix() * al.adjoint()).trace();
    }
  return spectrum_entropy(probe);
}

double probe_measurement_entropy(const PureState& joint,
                                 const BlochAxis& axis) {
  if (joint.dim() != 4) {
    throw StructuralError("probe_measurement_entropy expects a joint state");
  }
  const CMat p = tensor_product(CMat::identity(2),
                                projector_from_axis(axis, Sign::plus).matrix);
  const double p_plus =
      std::clamp(inner(joint.amplitudes(), p * joint.amplitudes()).real(),
                 0.0, 1.0);
  return shannon_entropy(p_plus);
}

PumpRun randomness_pump(std::int64_t n_steps, std::uint64_t seed) {
  if (n_steps < 1) throw ValidationError("randomness_pump: n_steps must be >= 1");
  Rng rng(seed);
  PumpRun run;
  run.ledger.reserve(static_cast<std::size_t>(n_steps));
  run.outcomes.reserve(static_cast<std::size_t>(n_steps));
  run.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  run.states.push_back(ket_plus());
  for (std::int64_t step = 1; step <= n_steps; ++step) {
    const BlochAxis axis = step % 2 == 1 ? BlochAxis::z() : BlochAxis::x();
    const PureState& before = run.states.back();
    const DensityMatrix rho_before = density_from_pure(before);
    const PureOutcome o = projective_measure(before, axis, rng.uniform());
    const double p_plus = o.sign == Sign::plus ? o.probability
                                               : 1.0 - o.probability;
    const DensityMatrix rho_after = density_from_pure(o.post_state);

    InfoLedgerEntry e;
    e.step = step;
    e.shannon_bits = shannon_entropy(p_plus);
    const KrausPair projective{projector_from_axis(axis, Sign::plus).matrix,
                               projector_from_axis(axis, Sign::minus).matrix,
                               std::nullopt};
    e.info_gain_bits = info_gain(rho_before, projective);
    e.entanglement_bits = 0.0;
    e.vn_entropy_bits = von_neumann_entropy(rho_after);
    run.ledger.push_back(e);
    run.outcomes.push_back(o.sign);
    run.states.push_back(o.post_state);
  }
  return run;
}

}  // namespace qtraj
