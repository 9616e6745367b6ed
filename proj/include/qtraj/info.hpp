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

// Entropy bookkeeping. Every quantity here is in bits.

#include <cstdint>
#include <vector>

#include "qtraj/measure.hpp"
#include "qtraj/state.hpp"

namespace qtraj {

struct InfoLedgerEntry {
  std::int64_t step = 0;
  double shannon_bits = 0.0;
  double info_gain_bits = 0.0;
  double entanglement_bits = 0.0;
  double vn_entropy_bits = 0.0;
};

// Binary entropy of the outcome distribution (p, 1 - p); 0 log 0 = 0.
double shannon_entropy(double p_plus);

// -sum lambda log2 lambda. Eigenvalues in [-1e-10, 0] count as zero;
// anything lower throws InvariantViolation("density-positivity").
double von_neumann_entropy(const DensityMatrix& rho);

// Entropy of the reduced state; both reductions are computed and must agree
// within 1e-10.
double entanglement_entropy(const PureState& joint);

// S(rho) - sum_k p_k S(rho_k), the mean entropy removed by one
// generalized measurement.
double info_gain(const DensityMatrix& rho_before, const KrausPair& kraus);

// Entropy of the probe after it has interacted with a system in state rho:
// the von Neumann entropy of [Tr(A_k rho A_l^dagger)]_{kl}. Equals the
// entanglement entropy of the joint state when rho is pure.
double probe_entropy(const DensityMatrix& rho, const KrausPair& kraus);

// Outcome entropy of a projective measurement of the probe factor of a
// joint pure state along `axis`.
double probe_measurement_entropy(const PureState& joint, const BlochAxis& axis);

struct PumpRun {
  std::vector<InfoLedgerEntry> ledger;
  std::vector<Sign> outcomes;
  std::vector<PureState> states;  // states[0] is the initial |+>
};

// Alternating z / x projective measurements starting from
// (|0> + |1>)/sqrt(2), z first.
PumpRun randomness_pump(std::int64_t n_steps, std::uint64_t seed);

}  // namespace qtraj
