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

// Gates, two-outcome projective measurements, and indirect (generalized)
// measurements realized by coupling the system to a probe q-bit and
// projecting the probe.

#include <array>
#include <optional>
#include <utility>

#include "qtraj/linalg.hpp"
#include "qtraj/state.hpp"

namespace qtraj {

enum class Sign { plus, minus };

inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// Unit Bloch axis; construction rejects |n| != 1 (tolerance 1e-10).
class BlochAxis {
 public:
  BlochAxis(double x, double y, double z);
  explicit BlochAxis(const std::array<double, 3>& n)
      : BlochAxis(n[0], n[1], n[2]) {}

  static BlochAxis x() { return {1.0, 0.0, 0.0}; }
  static BlochAxis y() { return {0.0, 1.0, 0.0}; }
  static BlochAxis z() { return {0.0, 0.0, 1.0}; }

  const std::array<double, 3>& components() const noexcept { return n_; }
  double operator[](int i) const noexcept { return n_[i]; }

 private:
  std::array<double, 3> n_;
};

struct Projector {
  CMat matrix;
  BlochAxis axis;
  Sign sign;
};

// (1 +/- n.sigma) / 2
Projector projector_from_axis(const BlochAxis& n, Sign sign);

// Eigenvectors of n.sigma for eigenvalues +1 and -1, first nonzero
// component real non-negative.
std::pair<CVec, CVec> axis_basis(const BlochAxis& n);

CMat gate_cnot();
CMat gate_swap();

// exp(-i epsilon h), exact.
CMat weak_unitary(const CMat& h, double epsilon);

struct KrausProvenance {
  CMat unitary{4};
  PureState probe_prep = ket0();
  BlochAxis probe_axis = BlochAxis::z();
};

// Two system operators with A+^dagger A+ + A-^dagger A- = 1.
struct KrausPair {
  CMat a_plus{2};
  CMat a_minus{2};
  std::optional<KrausProvenance> provenance;

  const CMat& operator[](Sign s) const {
    return s == Sign::plus ? a_plus : a_minus;
  }

  // max-entry deviation of the completeness sum from the identity
  double completeness_error() const;

  // A+ = 1, A- = 0
  static KrausPair identity();
};

// A_k = <k|_p U |phi0>_p as a system operator, |k> the eigenbasis of the
// probe axis. Throws ValidationError if U is not unitary within 1e-10.
KrausPair kraus_from_probe(const CMat& u, const PureState& probe_prep,
                           const BlochAxis& probe_axis);

// Mixed probe preparations would need more than two Kraus operators; a
// rank-1 density matrix is accepted, anything else throws ValidationError.
KrausPair kraus_from_probe(const CMat& u, const DensityMatrix& probe_prep,
                           const BlochAxis& probe_axis);

template <class State>
struct Outcome {
  Sign sign;
  double probability;
  State post_state;
};

using MeasurementOutcome = Outcome<DensityMatrix>;
using PureOutcome = Outcome<PureState>;

// Outcome probabilities below this are treated as impossible branches.
inline constexpr double kDegenerateProbability = 1e-14;

// Sign + iff rand < p+.
Sign select_sign(double p_plus, double rand);

MeasurementOutcome projective_measure(const DensityMatrix& state,
                                      const BlochAxis& axis, double rand);
PureOutcome projective_measure(const PureState& state, const BlochAxis& axis,
                               double rand);

// (p+, p-) = (Tr A+ rho A+^dagger, Tr A- rho A-^dagger)
std::array<double, 2> outcome_probabilities(const DensityMatrix& state,
                                            const KrausPair& kraus);
std::array<double, 2> outcome_probabilities(const PureState& state,
                                            const KrausPair& kraus);

// A_k rho A_k^dagger / p_k; throws DegenerateOutcomeError if p_k is below
// kDegenerateProbability.
DensityMatrix branch_state(const DensityMatrix& state, const KrausPair& kraus,
                           Sign sign);

MeasurementOutcome generalized_measure(const DensityMatrix& state,
                                       const KrausPair& kraus, double rand);
PureOutcome generalized_measure(const PureState& state, const KrausPair& kraus,
                                double rand);

}  // namespace qtraj
