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

#include <array>
#include <string>

#include "qtraj/linalg.hpp"

namespace qtraj {

inline constexpr double kStateTol = 1e-10;

// Normalized state vector of the system (dim 2) or system+probe (dim 4).
class PureState {
 public:
  // Throws ValidationError unless |amplitudes| = 1 within kStateTol.
  explicit PureState(CVec amplitudes, std::string label = {});

  // Explicit renormalization. `renormalized()` on the result reports
  // whether the input norm was off by more than kStateTol.
  static PureState normalize(const CVec& v, std::string label = {});

  const CVec& amplitudes() const noexcept { return amp_; }
  int dim() const noexcept { return amp_.dim(); }
  const std::string& label() const noexcept { return label_; }
  bool renormalized() const noexcept { return renormalized_; }

  cplx operator[](int i) const noexcept { return amp_[i]; }

 private:
  PureState() = default;

  CVec amp_;
  std::string label_;
  bool renormalized_ = false;
};

// Hermitian, unit-trace, positive semidefinite (all within kStateTol).
class DensityMatrix {
 public:
  // Throws InvariantViolation naming the failed property.
  explicit DensityMatrix(CMat m);

  const CMat& matrix() const noexcept { return m_; }
  int dim() const noexcept { return m_.dim(); }
  cplx operator()(int r, int c) const noexcept { return m_(r, c); }

  double purity() const;

 private:
  CMat m_;
};

PureState pure_from_amplitudes(cplx alpha, cplx beta);
PureState ket0();
PureState ket1();
PureState ket_plus();
PureState ket_minus();

DensityMatrix density_from_pure(const PureState& s);
DensityMatrix maximally_mixed(int dim);

// PureState of the joint system+probe space.
PureState joint_state(const PureState& system, const PureState& probe);

// (<sigma_x>, <sigma_y>, <sigma_z>) of a dim-2 state.
std::array<double, 3> bloch_vector(const PureState& s);

struct SchmidtForm {
  double p_plus = 1.0;
  double p_minus = 0.0;
  std::array<CVec, 2> system_basis;
  std::array<CVec, 2> probe_basis;
};

// Schmidt decomposition with p_plus >= p_minus. The system basis follows
// the eigensolver phase convention; probe vectors carry whatever phase
// makes both coefficients real and non-negative.
SchmidtForm schmidt_decompose(const PureState& joint);

// sqrt(p+)|+>_s|+>_p + sqrt(p-)|->_s|->_p
CVec reconstruct(const SchmidtForm& f);

}  // namespace qtraj
