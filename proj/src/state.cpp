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

#include "qtraj/state.hpp"

#include <algorithm>
#include <cmath>

#include "qtraj/errors.hpp"

namespace qtraj {

PureState::PureState(CVec amplitudes, std::string label)
    : amp_(amplitudes), label_(std::move(label)) {
  const double n = amp_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kStateTol) {
    throw ValidationError("PureState: amplitudes are not normalized (norm " +
                          std::to_string(n) + ")");
  }
}

PureState PureState::normalize(const CVec& v, std::string label) {
  const double n = v.norm();
  if (!std::isfinite(n) || n <= 0.0) {
    throw ValidationError("PureState: cannot normalize a zero vector");
  }
  PureState s;
  s.amp_ = (1.0 / n) * v;
  s.label_ = std::move(label);
  s.renormalized_ = std::abs(n - 1.0) > kStateTol;
  return s;
}

DensityMatrix::DensityMatrix(CMat m) : m_(m) {
  if (!m_.is_finite()) {
    throw InvariantViolation("density-finite", "non-finite entries");
  }
  if (!m_.is_hermitian(kStateTol)) {
    throw InvariantViolation("density-hermitian",
                             "matrix is not Hermitian within 1e-10");
  }
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw InvariantViolation("density-trace",
                             "trace deviates from 1 by " +
                                 std::to_string(std::abs(tr - 1.0)));
  }
  // eigh rejects anything outside 1e-12 relative Hermiticity; symmetrize so
  // tiny drift accepted above does not trip it.
  m_ = 0.5 * (m_ + m_.adjoint());
  const HermitianEigen e = eigh(m_);
  if (e.values[0] < -kStateTol) {
    throw InvariantViolation("density-positivity",
                             "eigenvalue " + std::to_string(e.values[0]) +
                                 " below -1e-10");
  }
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

PureState pure_from_amplitudes(cplx alpha, cplx beta) {
  return PureState::normalize(CVec{alpha, beta});
}

PureState ket0() { return PureState(CVec{1.0, 0.0}, "|0>"); }
PureState ket1() { return PureState(CVec{0.0, 1.0}, "|1>"); }

PureState ket_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return PureState(CVec{r, r}, "|+>");
}

PureState ket_minus() {
  const double r = 1.0 / std::sqrt(2.0);
  return PureState(CVec{r, -r}, "|->");
}

DensityMatrix density_from_pure(const PureState& s) {
  return DensityMatrix(outer(s.amplitudes(), s.amplitudes()));
}

DensityMatrix maximally_mixed(int dim) {
  return DensityMatrix((1.0 / dim) * CMat::identity(dim));
}

PureState joint_state(const PureState& system, const PureState& probe) {
  return PureState(tensor_product(system.amplitudes(), probe.amplitudes()));
}

std::array<double, 3> bloch_vector(const PureState& s) {
  if (s.dim() != 2) throw StructuralError("bloch_vector expects dim 2");
  const cplx c = std::conj(s[0]) * s[1];
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s[0]) - std::norm(s[1])};
}

SchmidtForm schmidt_decompose(const PureState& joint) {
  if (joint.dim() != 4) {
    throw StructuralError("schmidt_decompose expects a joint (dim 4) state");
  }
  const CVec& psi = joint.amplitudes();
  const CMat rho_s = partial_trace(outer(psi, psi), Subsystem::system);
  const HermitianEigen e = eigh(rho_s);

  SchmidtForm f;
  // eigh is ascending; the Schmidt convention is descending.
  const double hi = std::clamp(e.values[1], 0.0, 1.0);
  f.p_plus = hi;
  f.p_minus = 1.0 - hi;
  f.system_basis = {e.vectors[1], e.vectors[0]};

  // Probe vector for system vector |k>: (<k| x 1)|psi> / sqrt(p_k).
  auto project = [&](const CVec& k) {
    CVec out(2);
    for (int j = 0; j < 2; ++j)
      out[j] = std::conj(k[0]) * psi[j] + std::conj(k[1]) * psi[2 + j];
    return out;
  };
  CVec plus = project(f.system_basis[0]);
  plus *= 1.0 / plus.norm();  // p_plus >= 1/2, never zero
  CVec minus = project(f.system_basis[1]);
  const double mn = minus.norm();
  if (mn > 1e-7) {
    minus *= 1.0 / mn;
    // Gram-Schmidt against rounding when p_minus is tiny.
    minus -= inner(plus, minus) * plus;
    minus *= 1.0 / minus.norm();
  } else {
    minus = fix_phase(CVec{-std::conj(plus[1]), std::conj(plus[0])});
  }
  f.probe_basis = {plus, minus};
  return f;
}

CVec reconstruct(const SchmidtForm& f) {
  return std::sqrt(f.p_plus) *
             tensor_product(f.system_basis[0], f.probe_basis[0]) +
         std::sqrt(f.p_minus) *
             tensor_product(f.system_basis[1], f.probe_basis[1]);
}

}  // namespace qtraj
