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

#include "qtraj/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtraj/errors.hpp"

namespace qtraj {

BlochAxis::BlochAxis(double x, double y, double z) : n_{x, y, z} {
  const double len = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(len) || std::abs(len - 1.0) > 1e-10) {
    throw ValidationError("BlochAxis: axis must be a unit 3-vector (norm " +
                          std::to_string(len) + ")");
  }
}

Projector projector_from_axis(const BlochAxis& n, Sign sign) {
  const double s = sign == Sign::plus ? 1.0 : -1.0;
  CMat m = 0.5 * (CMat::identity(2) + s * pauli_dot(n.components()));
  return {m, n, sign};
}

std::pair<CVec, CVec> axis_basis(const BlochAxis& n) {
  const double x = n[0], y = n[1], z = n[2];
  CVec plus = z >= 0.0 ? CVec{1.0 + z, cplx(x, y)} : CVec{cplx(x, -y), 1.0 - z};
  plus *= 1.0 / plus.norm();
  plus = fix_phase(plus);
  CVec minus = fix_phase(CVec{-std::conj(plus[1]), std::conj(plus[0])});
  return {plus, minus};
}

CMat gate_cnot() {
  // |ij> -> |i (i xor j)>
  CMat m(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(2 * i + (i ^ j), 2 * i + j) = 1.0;
  return m;
}

CMat gate_swap() {
  CMat m(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(2 * j + i, 2 * i + j) = 1.0;
  return m;
}

CMat weak_unitary(const CMat& h, double epsilon) {
  if (h.dim() != 4) throw StructuralError("weak_unitary expects dim 4");
  return expm_hermitian(h, epsilon);
}

double KrausPair::completeness_error() const {
  const CMat sum = a_plus.adjoint() * a_plus + a_minus.adjoint() * a_minus;
  return max_abs_diff(sum, CMat::identity(2));
}

KrausPair KrausPair::identity() {
  return {CMat::identity(2), CMat(2), std::nullopt};
}

KrausPair kraus_from_probe(const CMat& u, const PureState& probe_prep,
                           const BlochAxis& probe_axis) {
  if (u.dim() != 4) throw StructuralError("kraus_from_probe expects dim-4 U");
  if (probe_prep.dim() != 2) {
    throw StructuralError("kraus_from_probe expects a dim-2 probe state");
  }
  if (!u.is_unitary(1e-10)) {
    throw ValidationError("kraus_from_probe: interaction is not unitary");
  }
  const auto [plus, minus] = axis_basis(probe_axis);
  auto element = [&](const CVec& bra) {
    // A(i, j) = sum_{m,n} conj(bra_m) U(2i+m, 2j+n) phi0_n
    CMat a(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cplx s = 0.0;
        for (int m = 0; m < 2; ++m)
          for (int n = 0; n < 2; ++n)
            s += std::conj(bra[m]) * u(2 * i + m, 2 * j + n) * probe_prep[n];
        a(i, j) = s;
      }
    return a;
  };
  return {element(plus), element(minus),
          KrausProvenance{u, probe_prep, probe_axis}};
}

KrausPair kraus_from_probe(const CMat& u, const DensityMatrix& probe_prep,
                           const BlochAxis& probe_axis) {
  if (probe_prep.dim() != 2) {
    throw StructuralError("kraus_from_probe expects a dim-2 probe state");
  }
  if (std::abs(probe_prep.purity() - 1.0) > 1e-10) {
    throw ValidationError(
        "kraus_from_probe: mixed probe preparations are not supported "
        "(they require more than two Kraus operators)");
  }
  const HermitianEigen e = eigh(probe_prep.matrix());
  return kraus_from_probe(u, PureState::normalize(e.vectors[1]), probe_axis);
}

Sign select_sign(double p_plus, double rand) {
  return rand < p_plus ? Sign::plus : Sign::minus;
}

namespace {

void check_branch(double p, Sign sign) {
  if (!(p >= kDegenerateProbability)) {
    throw DegenerateOutcomeError(std::string("selected outcome ") +
                                 sign_char(sign) + " has probability " +
                                 std::to_string(p));
  }
}

CMat sandwich(const CMat& a, const CMat& rho) { return a * rho * a.adjoint(); }

DensityMatrix renormalized(const CMat& m, double p) {
  CMat out = (1.0 / p) * m;
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

}  // namespace

MeasurementOutcome projective_measure(const DensityMatrix& state,
                                      const BlochAxis& axis, double rand) {
  if (state.dim() != 2) throw StructuralError("projective_measure: dim 2");
  const Projector pp = projector_from_axis(axis, Sign::plus);
  const double p_plus =
      std::clamp((pp.matrix * state.matrix()).trace().real(), 0.0, 1.0);
  const Sign sign = select_sign(p_plus, rand);
  const double p = sign == Sign::plus ? p_plus : 1.0 - p_plus;
  check_branch(p, sign);
  const CMat proj =
      sign == Sign::plus ? pp.matrix : projector_from_axis(axis, sign).matrix;
  return {sign, p, renormalized(sandwich(proj, state.matrix()), p)};
}

PureOutcome projective_measure(const PureState& state, const BlochAxis& axis,
                               double rand) {
  if (state.dim() != 2) throw StructuralError("projective_measure: dim 2");
  const auto [plus, minus] = axis_basis(axis);
  const double p_plus = std::clamp(std::norm(inner(plus, state.amplitudes())),
                                   0.0, 1.0);
  const Sign sign = select_sign(p_plus, rand);
  const double p = sign == Sign::plus ? p_plus : 1.0 - p_plus;
  check_branch(p, sign);
  // P|psi>/sqrt(p) is the axis eigenvector up to phase; keep the phase
  // that the projection produces.
  const CVec& e = sign == Sign::plus ? plus : minus;
  CVec post = (inner(e, state.amplitudes()) / std::sqrt(p)) * e;
  return {sign, p, PureState::normalize(post)};
}

std::array<double, 2> outcome_probabilities(const DensityMatrix& state,
                                            const KrausPair& kraus) {
  const double pp = sandwich(kraus.a_plus, state.matrix()).trace().real();
  const double pm = sandwich(kraus.a_minus, state.matrix()).trace().real();
  return {std::max(pp, 0.0), std::max(pm, 0.0)};
}

std::array<double, 2> outcome_probabilities(const PureState& state,
                                            const KrausPair& kraus) {
  const double pp = std::pow((kraus.a_plus * state.amplitudes()).norm(), 2);
  const double pm = std::pow((kraus.a_minus * state.amplitudes()).norm(), 2);
  return {pp, pm};
}

DensityMatrix branch_state(const DensityMatrix& state, const KrausPair& kraus,
                           Sign sign) {
  const CMat m = sandwich(kraus[sign], state.matrix());
  const double p = m.trace().real();
  check_branch(p, sign);
  return renormalized(m, p);
}

MeasurementOutcome generalized_measure(const DensityMatrix& state,
                                       const KrausPair& kraus, double rand) {
  if (state.dim() != 2) throw StructuralError("generalized_measure: dim 2");
  // Rank-1 input takes the state-vector route.
  if (std::abs(state.purity() - 1.0) <= 1e-12) {
    const HermitianEigen e = eigh(state.matrix());
    const PureOutcome o =
        generalized_measure(PureState::normalize(e.vectors[1]), kraus, rand);
    return {o.sign, o.probability, density_from_pure(o.post_state)};
  }
  const auto [pp, pm] = outcome_probabilities(state, kraus);
  const Sign sign = select_sign(pp, rand);
  const double p = sign == Sign::plus ? pp : pm;
  check_branch(p, sign);
  return {sign, p, renormalized(sandwich(kraus[sign], state.matrix()), p)};
}

PureOutcome generalized_measure(const PureState& state, const KrausPair& kraus,
                                double rand) {
  if (state.dim() != 2) throw StructuralError("generalized_measure: dim 2");
  const CVec vp = kraus.a_plus * state.amplitudes();
  const CVec vm = kraus.a_minus * state.amplitudes();
  const double pp = std::norm(vp[0]) + std::norm(vp[1]);
  const double pm = std::norm(vm[0]) + std::norm(vm[1]);
  const Sign sign = select_sign(pp, rand);
  const double p = sign == Sign::plus ? pp : pm;
  check_branch(p, sign);
  const CVec& v = sign == Sign::plus ? vp : vm;
  return {sign, p, PureState::normalize((1.0 / std::sqrt(p)) * v)};
}

}  // namespace qtraj
