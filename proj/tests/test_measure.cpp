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

#include <cmath>

#include <gtest/gtest.h>

#include "qtraj/errors.hpp"
#include "qtraj/measure.hpp"
#include "sampling.hpp"

namespace qtraj {
namespace {

using testing::Sampler;

const cplx I{0.0, 1.0};
const double kR = 1.0 / std::sqrt(2.0);

// <k|_p U (|i> (x) |phi>) column by column.
CMat brute_kraus(const CMat& u, const CVec& phi, const CVec& k) {
  CMat a(2);
  for (int i = 0; i < 2; ++i) {
    CVec in(4);
    for (int p = 0; p < 2; ++p) in[2 * i + p] = phi[p];
    const CVec out = u * in;
    for (int s = 0; s < 2; ++s)
      a(s, i) = std::conj(k[0]) * out[2 * s] + std::conj(k[1]) * out[2 * s + 1];
  }
  return a;
}

CMat reduced_channel(const CMat& u, const PureState& probe, const CMat& rho) {
  const CMat joint = tensor_product(
      rho, outer(probe.amplitudes(), probe.amplitudes()));
  return partial_trace(u * joint * u.adjoint(), Subsystem::system);
}

TEST(Gates, Cnot) {
  const CMat c = gate_cnot();
  EXPECT_EQ(max_abs_diff(c * CVec{1, 0, 0, 0}, CVec{1, 0, 0, 0}), 0.0);
  EXPECT_EQ(max_abs_diff(c * CVec{0, 0, 1, 0}, CVec{0, 0, 0, 1}), 0.0);
  const cplx a{0.6, 0.0}, b{0.0, 0.8};
  EXPECT_LT(max_abs_diff(c * tensor_product(CVec{a, b}, CVec{1, 0}),
                         CVec{a, 0, 0, b}),
            1e-16);
}

TEST(Gates, Swap) {
  const CMat w = gate_swap();
  EXPECT_EQ(max_abs_diff(w * CVec{0, 1, 0, 0}, CVec{0, 0, 1, 0}), 0.0);
  Sampler s(31);
  const CVec psi = s.pure(2).amplitudes(), phi = s.pure(2).amplitudes();
  EXPECT_LT(max_abs_diff(w * tensor_product(psi, phi),
                         tensor_product(phi, psi)),
            1e-16);
}

TEST(Gates, WeakUnitaryClosedForm) {
  const CMat h = tensor_product(pauli_z(), pauli_x());
  EXPECT_LT(max_abs_diff(weak_unitary(h, 0.0), CMat::identity(4)), 1e-16);
  Sampler s(32);
  const double eps = 0.3;
  const CVec psi = s.pure(2).amplitudes();
  const CVec got = weak_unitary(h, eps) * tensor_product(psi, CVec{1, 0});
  const CVec want =
      std::cos(eps) * tensor_product(psi, CVec{1, 0}) -
      I * std::sin(eps) * tensor_product(pauli_z() * psi, CVec{0, 1});
  EXPECT_LT(max_abs_diff(got, want), 1e-14);

  // In the |+>,|-> probe basis the two branches are exp(-/+ i eps sigma_z).
  const CMat plus_branch = expm_hermitian(pauli_z(), eps);
  const CMat minus_branch = expm_hermitian(pauli_z(), -eps);
  const CVec want_x =
      kR * tensor_product(plus_branch * psi, CVec{kR, kR}) +
      kR * tensor_product(minus_branch * psi, CVec{kR, -kR});
  EXPECT_LT(max_abs_diff(got, want_x), 1e-14);
}

TEST(Projector, Examples) {
  EXPECT_LT(max_abs_diff(projector_from_axis(BlochAxis::z(), Sign::plus).matrix,
                         CMat{{1, 0}, {0, 0}}),
            1e-16);
  EXPECT_LT(max_abs_diff(projector_from_axis(BlochAxis::x(), Sign::plus).matrix,
                         CMat{{0.5, 0.5}, {0.5, 0.5}}),
            1e-16);
}

TEST(Projector, Properties) {
  Sampler s(33);
  for (int trial = 0; trial < 200; ++trial) {
    const BlochAxis n = s.axis();
    const CMat p = projector_from_axis(n, Sign::plus).matrix;
    const CMat m = projector_from_axis(n, Sign::minus).matrix;
    EXPECT_LT(max_abs_diff(p * p, p), 1e-14);
    EXPECT_LT(max_abs_diff(p * m, CMat(2)), 1e-14);
    EXPECT_LT(max_abs_diff(p + m, CMat::identity(2)), 1e-14);
    const auto [vp, vm] = axis_basis(n);
    EXPECT_LT(max_abs_diff(outer(vp, vp), p), 1e-14);
    EXPECT_LT(max_abs_diff(outer(vm, vm), m), 1e-14);
  }
}

TEST(Axis, RejectsNonUnit) {
  EXPECT_THROW(BlochAxis(1.0, 1.0, 0.0), ValidationError);
}

TEST(Projective, Examples) {
  const auto z = projective_measure(density_from_pure(ket0()), BlochAxis::z(),
                                    0.999);
  EXPECT_EQ(z.sign, Sign::plus);
  EXPECT_DOUBLE_EQ(z.probability, 1.0);

  const auto m = projective_measure(maximally_mixed(2), BlochAxis::z(), 0.7);
  EXPECT_EQ(m.sign, Sign::minus);
  EXPECT_NEAR(m.probability, 0.5, 1e-15);
  EXPECT_LT(max_abs_diff(m.post_state.matrix(), CMat{{0, 0}, {0, 1}}), 1e-15);
}

TEST(Projective, AlternatingAxesAreFair) {
  Sampler s(34);
  PureState psi = ket_plus();
  for (int step = 0; step < 50; ++step) {
    const BlochAxis ax = step % 2 == 0 ? BlochAxis::z() : BlochAxis::x();
    const auto o = projective_measure(psi, ax, s.uniform());
    EXPECT_NEAR(o.probability, 0.5, 1e-12);
    psi = o.post_state;
  }
}

TEST(Projective, Repeatable) {
  Sampler s(35);
  for (int trial = 0; trial < 100; ++trial) {
    const BlochAxis n = s.axis();
    const auto first = projective_measure(s.mixed(2), n, s.uniform());
    const auto again = projective_measure(first.post_state, n, s.uniform());
    EXPECT_EQ(again.sign, first.sign);
    EXPECT_NEAR(again.probability, 1.0, 1e-10);
  }
}

TEST(Projective, DegenerateBranch) {
  EXPECT_THROW(projective_measure(density_from_pure(ket0()), BlochAxis::z(),
                                  1.0),
               DegenerateOutcomeError);
}

TEST(SelectSign, Rule) {
  EXPECT_EQ(select_sign(0.5, 0.4999), Sign::plus);
  EXPECT_EQ(select_sign(0.5, 0.5), Sign::minus);
  EXPECT_EQ(select_sign(1.0, 0.0), Sign::plus);
}

TEST(Kraus, CnotZ) {
  const KrausPair k = kraus_from_probe(gate_cnot(), ket0(), BlochAxis::z());
  EXPECT_LT(max_abs_diff(k.a_plus, CMat{{1, 0}, {0, 0}}), 1e-15);
  EXPECT_LT(max_abs_diff(k.a_minus, CMat{{0, 0}, {0, 1}}), 1e-15);
  EXPECT_LT(max_abs_diff(k.a_plus, brute_kraus(gate_cnot(), CVec{1, 0},
                                               CVec{1, 0})),
            1e-15);
}

TEST(Kraus, CnotX) {
  const KrausPair k = kraus_from_probe(gate_cnot(), ket0(), BlochAxis::x());
  EXPECT_LT(max_abs_diff(k.a_plus, CMat{{kR, 0}, {0, kR}}), 1e-15);
  EXPECT_LT(max_abs_diff(k.a_minus, CMat{{kR, 0}, {0, -kR}}), 1e-15);
}

TEST(Kraus, Dephasing) {
  const double eps = 0.1;
  const CMat u = weak_unitary(tensor_product(pauli_z(), pauli_x()), eps);
  const KrausPair k = kraus_from_probe(u, ket0(), BlochAxis::z());
  EXPECT_LT(max_abs_diff(k.a_plus, std::cos(eps) * CMat::identity(2)), 1e-15);
  EXPECT_LT(max_abs_diff(k.a_minus, -I * std::sin(eps) * pauli_z()), 1e-15);
}

TEST(Kraus, MatchesBruteForce) {
  Sampler s(36);
  for (int trial = 0; trial < 200; ++trial) {
    const CMat u = expm_hermitian(s.hermitian(4), 1.0);
    const PureState phi = s.pure(2);
    const BlochAxis n = s.axis();
    const KrausPair k = kraus_from_probe(u, phi, n);
    const auto [vp, vm] = axis_basis(n);
    EXPECT_LT(max_abs_diff(k.a_plus, brute_kraus(u, phi.amplitudes(), vp)),
              1e-14);
    EXPECT_LT(max_abs_diff(k.a_minus, brute_kraus(u, phi.amplitudes(), vm)),
              1e-14);
    EXPECT_LT(k.completeness_error(), 1e-12);
    ASSERT_TRUE(k.provenance.has_value());
  }
}

TEST(Kraus, ChannelMatchesUnitaryDilation) {
  Sampler s(37);
  for (int trial = 0; trial < 200; ++trial) {
    const CMat u = expm_hermitian(s.hermitian(4), 0.7);
    const PureState phi = s.pure(2);
    const KrausPair k = kraus_from_probe(u, phi, s.axis());
    const CMat rho = s.mixed(2).matrix();
    const CMat via_kraus = k.a_plus * rho * k.a_plus.adjoint() +
                           k.a_minus * rho * k.a_minus.adjoint();
    EXPECT_LT(max_abs_diff(via_kraus, reduced_channel(u, phi, rho)), 1e-12);
  }
}

TEST(Kraus, ChannelIndependentOfAxis) {
  Sampler s(38);
  const CMat u = expm_hermitian(s.hermitian(4), 1.3);
  const PureState phi = s.pure(2);
  const CMat rho = s.mixed(2).matrix();
  const KrausPair ref = kraus_from_probe(u, phi, BlochAxis::z());
  const CMat want = ref.a_plus * rho * ref.a_plus.adjoint() +
                    ref.a_minus * rho * ref.a_minus.adjoint();
  for (int trial = 0; trial < 50; ++trial) {
    const KrausPair k = kraus_from_probe(u, phi, s.axis());
    const CMat got = k.a_plus * rho * k.a_plus.adjoint() +
                     k.a_minus * rho * k.a_minus.adjoint();
    EXPECT_LT(max_abs_diff(got, want), 1e-12);
  }
}

TEST(Kraus, RejectsNonUnitary) {
  CMat u = gate_cnot();
  u(0, 0) = 1.1;
  EXPECT_THROW(kraus_from_probe(u, ket0(), BlochAxis::z()), ValidationError);
}

TEST(Kraus, MixedProbeRejected) {
  EXPECT_THROW(kraus_from_probe(gate_cnot(), maximally_mixed(2),
                                BlochAxis::z()),
               ValidationError);
  const KrausPair k = kraus_from_probe(gate_cnot(), density_from_pure(ket0()),
                                       BlochAxis::z());
  EXPECT_LT(max_abs_diff(k.a_plus, CMat{{1, 0}, {0, 0}}), 1e-12);
}

TEST(Generalized, CnotOnMixed) {
  const KrausPair kz = kraus_from_probe(gate_cnot(), ket0(), BlochAxis::z());
  const auto up = generalized_measure(maximally_mixed(2), kz, 0.1);
  EXPECT_EQ(up.sign, Sign::plus);
  EXPECT_NEAR(up.probability, 0.5, 1e-15);
  EXPECT_LT(max_abs_diff(up.post_state.matrix(), CMat{{1, 0}, {0, 0}}), 1e-15);
  const auto down = generalized_measure(maximally_mixed(2), kz, 0.9);
  EXPECT_LT(max_abs_diff(down.post_state.matrix(), CMat{{0, 0}, {0, 1}}),
            1e-15);

  const KrausPair kx = kraus_from_probe(gate_cnot(), ket0(), BlochAxis::x());
  for (double r : {0.1, 0.9}) {
    const auto o = generalized_measure(maximally_mixed(2), kx, r);
    EXPECT_NEAR(o.probability, 0.5, 1e-15);
    EXPECT_LT(max_abs_diff(o.post_state.matrix(), 0.5 * CMat::identity(2)),
              1e-15);
  }
}

TEST(Generalized, TrivialPair) {
  Sampler s(39);
  const DensityMatrix rho = s.mixed(2);
  const auto o = generalized_measure(rho, KrausPair::identity(), 0.999);
  EXPECT_EQ(o.sign, Sign::plus);
  EXPECT_DOUBLE_EQ(o.probability, 1.0);
  EXPECT_LT(max_abs_diff(o.post_state.matrix(), rho.matrix()), 1e-15);
}

TEST(Generalized, ProbabilitiesSumToOne) {
  Sampler s(40);
  for (int trial = 0; trial < 200; ++trial) {
    const KrausPair k = kraus_from_probe(expm_hermitian(s.hermitian(4), 0.5),
                                         s.pure(2), s.axis());
    const auto p = outcome_probabilities(s.mixed(2), k);
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
    const auto q = outcome_probabilities(s.pure(2), k);
    EXPECT_NEAR(q[0] + q[1], 1.0, 1e-12);
  }
}

TEST(Generalized, PureAndDensityAgree) {
  Sampler s(41);
  for (int trial = 0; trial < 100; ++trial) {
    const KrausPair k = kraus_from_probe(expm_hermitian(s.hermitian(4), 0.5),
                                         s.pure(2), s.axis());
    const PureState psi = s.pure(2);
    const double r = s.uniform();
    const auto a = generalized_measure(psi, k, r);
    const auto b = generalized_measure(density_from_pure(psi), k, r);
    EXPECT_EQ(a.sign, b.sign);
    EXPECT_NEAR(a.probability, b.probability, 1e-12);
    EXPECT_LT(max_abs_diff(density_from_pure(a.post_state).matrix(),
                           b.post_state.matrix()),
              1e-10);
  }
}

TEST(Generalized, DegenerateBranch) {
  const KrausPair kz = kraus_from_probe(gate_cnot(), ket0(), BlochAxis::z());
  EXPECT_THROW(branch_state(density_from_pure(ket0()), kz, Sign::minus),
               DegenerateOutcomeError);
}

}  // namespace
}  // namespace qtraj
