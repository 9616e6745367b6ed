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
#include <numbers>

#include <gtest/gtest.h>

#include "qtraj/errors.hpp"
#include "qtraj/info.hpp"
#include "sampling.hpp"

namespace qtraj {
namespace {

using testing::Sampler;

const double kR = 1.0 / std::sqrt(2.0);

// Bloch axis along which |v> is the + eigenvector.
BlochAxis axis_of(const CVec& v) {
  const CMat p = outer(v, v);
  const double x = 2.0 * p(1, 0).real();
  const double y = 2.0 * p(1, 0).imag();
  const double z = (p(0, 0) - p(1, 1)).real();
  const double n = std::sqrt(x * x + y * y + z * z);
  return {x / n, y / n, z / n};
}

TEST(Shannon, Values) {
  EXPECT_DOUBLE_EQ(shannon_entropy(0.5), 1.0);
  EXPECT_EQ(shannon_entropy(0.0), 0.0);
  EXPECT_EQ(shannon_entropy(1.0), 0.0);
  EXPECT_NEAR(shannon_entropy(0.25), 0.8112781244591328, 1e-15);
}

TEST(Shannon, RejectsOutOfRange) {
  EXPECT_THROW(shannon_entropy(1.5), ValidationError);
  EXPECT_THROW(shannon_entropy(-0.1), ValidationError);
}

TEST(VonNeumann, Values) {
  EXPECT_NEAR(von_neumann_entropy(maximally_mixed(2)), 1.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(maximally_mixed(4)), 2.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(CMat{{0.9, 0}, {0, 0.1}})),
              0.4689955935892811, 1e-15);
  Sampler s(51);
  for (int trial = 0; trial < 50; ++trial)
    EXPECT_NEAR(von_neumann_entropy(density_from_pure(s.pure(4))), 0.0,
                1e-10);
}

TEST(VonNeumann, Bounds) {
  Sampler s(52);
  for (int trial = 0; trial < 100; ++trial) {
    const double v = von_neumann_entropy(s.mixed(2));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
}

TEST(Entanglement, Examples) {
  Sampler s(53);
  EXPECT_NEAR(entanglement_entropy(joint_state(s.pure(2), s.pure(2))), 0.0,
              1e-10);
  EXPECT_NEAR(entanglement_entropy(PureState(CVec{kR, 0, 0, kR})), 1.0, 1e-12);
  const double th = std::numbers::pi / 6;
  EXPECT_NEAR(
      entanglement_entropy(PureState(CVec{std::cos(th), 0, 0, std::sin(th)})),
      0.8112781244591328, 1e-12);
}

TEST(Entanglement, SymmetricAcrossCut) {
  Sampler s(54);
  for (int trial = 0; trial < 300; ++trial) {
    const CMat rho = density_from_pure(s.pure(4)).matrix();
    const double ss =
        von_neumann_entropy(DensityMatrix(partial_trace(rho, Subsystem::system)));
    const double sp =
        von_neumann_entropy(DensityMatrix(partial_trace(rho, Subsystem::probe)));
    EXPECT_NEAR(ss, sp, 1e-10);
  }
}

TEST(InfoGain, CnotDichotomy) {
  const KrausPair kz = kraus_from_probe(gate_cnot(), ket0(), BlochAxis::z());
  const KrausPair kx = kraus_from_probe(gate_cnot(), ket0(), BlochAxis::x());
  EXPECT_NEAR(info_gain(maximally_mixed(2), kz), 1.0, 1e-12);
  EXPECT_NEAR(info_gain(maximally_mixed(2), kx), 0.0, 1e-12);
}

TEST(InfoGain, PureInputGainsNothing) {
  Sampler s(55);
  for (int trial = 0; trial < 100; ++trial) {
    const KrausPair k = kraus_from_probe(expm_hermitian(s.hermitian(4), 1.0),
                                         s.pure(2), s.axis());
    EXPECT_NEAR(info_gain(density_from_pure(s.pure(2)), k), 0.0, 1e-10);
  }
}

TEST(InfoGain, BoundedByOutcomeEntropy) {
  Sampler s(56);
  for (int trial = 0; trial < 300; ++trial) {
    const KrausPair k = kraus_from_probe(expm_hermitian(s.hermitian(4), 1.0),
                                         s.pure(2), s.axis());
    const DensityMatrix rho = s.mixed(2);
    const double gain = info_gain(rho, k);
    const double smeas = shannon_entropy(outcome_probabilities(rho, k)[0]);
    EXPECT_LE(gain, smeas + 1e-10);
    // One Kraus operator per outcome never raises the mean entropy.
    EXPECT_GE(gain, -1e-10);
  }
}

TEST(ProbeEntropy, EqualsEntanglementForPureInput) {
  Sampler s(57);
  for (int trial = 0; trial < 200; ++trial) {
    const CMat u = expm_hermitian(s.hermitian(4), 1.0);
    const PureState phi = s.pure(2);
    const PureState psi = s.pure(2);
    const KrausPair k = kraus_from_probe(u, phi, s.axis());
    const PureState joint(u * joint_state(psi, phi).amplitudes());
    EXPECT_NEAR(probe_entropy(density_from_pure(psi), k),
                entanglement_entropy(joint), 1e-10);
  }
}

TEST(Schmidt, MeasurementMinimality) {
  Sampler s(58);
  for (int trial = 0; trial < 200; ++trial) {
    const PureState joint = s.pure(4);
    const double se = entanglement_entropy(joint);
    const SchmidtForm f = schmidt_decompose(joint);
    const double best =
        probe_measurement_entropy(joint, axis_of(f.probe_basis[0]));
    EXPECT_NEAR(best, se, 1e-10);
    for (int a = 0; a < 20; ++a)
      EXPECT_GE(probe_measurement_entropy(joint, s.axis()), se - 1e-10);
  }
}

TEST(Pump, OneStep) {
  const PumpRun run = randomness_pump(1, 7);
  ASSERT_EQ(run.ledger.size(), 1u);
  EXPECT_DOUBLE_EQ(run.ledger[0].shannon_bits, 1.0);
  EXPECT_NEAR(run.ledger[0].info_gain_bits, 0.0, 1e-12);
  ASSERT_EQ(run.states.size(), 2u);
  EXPECT_NEAR(std::abs(run.states[1][0]) + std::abs(run.states[1][1]), 1.0,
              1e-12);
}

TEST(Pump, HundredBits) {
  const PumpRun run = randomness_pump(100, 8);
  ASSERT_EQ(run.ledger.size(), 100u);
  double total = 0.0, gain = 0.0;
  for (const auto& e : run.ledger) {
    total += e.shannon_bits;
    gain += e.info_gain_bits;
    EXPECT_NEAR(e.vn_entropy_bits, 0.0, 1e-12);
  }
  EXPECT_NEAR(total, 100.0, 1e-10);
  EXPECT_NEAR(gain, 0.0, 1e-10);
  EXPECT_NEAR(density_from_pure(run.states.back()).purity(), 1.0, 1e-12);
}

TEST(Pump, Deterministic) {
  const PumpRun a = randomness_pump(200, 9);
  const PumpRun b = randomness_pump(200, 9);
  EXPECT_EQ(a.outcomes, b.outcomes);
  const PumpRun c = randomness_pump(200, 10);
  EXPECT_NE(a.outcomes, c.outcomes);
}

}  // namespace
}  // namespace qtraj
