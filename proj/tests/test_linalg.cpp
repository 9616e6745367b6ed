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
#include "qtraj/linalg.hpp"
#include "sampling.hpp"

namespace qtraj {
namespace {

using testing::Sampler;

const cplx I{0.0, 1.0};

// exp(-i theta h) by scaling and squaring of a truncated Taylor series.
CMat taylor_expm(const CMat& h, double theta) {
  const int n = h.dim();
  const int squarings = 8;
  const CMat a = (-I * theta / std::pow(2.0, squarings)) * h;
  CMat sum = CMat::identity(n);
  CMat term = CMat::identity(n);
  for (int k = 1; k < 30; ++k) {
    term = (1.0 / k) * (term * a);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

TEST(Kron, SigmaZSigmaX) {
  const CMat k = tensor_product(pauli_z(), pauli_x());
  const CMat want{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}};
  EXPECT_EQ(max_abs_diff(k, want), 0.0);
}

TEST(Kron, MatchesIndexFormula) {
  Sampler s(11);
  for (int trial = 0; trial < 50; ++trial) {
    const CMat a = s.general(2), b = s.general(2);
    const CMat k = tensor_product(a, b);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k2 = 0; k2 < 2; ++k2)
          for (int l = 0; l < 2; ++l)
            EXPECT_EQ(k(2 * i + k2, 2 * j + l), a(i, j) * b(k2, l));
  }
}

TEST(Kron, VectorOrder) {
  const CVec v = tensor_product(CVec{1, 0}, CVec{0, 1});
  EXPECT_EQ(max_abs_diff(v, CVec{0, 1, 0, 0}), 0.0);
}

TEST(Kron, Bilinear) {
  Sampler s(12);
  const CMat a = s.general(2), b = s.general(2), c = s.general(2);
  const cplx z{0.3, -1.7};
  const CMat lhs = tensor_product(a + z * b, c);
  const CMat rhs = tensor_product(a, c) + z * tensor_product(b, c);
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-13);
  const CMat lhs2 = tensor_product(c, a + z * b);
  const CMat rhs2 = tensor_product(c, a) + z * tensor_product(c, b);
  EXPECT_LT(max_abs_diff(lhs2, rhs2), 1e-13);
}

TEST(Kron, MixedProduct) {
  Sampler s(13);
  const CMat a = s.general(2), b = s.general(2), c = s.general(2),
             d = s.general(2);
  EXPECT_LT(max_abs_diff(tensor_product(a, b) * tensor_product(c, d),
                         tensor_product(a * c, b * d)),
            1e-12);
}

TEST(PartialTrace, BellState) {
  const double r = 1.0 / std::sqrt(2.0);
  const CVec bell{r, 0, 0, r};
  const CMat rho = outer(bell, bell);
  const CMat half = 0.5 * CMat::identity(2);
  EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::system), half), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(rho, Subsystem::probe), half), 1e-15);
}

TEST(PartialTrace, ProductFactorizes) {
  Sampler s(14);
  for (int trial = 0; trial < 100; ++trial) {
    const CMat a = s.general(2), b = s.general(2);
    const CMat ab = tensor_product(a, b);
    EXPECT_LT(max_abs_diff(partial_trace(ab, Subsystem::system),
                           b.trace() * a),
              1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(ab, Subsystem::probe),
                           a.trace() * b),
              1e-12);
  }
}

TEST(PartialTrace, ExplicitSums) {
  Sampler s(15);
  const CMat m = s.general(4);
  const CMat keep_s = partial_trace(m, Subsystem::system);
  const CMat keep_p = partial_trace(m, Subsystem::probe);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(keep_s(i, j), m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1));
      EXPECT_EQ(keep_p(i, j), m(i, j) + m(2 + i, 2 + j));
    }
  }
}

TEST(PartialTrace, RejectsDim2) {
  EXPECT_THROW(partial_trace(pauli_x(), Subsystem::system), StructuralError);
}

TEST(Eigh, Reconstructs) {
  Sampler s(16);
  for (int dim : {2, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      const CMat h = s.hermitian(dim);
      const HermitianEigen e = eigh(h);
      CMat back(dim);
      for (int k = 0; k < dim; ++k) {
        back += e.values[k] * outer(e.vectors[k], e.vectors[k]);
        if (k > 0) {
          EXPECT_LE(e.values[k - 1], e.values[k]);
        }
        for (int l = 0; l < dim; ++l) {
          const double want = k == l ? 1.0 : 0.0;
          EXPECT_NEAR(std::abs(inner(e.vectors[k], e.vectors[l])), want,
                      1e-12);
        }
      }
      EXPECT_LT(max_abs_diff(back, h), 1e-12 * (1.0 + h.max_abs()));
    }
  }
}

TEST(Eigh, PhaseConvention) {
  Sampler s(17);
  const HermitianEigen e = eigh(s.hermitian(4));
  for (int k = 0; k < 4; ++k) {
    int first = 0;
    while (std::abs(e.vectors[k][first]) < 1e-14) ++first;
    EXPECT_GE(e.vectors[k][first].real(), 0.0);
    EXPECT_EQ(e.vectors[k][first].imag(), 0.0);
  }
}

TEST(Eigh, Degenerate) {
  const HermitianEigen e = eigh(CMat::identity(4));
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(e.values[k], 1.0);
}

TEST(Eigh, RejectsNonHermitian) {
  CMat m = pauli_x();
  m(0, 1) = 2.0;
  EXPECT_THROW(eigh(m), ValidationError);
}

TEST(Expm, SigmaZQuarterTurn) {
  const CMat u = expm_hermitian(pauli_z(), std::numbers::pi / 2);
  const CMat want{{-I, 0}, {0, I}};
  EXPECT_LT(max_abs_diff(u, want), 1e-15);
}

TEST(Expm, ZeroAngleIsIdentity) {
  Sampler s(18);
  EXPECT_EQ(max_abs_diff(expm_hermitian(s.hermitian(4), 0.0),
                         CMat::identity(4)),
            0.0);
}

TEST(Expm, MatchesTaylorSeries) {
  Sampler s(19);
  for (int dim : {2, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      const CMat h = s.hermitian(dim);
      const double theta = 0.05 + 2.0 * s.uniform();
      EXPECT_LT(max_abs_diff(expm_hermitian(h, theta), taylor_expm(h, theta)),
                1e-12);
    }
  }
}

TEST(Expm, Unitary) {
  Sampler s(20);
  for (int trial = 0; trial < 200; ++trial) {
    const CMat u = expm_hermitian(s.hermitian(4), 3.0 * s.uniform());
    EXPECT_TRUE(u.is_unitary(1e-12));
  }
}

TEST(Pauli, Algebra) {
  EXPECT_LT(max_abs_diff(pauli_x() * pauli_y(), I * pauli_z()), 1e-16);
  EXPECT_LT(max_abs_diff(pauli_dot({0, 0, 1}), pauli_z()), 1e-16);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(pauli_dot({r, r, 0}), r * (pauli_x() + pauli_y())),
            1e-16);
}

}  // namespace
}  // namespace qtraj
