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

// Random inputs for property tests. Fixed seeds keep failures reproducible.

#include <cmath>
#include <numbers>
#include <random>

#include "qtraj/linalg.hpp"
#include "qtraj/measure.hpp"
#include "qtraj/state.hpp"

namespace qtraj::testing {

class Sampler {
 public:
  explicit Sampler(unsigned seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }

  CVec gaussian_vec(int dim) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = {normal(), normal()};
    return v;
  }

  PureState pure(int dim) {
    return PureState::normalize(gaussian_vec(dim));
  }

  CMat hermitian(int dim) {
    CMat m(dim);
    for (int r = 0; r < dim; ++r) {
      m(r, r) = normal();
      for (int c = r + 1; c < dim; ++c) {
        m(r, c) = {normal(), normal()};
        m(c, r) = std::conj(m(r, c));
      }
    }
    return m;
  }

  CMat general(int dim) {
    CMat m(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = {normal(), normal()};
    return m;
  }

  BlochAxis axis() {
    const double z = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform();
    const double s = std::sqrt(1.0 - z * z);
    const double x = s * std::cos(phi);
    const double y = s * std::sin(phi);
    const double n = std::sqrt(x * x + y * y + z * z);
    return {x / n, y / n, z / n};
  }

  // Random mixed state: G G^dagger / Tr.
  DensityMatrix mixed(int dim) {
    const CMat g = general(dim);
    CMat m = g * g.adjoint();
    m *= 1.0 / m.trace().real();
    for (int i = 0; i < dim; ++i) m(i, i) = m(i, i).real();
    for (int r = 0; r < dim; ++r)
      for (int c = r + 1; c < dim; ++c) m(c, r) = std::conj(m(r, c));
    return DensityMatrix(m);
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qtraj::testing
