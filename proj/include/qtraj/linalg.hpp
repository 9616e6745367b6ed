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

// Dense complex linear algebra for one q-bit (dim 2) and a system/probe
// pair (dim 4). Joint spaces use the basis order |00>,|01>,|10>,|11> with
// the system as the left tensor factor.

#include <array>
#include <complex>
#include <initializer_list>

namespace qtraj {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;

class CVec {
 public:
  CVec() : CVec(2) {}
  explicit CVec(int dim);
  CVec(std::initializer_list<cplx> entries);

  int dim() const noexcept { return dim_; }
  cplx& operator[](int i) noexcept { return data_[i]; }
  const cplx& operator[](int i) const noexcept { return data_[i]; }

  double norm() const noexcept;

  CVec& operator+=(const CVec& o);
  CVec& operator-=(const CVec& o);
  CVec& operator*=(cplx s) noexcept;

 private:
  int dim_;
  std::array<cplx, 4> data_{};
};

CVec operator+(CVec a, const CVec& b);
CVec operator-(CVec a, const CVec& b);
CVec operator*(cplx s, CVec v);

// <a|b>, conjugate-linear in the first argument.
cplx inner(const CVec& a, const CVec& b);

class CMat {
 public:
  CMat() : CMat(2) {}
  explicit CMat(int dim);
  // Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
  CMat(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMat identity(int dim);

  int dim() const noexcept { return dim_; }
  cplx& operator()(int r, int c) noexcept { return data_[r * dim_ + c]; }
  const cplx& operator()(int r, int c) const noexcept {
    return data_[r * dim_ + c];
  }

  CMat adjoint() const;
  cplx trace() const noexcept;
  double max_abs() const noexcept;
  bool is_finite() const noexcept;
  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_unitary(double tol) const;

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cplx s) noexcept;

 private:
  int dim_;
  std::array<cplx, 16> data_{};
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(cplx s, CMat m);
CMat operator*(const CMat& a, const CMat& b);
CVec operator*(const CMat& m, const CVec& v);

// max_ij |a_ij - b_ij|
double max_abs_diff(const CMat& a, const CMat& b);
double max_abs_diff(const CVec& a, const CVec& b);

// |a><b|
CMat outer(const CVec& a, const CVec& b);

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

// n.sigma for a 3-vector n
CMat pauli_dot(const std::array<double, 3>& n);

CMat tensor_product(const CMat& a, const CMat& b);
CVec tensor_product(const CVec& a, const CVec& b);

enum class Subsystem { system, probe };

// Reduced operator on the kept factor of a dim-4 operator.
CMat partial_trace(const CMat& m, Subsystem keep);

// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; each
// eigenvector has its first nonzero component real and non-negative.
struct HermitianEigen {
  int dim = 2;
  std::array<double, 4> values{};
  std::array<CVec, 4> vectors{};
};

HermitianEigen eigh(const CMat& h);

// exp(-i * theta * h) for Hermitian h.
CMat expm_hermitian(const CMat& h, double theta);

// Scales v by a unit phase so its first component with magnitude above
// tol is real and non-negative.
CVec fix_phase(CVec v, double tol = 1e-14);

}  // namespace qtraj
