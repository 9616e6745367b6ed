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

#include "qtraj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qtraj/errors.hpp"

namespace qtraj {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw StructuralError("dimension must be 2 or 4, got " +
                          std::to_string(dim));
  }
}

void check_same(int a, int b, const char* what) {
  if (a != b) {
    throw StructuralError(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

//------------------------------------------------------------------------
// CVec
//------------------------------------------------------------------------

CVec::CVec(int dim) : dim_(dim) { check_dim(dim); }

CVec::CVec(std::initializer_list<cplx> entries)
    : dim_(static_cast<int>(entries.size())) {
  check_dim(dim_);
  std::copy(entries.begin(), entries.end(), data_.begin());
}

double CVec::norm() const noexcept {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::norm(data_[i]);
  return std::sqrt(s);
}

CVec& CVec::operator+=(const CVec& o) {
  check_same(dim_, o.dim_, "CVec +");
  for (int i = 0; i < dim_; ++i) data_[i] += o.data_[i];
  return *this;
}

CVec& CVec::operator-=(const CVec& o) {
  check_same(dim_, o.dim_, "CVec -");
  for (int i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
  return *this;
}

CVec& CVec::operator*=(cplx s) noexcept {
  for (int i = 0; i < dim_; ++i) data_[i] *= s;
  return *this;
}

CVec operator+(CVec a, const CVec& b) { return a += b; }
CVec operator-(CVec a, const CVec& b) { return a -= b; }
CVec operator*(cplx s, CVec v) { return v *= s; }

cplx inner(const CVec& a, const CVec& b) {
  check_same(a.dim(), b.dim(), "inner");
  cplx s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

//------------------------------------------------------------------------
// CMat
//------------------------------------------------------------------------

CMat::CMat(int dim) : dim_(dim) { check_dim(dim); }

CMat::CMat(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(static_cast<int>(rows.size())) {
  check_dim(dim_);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_) {
      throw StructuralError("CMat rows must be square");
    }
    int c = 0;
    for (const auto& v : row) (*this)(r, c++) = v;
    ++r;
  }
}

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::adjoint() const {
  CMat out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx CMat::trace() const noexcept {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const noexcept {
  double m = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(data_[i]));
  return m;
}

bool CMat::is_finite() const noexcept {
  for (int i = 0; i < dim_ * dim_; ++i) {
    if (!std::isfinite(data_[i].real()) || !std::isfinite(data_[i].imag()))
      return false;
  }
  return true;
}

bool CMat::is_hermitian(double tol) const {
  return is_finite() && max_abs_diff(*this, adjoint()) <= tol;
}

bool CMat::is_unitary(double tol) const {
  return is_finite() &&
         max_abs_diff(adjoint() * (*this), CMat::identity(dim_)) <= tol;
}

CMat& CMat::operator+=(const CMat& o) {
  check_same(dim_, o.dim_, "CMat +");
  for (int i = 0; i < dim_ * dim_; ++i) data_[i] += o.data_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  check_same(dim_, o.dim_, "CMat -");
  for (int i = 0; i < dim_ * dim_; ++i) data_[i] -= o.data_[i];
  return *this;
}

CMat& CMat::operator*=(cplx s) noexcept {
  for (int i = 0; i < dim_ * dim_; ++i) data_[i] *= s;
  return *this;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(cplx s, CMat m) { return m *= s; }

CMat operator*(const CMat& a, const CMat& b) {
  check_same(a.dim(), b.dim(), "CMat *");
  const int n = a.dim();
  CMat out(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

CVec operator*(const CMat& m, const CVec& v) {
  check_same(m.dim(), v.dim(), "CMat * CVec");
  CVec out(v.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  check_same(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

double max_abs_diff(const CVec& a, const CVec& b) {
  check_same(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CMat outer(const CVec& a, const CVec& b) {
  check_same(a.dim(), b.dim(), "outer");
  CMat out(a.dim());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out(r, c) = a[r] * std::conj(b[c]);
  return out;
}

CMat pauli_x() { return CMat{{0.0, 1.0}, {1.0, 0.0}}; }
CMat pauli_y() { return CMat{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
CMat pauli_z() { return CMat{{1.0, 0.0}, {0.0, -1.0}}; }

CMat pauli_dot(const std::array<double, 3>& n) {
  return CMat{{n[2], cplx(n[0], -n[1])}, {cplx(n[0], n[1]), -n[2]}};
}

CMat tensor_product(const CMat& a, const CMat& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw StructuralError("tensor_product expects two dim-2 operators");
  }
  CMat out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

CVec tensor_product(const CVec& a, const CVec& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw StructuralError("tensor_product expects two dim-2 vectors");
  }
  return CVec{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

CMat partial_trace(const CMat& m, Subsystem keep) {
  if (m.dim() != 4) throw StructuralError("partial_trace expects dim 4");
  CMat out(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        if (keep == Subsystem::system) {
          out(i, j) += m(2 * i + k, 2 * j + k);
        } else {
          out(i, j) += m(2 * k + i, 2 * k + j);
        }
      }
  return out;
}

CVec fix_phase(CVec v, double tol) {
  for (int i = 0; i < v.dim(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > tol) {
      v *= std::conj(v[i]) / mag;
      v[i] = mag;
      break;
    }
  }
  return v;
}

//------------------------------------------------------------------------
// Hermitian eigensolver
//------------------------------------------------------------------------

namespace {

// Unitary rotation in the (p, q) plane that diagonalizes the Hermitian
// block [[a, b], [conj(b), d]]. With b = |b| e^{i phi} the block factors as
// P R diag(a - t|b|, d + t|b|) R^T P^dagger, P = diag(e^{i phi}, 1) and R
// the real Jacobi rotation with tangent t.
struct Rotation {
  cplx vpp, vpq, vqp, vqq;
};

Rotation jacobi_rotation(double a, cplx b, double d) {
  const double mag = std::abs(b);
  const cplx phase = b / mag;
  const double tau = (d - a) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {phase * c, phase * s, -s, c};
}

double off_diagonal_norm(const CMat& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen eigh(const CMat& h) {
  if (!h.is_hermitian(kHermitianTol * std::max(1.0, h.max_abs()))) {
    throw ValidationError("eigh: matrix is not Hermitian");
  }
  const int n = h.dim();
  CMat a = h;
  CMat v = CMat::identity(n);
  const double scale = std::max(h.max_abs(), 1e-300);

  // Cyclic Jacobi. For n = 2 one rotation is exact.
  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-17 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        if (std::abs(b) <= 1e-300) continue;
        const Rotation rot =
            jacobi_rotation(a(p, p).real(), b, a(q, q).real());
        // a <- J^dagger a J, v <- v J, with J acting on columns p and q.
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * rot.vpp + akq * rot.vqp;
          a(k, q) = akp * rot.vpq + akq * rot.vqq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(rot.vpp) * apk + std::conj(rot.vqp) * aqk;
          a(q, k) = std::conj(rot.vpq) * apk + std::conj(rot.vqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * rot.vpp + vkq * rot.vqp;
          v(k, q) = vkp * rot.vpq + vkq * rot.vqq;
        }
      }
    }
  }

  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.begin() + n, [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigen out;
  out.dim = n;
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.values[k] = a(src, src).real();
    CVec col(n);
    for (int r = 0; r < n; ++r) col[r] = v(r, src);
    out.vectors[k] = fix_phase(col);
  }
  for (int k = n; k < 4; ++k) out.vectors[k] = CVec(n);
  return out;
}

CMat expm_hermitian(const CMat& h, double theta) {
  if (!h.is_hermitian(kHermitianTol * std::max(1.0, h.max_abs()))) {
    throw ValidationError("expm_hermitian: generator is not Hermitian");
  }
  const int n = h.dim();
  if (theta == 0.0) return CMat::identity(n);
  const HermitianEigen e = eigh(h);
  CMat u(n);
  for (int k = 0; k < n; ++k) {
    const cplx phase = std::polar(1.0, -theta * e.values[k]);
    u += phase * outer(e.vectors[k], e.vectors[k]);
  }
  return u;
}

}  // namespace qtraj
