// Copyright 2026 The qchan Authors
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

#include "qchan/reference.hpp"

namespace qchan::reference {

namespace {

Matrix unit(Index n, Index i, Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index p = 0; p < b.rows(); ++p)
        for (Index q = 0; q < b.cols(); ++q)
          out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return out;
}

Matrix partial_trace_second(const Matrix& m, Index k, Index l) {
  if (m.rows() != k * l || m.cols() != k * l)
    throw Error(ErrorCode::DimMismatch, "partial trace shape");
  Matrix out = Matrix::Zero(k, k);
  for (Index r1 = 0; r1 < k; ++r1)
    for (Index c1 = 0; c1 < k; ++c1)
      for (Index s = 0; s < l; ++s) out(r1, c1) += m(r1 * l + s, c1 * l + s);
  return out;
}

Matrix partial_trace_first(const Matrix& m, Index k, Index l) {
  if (m.rows() != k * l || m.cols() != k * l)
    throw Error(ErrorCode::DimMismatch, "partial trace shape");
  Matrix out = Matrix::Zero(l, l);
  for (Index r2 = 0; r2 < l; ++r2)
    for (Index c2 = 0; c2 < l; ++c2)
      for (Index s = 0; s < k; ++s) out(r2, c2) += m(s * l + r2, s * l + c2);
  return out;
}

Matrix apply_choi(const ChoiMatrix& c, const Matrix& a) {
  const Index n = c.dims().n, m = c.dims().m;
  if (a.rows() != n || a.cols() != n) throw Error(ErrorCode::DimMismatch, "input shape");
  Matrix out = Matrix::Zero(m, m);
  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) out(x, y) += a(i, j) * c.matrix()(i * m + x, j * m + y);
  return out;
}

Matrix choi_blockwise(const KrausSet& k) {
  const Index n = k.dims().n;
  Matrix out = Matrix::Zero(k.dims().nm(), k.dims().nm());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out += kron(unit(n, i, j), apply_kraus(k, unit(n, i, j)));
  return out;
}

Matrix superoperator_from_action(const KrausSet& k) {
  const Index n = k.dims().n, m = k.dims().m;
  Matrix out(m * m, n * n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const Matrix image = apply_kraus(k, unit(n, i, j));
      for (Index b = 0; b < m; ++b)
        for (Index a = 0; a < m; ++a) out(a + b * m, i + j * n) = image(a, b);
    }
  return out;
}

}  // namespace qchan::reference
