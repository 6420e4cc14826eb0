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

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "qchan/error.hpp"

namespace qchan {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascend and the
/// columns of `eigenvectors` follow the same order.
struct HermitianEig {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

struct Norms {
  double frobenius = 0.0;
  double op = 0.0;  // largest singular value
  double trace = 0.0;
};

// Tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClamp = 1e-10;

bool all_finite(const Matrix& a);
void require_finite(const Matrix& a, std::string_view what);
void require_square(const Matrix& a, std::string_view what);

/// ‖A − A†‖_F
double hermitian_residual(const Matrix& a);
Matrix hermitian_part(const Matrix& a);

HermitianEig hermitian_eig(const Matrix& h);

/// Non-negative square root of a PSD matrix. Eigenvalues in
/// [−1e-10·max(1, λ_max), 0) are treated as zero.
Matrix matrix_sqrt_psd(const Matrix& a);

/// Applies `f` to the spectrum: V·diag(f(λ))·V†.
template <typename F>
Matrix spectral_apply(const HermitianEig& eig, F&& f) {
  RealVector mapped(eig.eigenvalues.size());
  for (Index i = 0; i < mapped.size(); ++i) mapped(i) = f(eig.eigenvalues(i));
  return eig.eigenvectors * mapped.cast<Complex>().asDiagonal() *
         eig.eigenvectors.adjoint();
}

// Tensor factors use the first factor as the slow index: row r = r1·l + r2.
Matrix partial_trace_second(const Matrix& m, Index k, Index l);
Matrix partial_trace_first(const Matrix& m, Index k, Index l);
Matrix kron(const Matrix& a, const Matrix& b);

/// Column-stacking reshape: column j of the m×n result holds v[j·m .. j·m+m).
Matrix reshape_vec_to_kraus(const Vector& v, Index n, Index m);
Vector reshape_kraus_to_vec(const Matrix& k);

Norms norms(const Matrix& a);
double operator_norm(const Matrix& a);
double trace_norm(const Matrix& a);

/// Re Tr(A†B), the real inner product on complex matrices.
double real_inner(const Matrix& a, const Matrix& b);

}  // namespace qchan
