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

#include "qchan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qchan {

namespace {

// Below this many output entries the OpenMP fork/join costs more than it saves.
constexpr Index kParallelThreshold = 4096;

std::string shape_of(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NotCPTP: return "NotCPTP";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::ManifoldViolation: return "ManifoldViolation";
    case ErrorCode::SpectrumTooSingular: return "SpectrumTooSingular";
    case ErrorCode::LineSearchStall: return "LineSearchStall";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

bool all_finite(const Matrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

void require_finite(const Matrix& a, std::string_view what) {
  if (!all_finite(a))
    throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN/Inf entries");
}

void require_square(const Matrix& a, std::string_view what) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::DimMismatch,
                std::string(what) + " must be square, got " + shape_of(a));
}

double hermitian_residual(const Matrix& a) {
  return (a - a.adjoint()).norm();
}

Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

HermitianEig hermitian_eig(const Matrix& h) {
  require_square(h, "hermitian_eig input");
  require_finite(h, "hermitian_eig input");
  if (hermitian_residual(h) > kHermitianTol * (1.0 + h.norm()))
    throw Error(ErrorCode::NotHermitian, "‖H − H†‖_F exceeds tolerance");
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NonFinite, "eigen solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_sqrt_psd(const Matrix& a) {
  HermitianEig eig = hermitian_eig(a);
  if (eig.eigenvalues.size() == 0) return a;
  const double lmax = eig.eigenvalues.maxCoeff();
  const double lmin = eig.eigenvalues.minCoeff();
  if (lmin < -kPsdClamp * std::max(1.0, lmax))
    throw Error(ErrorCode::NotPSD,
                "minimum eigenvalue " + std::to_string(lmin) + " below clamp");
  Matrix root = spectral_apply(eig, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  return hermitian_part(root);
}

Matrix partial_trace_second(const Matrix& m, Index k, Index l) {
  if (k < 1 || l < 1 || m.rows() != k * l || m.cols() != k * l)
    throw Error(ErrorCode::DimMismatch,
                "partial_trace_second expects " + std::to_string(k * l) +
                    "x" + std::to_string(k * l) + ", got " + shape_of(m));
  Matrix out(k, k);
#pragma omp parallel for collapse(2) schedule(static) if (k * k * l > kParallelThreshold)
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < k; ++i) {
      out(i, j) = m.block(i * l, j * l, l, l).trace();
    }
  }
  return out;
}

Matrix partial_trace_first(const Matrix& m, Index k, Index l) {
  if (k < 1 || l < 1 || m.rows() != k * l || m.cols() != k * l)
    throw Error(ErrorCode::DimMismatch,
                "partial_trace_first expects " + std::to_string(k * l) +
                    "x" + std::to_string(k * l) + ", got " + shape_of(m));
  Matrix out = Matrix::Zero(l, l);
  // Sum of the diagonal l×l blocks; parallel over output columns.
#pragma omp parallel for schedule(static) if (k * l * l > kParallelThreshold)
  for (Index c = 0; c < l; ++c) {
    for (Index b = 0; b < k; ++b) {
      out.col(c) += m.block(b * l, b * l + c, l, 1);
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_finite(a, "kron lhs");
  require_finite(b, "kron rhs");
  const Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
#pragma omp parallel for collapse(2) schedule(static) if (ra * rb * ca * cb > kParallelThreshold)
  for (Index j = 0; j < ca; ++j) {
    for (Index i = 0; i < ra; ++i) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

Matrix reshape_vec_to_kraus(const Vector& v, Index n, Index m) {
  if (n < 1 || m < 1 || v.size() != n * m)
    throw Error(ErrorCode::DimMismatch,
                "vector of length " + std::to_string(v.size()) +
                    " cannot be reshaped to " + std::to_string(m) + "x" +
                    std::to_string(n));
  // Eigen storage is column-major, so this is a plain copy.
  return Eigen::Map<const Matrix>(v.data(), m, n);
}

Vector reshape_kraus_to_vec(const Matrix& k) {
  return Eigen::Map<const Vector>(k.data(), k.size());
}

Norms norms(const Matrix& a) {
  require_finite(a, "norms input");
  Norms out;
  out.frobenius = a.norm();
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& s = svd.singularValues();
  out.op = s.size() ? s(0) : 0.0;
  out.trace = s.sum();
  return out;
}

double operator_norm(const Matrix& a) { return norms(a).op; }

double trace_norm(const Matrix& a) { return norms(a).trace; }

double real_inner(const Matrix& a, const Matrix& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

}  // namespace qchan
