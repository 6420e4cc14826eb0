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

#include "qchan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qchan {

namespace {

constexpr Index kParallelThreshold = 4096;

std::string dims_str(const ChannelDims& d) {
  return "(" + std::to_string(d.n) + ", " + std::to_string(d.m) + ")";
}

Matrix factor_of(const KrausSet& k) {
  const ChannelDims& d = k.dims();
  Matrix x(d.nm(), static_cast<Index>(k.size()));
  for (std::size_t l = 0; l < k.size(); ++l)
    x.col(static_cast<Index>(l)) = reshape_kraus_to_vec(k.operators()[l]);
  return x;
}

double tp_residual_of(const KrausSet& k) {
  const Index n = k.dims().n;
  Matrix sum = Matrix::Zero(n, n);
  for (const Matrix& op : k.operators()) sum.noalias() += op.adjoint() * op;
  return (sum - Matrix::Identity(n, n)).norm();
}

// Multiplies the vector by a unit phase so its largest-magnitude entry (the
// first one on exact ties) is real and positive.
void fix_phase(Eigen::Ref<Vector> v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

Matrix embedding(Index rows, Index cols) {
  return Matrix::Identity(rows, cols);
}

}  // namespace

void require_valid_dims(const ChannelDims& dims) {
  if (dims.n < 1 || dims.m < 1)
    throw Error(ErrorCode::DimMismatch, "channel dims must be positive, got " + dims_str(dims));
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  require_square(rho_, "density matrix");
  require_finite(rho_, "density matrix");
  if (rho_.rows() < 1) throw Error(ErrorCode::BadParameter, "empty density matrix");
  if (hermitian_residual(rho_) > kHermitianTol)
    throw Error(ErrorCode::BadParameter, "density matrix is not Hermitian");
  const RealVector ev = hermitian_eig(rho_).eigenvalues;
  if (ev.minCoeff() < -kPsdClamp * std::max(1.0, ev.maxCoeff()))
    throw Error(ErrorCode::BadParameter, "density matrix is not PSD");
  if (std::abs(rho_.trace() - Complex(1.0)) > 1e-10)
    throw Error(ErrorCode::BadParameter, "density matrix trace is not 1");
}

Observable::Observable(Matrix o) : o_(std::move(o)) {
  require_square(o_, "observable");
  require_finite(o_, "observable");
  if (hermitian_residual(o_) > kHermitianTol)
    throw Error(ErrorCode::BadParameter, "observable is not Hermitian");
}

ChoiMatrix::ChoiMatrix(ChannelDims dims, Matrix c) : dims_(dims), c_(std::move(c)) {
  require_valid_dims(dims_);
  if (c_.rows() != dims_.nm() || c_.cols() != dims_.nm())
    throw Error(ErrorCode::DimMismatch, "Choi matrix must be nm×nm for dims " + dims_str(dims_));
  require_finite(c_, "Choi matrix");
}

KrausSet::KrausSet(ChannelDims dims, std::vector<Matrix> ops)
    : dims_(dims), ops_(std::move(ops)) {
  require_valid_dims(dims_);
  if (ops_.empty()) throw Error(ErrorCode::DimMismatch, "Kraus set is empty");
  for (const Matrix& op : ops_) {
    if (op.rows() != dims_.m || op.cols() != dims_.n)
      throw Error(ErrorCode::DimMismatch, "Kraus operator must be m×n for dims " + dims_str(dims_));
    require_finite(op, "Kraus operator");
  }
}

StiefelPoint::StiefelPoint(ChannelDims dims, Matrix k) : dims_(dims), k_(std::move(k)) {
  require_valid_dims(dims_);
  if (k_.rows() != dims_.stiefel_rows() || k_.cols() != dims_.n)
    throw Error(ErrorCode::DimMismatch, "Stiefel point must be nm²×n for dims " + dims_str(dims_));
  require_finite(k_, "Stiefel point");
}

double StiefelPoint::manifold_residual() const {
  return (k_.adjoint() * k_ - Matrix::Identity(dims_.n, dims_.n)).norm();
}

ChoiMatrix kraus_to_choi(const KrausSet& k) {
  const double residual = tp_residual_of(k);
  if (residual > kTpIngestTol)
    throw Error(ErrorCode::NotTracePreserving,
                "‖ΣK†K − I‖_F = " + std::to_string(residual));
  const Matrix x = factor_of(k);
  return ChoiMatrix(k.dims(), x * x.adjoint());
}

Matrix kraus_factor(const StiefelPoint& s) {
  const ChannelDims& d = s.dims();
  Matrix x(d.nm(), d.nm());
  for (Index l = 0; l < d.nm(); ++l) {
    // Column-stack block l: entry (a, j) goes to j·m + a.
    for (Index j = 0; j < d.n; ++j) x.col(l).segment(j * d.m, d.m) = s.block(l).col(j);
  }
  return x;
}

StiefelPoint stiefel_from_factor(const ChannelDims& dims, const Matrix& x) {
  require_valid_dims(dims);
  if (x.rows() != dims.nm() || x.cols() != dims.nm())
    throw Error(ErrorCode::DimMismatch, "Kraus factor must be nm×nm");
  Matrix k(dims.stiefel_rows(), dims.n);
  for (Index l = 0; l < dims.nm(); ++l)
    k.middleRows(l * dims.m, dims.m) = reshape_vec_to_kraus(x.col(l), dims.n, dims.m);
  return StiefelPoint(dims, std::move(k));
}

ChoiMatrix stiefel_to_choi(const StiefelPoint& s) {
  const double residual = s.manifold_residual();
  if (residual > kTpIngestTol)
    throw Error(ErrorCode::NotTracePreserving, "‖K†K − I‖_F = " + std::to_string(residual));
  const Matrix x = kraus_factor(s);
  return ChoiMatrix(s.dims(), x * x.adjoint());
}

ValidationReport validate(const ChoiMatrix& c) {
  const ChannelDims& d = c.dims();
  const Matrix& m = c.matrix();
  ValidationReport r;
  r.hermitian_residual = hermitian_residual(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  r.min_eigenvalue = solver.eigenvalues().minCoeff();
  r.tp_residual =
      (partial_trace_second(m, d.n, d.m) - Matrix::Identity(d.n, d.n)).norm();
  r.entry_bound_violation = std::max(0.0, m.cwiseAbs().maxCoeff() - 1.0);
  r.is_cptp = r.min_eigenvalue >= -kCptpTol && r.tp_residual <= kCptpTol &&
              r.hermitian_residual <= kCptpTol;
  return r;
}

ValidationReport validate(const KrausSet& k) {
  const Matrix x = factor_of(k);
  return validate(ChoiMatrix(k.dims(), x * x.adjoint()));
}

void require_cptp(const ChoiMatrix& c) {
  const ValidationReport r = validate(c);
  if (!r.is_cptp)
    throw Error(ErrorCode::NotCPTP,
                "min eigenvalue " + std::to_string(r.min_eigenvalue) + ", TP residual " +
                    std::to_string(r.tp_residual));
}

Matrix canonical_kraus_vectors(const ChoiMatrix& c, double rank_tol) {
  require_cptp(c);
  const HermitianEig eig = hermitian_eig(c.matrix());
  const Index size = eig.eigenvalues.size();
  const double lmax = eig.eigenvalues(size - 1);
  const double cutoff = rank_tol * lmax * static_cast<double>(c.dims().nm());
  Index kept = 0;
  while (kept < size && eig.eigenvalues(size - 1 - kept) > cutoff) ++kept;
  Matrix v(size, kept);
  for (Index i = 0; i < kept; ++i) {
    const Index src = size - 1 - i;
    v.col(i) = eig.eigenvectors.col(src);
    fix_phase(v.col(i));
    v.col(i) *= std::sqrt(eig.eigenvalues(src));
  }
  return v;
}

KrausSet choi_to_minimal_kraus(const ChoiMatrix& c, double rank_tol) {
  const Matrix v = canonical_kraus_vectors(c, rank_tol);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(v.cols()));
  for (Index i = 0; i < v.cols(); ++i)
    ops.push_back(reshape_vec_to_kraus(v.col(i), c.dims().n, c.dims().m));
  return KrausSet(c.dims(), std::move(ops));
}

Index kraus_rank(const ChoiMatrix& c, double rank_tol) {
  require_cptp(c);
  const RealVector ev = hermitian_eig(c.matrix()).eigenvalues;
  const double cutoff = rank_tol * ev.maxCoeff() * static_cast<double>(c.dims().nm());
  return (ev.array() > cutoff).count();
}

StiefelPoint kraus_to_stiefel(const KrausSet& k) {
  const ChannelDims& d = k.dims();
  std::size_t count = k.size();
  // Trailing exact zeros beyond nm carry no information and may be dropped.
  while (count > static_cast<std::size_t>(d.nm()) && k.operators()[count - 1].isZero(0.0))
    --count;
  if (count > static_cast<std::size_t>(d.nm()))
    throw Error(ErrorCode::DimMismatch, "more than nm nonzero Kraus operators");
  Matrix s = Matrix::Zero(d.stiefel_rows(), d.n);
  for (std::size_t l = 0; l < count; ++l)
    s.middleRows(static_cast<Index>(l) * d.m, d.m) = k.operators()[l];
  return StiefelPoint(d, std::move(s));
}

KrausSet stiefel_to_kraus(const StiefelPoint& s) {
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(s.dims().nm()));
  for (Index l = 0; l < s.dims().nm(); ++l) ops.emplace_back(s.block(l));
  return KrausSet(s.dims(), std::move(ops));
}

StiefelPoint choi_to_stiefel_sqrt(const ChoiMatrix& c) {
  require_cptp(c);
  return stiefel_from_factor(c.dims(), matrix_sqrt_psd(c.matrix()));
}

Matrix apply_kraus(const KrausSet& k, const Matrix& a) {
  const ChannelDims& d = k.dims();
  if (a.rows() != d.n || a.cols() != d.n)
    throw Error(ErrorCode::DimMismatch, "input must be n×n for dims " + dims_str(d));
  Matrix out = Matrix::Zero(d.m, d.m);
  for (const Matrix& op : k.operators()) out.noalias() += op * a * op.adjoint();
  return out;
}

Matrix apply_choi(const ChoiMatrix& c, const Matrix& a) {
  const ChannelDims& d = c.dims();
  if (a.rows() != d.n || a.cols() != d.n)
    throw Error(ErrorCode::DimMismatch, "input must be n×n for dims " + dims_str(d));
  const Index n = d.n, m = d.m;
  const Matrix& cm = c.matrix();
  Matrix out(m, m);
  // Φ(A) = Σ_ij A_ij·Φ(E_ij); block (i, j) of C is Φ(E_ij).
#pragma omp parallel for schedule(static) if (n * n * m * m > kParallelThreshold)
  for (Index b = 0; b < m; ++b) {
    Vector col = Vector::Zero(m);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) col += a(i, j) * cm.block(i * m, j * m + b, m, 1);
    out.col(b) = col;
  }
  return out;
}

Matrix superoperator_matrix(const ChoiMatrix& c) {
  const Index n = c.dims().n, m = c.dims().m;
  const Matrix& cm = c.matrix();
  Matrix s(m * m, n * n);
#pragma omp parallel for collapse(2) schedule(static) if (n * n * m * m > kParallelThreshold)
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      for (Index b = 0; b < m; ++b)
        for (Index a = 0; a < m; ++a) s(a + b * m, i + j * n) = cm(i * m + a, j * m + b);
  return s;
}

bool is_unitary(const Matrix& w, double tol) {
  if (w.rows() != w.cols() || !all_finite(w)) return false;
  return (w.adjoint() * w - Matrix::Identity(w.rows(), w.cols())).norm() <= tol;
}

KrausSet identity_channel(Index n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "identity channel needs n ≥ 1");
  return KrausSet({n, n}, {Matrix::Identity(n, n)});
}

KrausSet unitary_channel(const Matrix& w) {
  if (w.rows() < 1 || !is_unitary(w))
    throw Error(ErrorCode::BadParameter, "gate matrix is not unitary within 1e-8");
  return KrausSet({w.rows(), w.rows()}, {w});
}

KrausSet depolarize_to_state(Index n, const Matrix& sigma, double p) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "depolarizing channel needs n ≥ 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorCode::BadParameter, "mixing probability must lie in [0, 1]");
  if (sigma.rows() != n || sigma.cols() != n)
    throw Error(ErrorCode::BadParameter, "target state must be n×n");
  try {
    DensityMatrix checked(sigma);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadParameter, std::string("target state: ") + e.what());
  }
  // Choi = (1 − p)|Ω⟩⟨Ω| + p·I_n ⊗ σ; its eigen-decomposition gives at most
  // n² operators, fewer than the naive 1 + n² construction.
  const Vector omega = reshape_kraus_to_vec(Matrix::Identity(n, n));
  Matrix c = (1.0 - p) * omega * omega.adjoint() + p * kron(Matrix::Identity(n, n), sigma);
  return choi_to_minimal_kraus(ChoiMatrix({n, n}, hermitian_part(c)));
}

KrausSet erasing_channel(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw Error(ErrorCode::BadParameter, "erasure probability must lie in [0, 1]");
  std::vector<Matrix> ops;
  if (eps < 1.0) ops.push_back(std::sqrt(1.0 - eps) * embedding(3, 2));
  if (eps > 0.0) {
    for (Index j = 0; j < 2; ++j) {
      Matrix flag = Matrix::Zero(3, 2);
      flag(2, j) = std::sqrt(eps);
      ops.push_back(std::move(flag));
    }
  }
  return KrausSet({2, 3}, std::move(ops));
}

KrausSet phase_erasing_channel(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw Error(ErrorCode::BadParameter, "erasure probability must lie in [0, 1]");
  Matrix ket0 = Matrix::Zero(2, 1), ket1 = Matrix::Zero(2, 1);
  ket0(0, 0) = 1.0;
  ket1(1, 0) = 1.0;
  Matrix pauli_z = Matrix::Zero(2, 2);
  pauli_z(0, 0) = 1.0;
  pauli_z(1, 1) = -1.0;
  const Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> ops;
  if (eps < 1.0) ops.push_back(std::sqrt(1.0 - eps) * kron(id, ket0));
  if (eps > 0.0) {
    ops.push_back(std::sqrt(eps / 2.0) * kron(id, ket1));
    ops.push_back(std::sqrt(eps / 2.0) * kron(pauli_z, ket1));
  }
  return KrausSet({2, 4}, std::move(ops));
}

KrausSet partial_trace_channel(Index k, Index l, TracedFactor which) {
  if (k < 1 || l < 1) throw Error(ErrorCode::BadParameter, "factor dimensions must be positive");
  std::vector<Matrix> ops;
  if (which == TracedFactor::Second) {
    for (Index i = 0; i < l; ++i) {
      Matrix bra = Matrix::Zero(1, l);
      bra(0, i) = 1.0;
      ops.push_back(kron(Matrix::Identity(k, k), bra));
    }
    return KrausSet({k * l, k}, std::move(ops));
  }
  for (Index i = 0; i < k; ++i) {
    Matrix bra = Matrix::Zero(1, k);
    bra(0, i) = 1.0;
    ops.push_back(kron(bra, Matrix::Identity(l, l)));
  }
  return KrausSet({k * l, l}, std::move(ops));
}

}  // namespace qchan
