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

#include "qchan/stiefel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qchan {

namespace {

void require_same_dims(const ChannelDims& a, const ChannelDims& b) {
  if (!(a == b)) throw Error(ErrorCode::DimMismatch, "channel dimensions differ");
}

// (A†A)^{-1/2} for full-column-rank A.
Matrix inverse_sqrt_gram(const Matrix& a) {
  const HermitianEig eig = hermitian_eig(hermitian_part(a.adjoint() * a));
  if (eig.eigenvalues.minCoeff() <= 0.0)
    throw Error(ErrorCode::NonFinite, "rank-deficient retraction argument");
  return spectral_apply(eig, [](double x) { return 1.0 / std::sqrt(x); });
}

Alignment procrustes(const Matrix& x1, const Matrix& x2) {
  Eigen::JacobiSVD<Matrix> svd(x2.adjoint() * x1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Alignment out;
  out.u = svd.matrixU() * svd.matrixV().adjoint();
  out.distance = (x1 - x2 * out.u).norm();
  return out;
}

}  // namespace

double Rng::uniform() {
  // 53 random bits shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

OrbitParam::OrbitParam(ChannelDims dims, Matrix mixing) : dims_(dims), mixing_(std::move(mixing)) {
  require_valid_dims(dims_);
  if (mixing_.rows() != dims_.nm() || mixing_.cols() < 1 || mixing_.cols() > dims_.nm())
    throw Error(ErrorCode::DimMismatch, "orbit parameter must be nm×k with 1 ≤ k ≤ nm");
  require_finite(mixing_, "orbit parameter");
  const Index k = mixing_.cols();
  if ((mixing_.adjoint() * mixing_ - Matrix::Identity(k, k)).norm() > 1e-9)
    throw Error(ErrorCode::NotIsometry, "orbit parameter violates M†M = I_k");
}

TangentVector project_tangent(const StiefelPoint& k, const Matrix& g) {
  const Matrix& km = k.matrix();
  if (g.rows() != km.rows() || g.cols() != km.cols())
    throw Error(ErrorCode::DimMismatch, "ambient direction must match the point's shape");
  Matrix delta = g - km * hermitian_part(km.adjoint() * g);
  return {k, std::move(delta)};
}

double tangent_residual(const TangentVector& t) {
  const Matrix s = t.base.matrix().adjoint() * t.delta;
  return (s + s.adjoint()).norm();
}

StiefelPoint retract_polar(const StiefelPoint& k, const Matrix& delta) {
  if (delta.rows() != k.matrix().rows() || delta.cols() != k.matrix().cols())
    throw Error(ErrorCode::DimMismatch, "tangent shape does not match the point");
  // For tangent Δ, (K+Δ)†(K+Δ) = I + Δ†Δ; using the actual Gram matrix also
  // removes any drift accumulated in K.
  const Matrix moved = k.matrix() + delta;
  return StiefelPoint(k.dims(), moved * inverse_sqrt_gram(moved));
}

StiefelPoint retract_qr(const StiefelPoint& k, const Matrix& delta) {
  if (delta.rows() != k.matrix().rows() || delta.cols() != k.matrix().cols())
    throw Error(ErrorCode::DimMismatch, "tangent shape does not match the point");
  const Matrix moved = k.matrix() + delta;
  const Index rows = moved.rows(), cols = moved.cols();
  Eigen::HouseholderQR<Matrix> qr(moved);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return StiefelPoint(k.dims(), std::move(q));
}

StiefelPoint unitary_act(const Matrix& u, const StiefelPoint& k) {
  const ChannelDims& d = k.dims();
  if (u.rows() != d.nm() || u.cols() != d.nm())
    throw Error(ErrorCode::DimMismatch, "mixing unitary must be nm×nm");
  if (!is_unitary(u, 1e-8)) throw Error(ErrorCode::NotUnitary, "‖U†U − I‖_F > 1e-8");
  Matrix out = Matrix::Zero(d.stiefel_rows(), d.n);
  for (Index i = 0; i < d.nm(); ++i)
    for (Index j = 0; j < d.nm(); ++j) out.middleRows(i * d.m, d.m) += u(i, j) * k.block(j);
  return StiefelPoint(d, std::move(out));
}

bool same_orbit(const StiefelPoint& a, const StiefelPoint& b, double tol) {
  require_same_dims(a.dims(), b.dims());
  return (stiefel_to_choi(a).matrix() - stiefel_to_choi(b).matrix()).norm() <= tol;
}

Alignment orbit_align(const StiefelPoint& a, const StiefelPoint& b) {
  require_same_dims(a.dims(), b.dims());
  return procrustes(kraus_factor(a), kraus_factor(b));
}

double channel_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  require_same_dims(a.dims(), b.dims());
  require_cptp(a);
  require_cptp(b);
  return procrustes(matrix_sqrt_psd(a.matrix()), matrix_sqrt_psd(b.matrix())).distance;
}

double bures_choi_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  require_same_dims(a.dims(), b.dims());
  require_cptp(a);
  require_cptp(b);
  const double tr_a = a.matrix().trace().real();
  const double tr_b = b.matrix().trace().real();
  const double overlap =
      trace_norm(matrix_sqrt_psd(a.matrix()) * matrix_sqrt_psd(b.matrix()));
  const double squared = tr_a + tr_b - 2.0 * overlap;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (tr_a + tr_b);
  return squared <= floor ? 0.0 : std::sqrt(squared);
}

StiefelPoint orbit_parametrize(const ChoiMatrix& c, const OrbitParam& param) {
  require_same_dims(c.dims(), param.dims());
  const Matrix v = canonical_kraus_vectors(c);
  if (v.cols() != param.rank())
    throw Error(ErrorCode::RankMismatch,
                "orbit parameter has k = " + std::to_string(param.rank()) +
                    " but the Kraus rank is " + std::to_string(v.cols()));
  // w_l = Σ_i M_li·v_i for l = 1..nm.
  return stiefel_from_factor(c.dims(), v * param.matrix().transpose());
}

Matrix haar_isometry(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  // Make diag(R) real positive so the distribution is exactly Haar.
  for (Index j = 0; j < cols; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

StiefelPoint random_stiefel(const ChannelDims& dims, Rng& rng) {
  require_valid_dims(dims);
  return StiefelPoint(dims, haar_isometry(dims.stiefel_rows(), dims.n, rng));
}

Matrix random_unitary(Index size, Rng& rng) { return haar_isometry(size, size, rng); }

ChoiMatrix random_channel(const ChannelDims& dims, Rng& rng) {
  return stiefel_to_choi(random_stiefel(dims, rng));
}

}  // namespace qchan
