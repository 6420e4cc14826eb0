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

// Random instances and independent oracles shared by the test binaries.

#include <cmath>
#include <functional>
#include <vector>

#include "qchan/objectives.hpp"

namespace qchan::test {

inline Matrix gaussian(Index rows, Index cols, Rng& rng) {
  Matrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = rng.complex_normal();
  return a;
}

inline Matrix random_hermitian(Index n, Rng& rng) {
  const Matrix g = gaussian(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

inline Matrix random_psd(Index n, Rng& rng) {
  const Matrix g = gaussian(n, n, rng);
  return g * g.adjoint();
}

/// Full-rank random density matrix.
inline Matrix random_density(Index n, Rng& rng) {
  Matrix p = random_psd(n, rng) + 0.05 * Matrix::Identity(n, n);
  return p / p.trace();
}

inline Matrix pure_state(const Vector& psi) {
  const Vector u = psi / psi.norm();
  return u * u.adjoint();
}

inline Matrix matrix_unit(Index rows, Index cols, Index i, Index j) {
  Matrix e = Matrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

inline Matrix pauli_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

inline Matrix pauli_z() {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

/// Block (i, j) of the result is a_ij·B, written with explicit loops.
inline Matrix oracle_kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index p = 0; p < b.rows(); ++p)
        for (Index q = 0; q < b.cols(); ++q)
          out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return out;
}

/// Sum of the diagonal l×l sub-blocks of each k×k block position.
inline Matrix oracle_trace_second(const Matrix& m, Index k, Index l) {
  Matrix out = Matrix::Zero(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      for (Index r = 0; r < l; ++r) out(i, j) += m(i * l + r, j * l + r);
  return out;
}

inline Matrix oracle_trace_first(const Matrix& m, Index k, Index l) {
  Matrix out = Matrix::Zero(l, l);
  for (Index a = 0; a < l; ++a)
    for (Index b = 0; b < l; ++b)
      for (Index r = 0; r < k; ++r) out(a, b) += m(r * l + a, r * l + b);
  return out;
}

/// Φ(A) = Σ_l K_l A K_l†, summed operator by operator.
inline Matrix oracle_apply(const std::vector<Matrix>& ops, const Matrix& a) {
  Matrix out = Matrix::Zero(ops.front().rows(), ops.front().rows());
  for (const Matrix& k : ops) out += k * a * k.adjoint();
  return out;
}

/// Σ_ij E_ij ⊗ Φ(E_ij) from the defining formula.
inline Matrix oracle_choi(const std::vector<Matrix>& ops, Index n) {
  const Index m = ops.front().rows();
  Matrix c = Matrix::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      c += oracle_kron(matrix_unit(n, n, i, j), oracle_apply(ops, matrix_unit(n, n, i, j)));
  return c;
}

/// Random CPTP Choi matrix with the requested Kraus rank.
inline ChoiMatrix random_channel_of_rank(const ChannelDims& d, Index rank, Rng& rng) {
  const Matrix v = haar_isometry(rank * d.m, d.n, rng);
  std::vector<Matrix> ops;
  for (Index l = 0; l < rank; ++l) ops.push_back(v.middleRows(l * d.m, d.m));
  return kraus_to_choi(KrausSet(d, std::move(ops)));
}

/// Random unit tangent direction at k.
inline Matrix random_tangent(const StiefelPoint& k, Rng& rng) {
  Matrix d = project_tangent(k, gaussian(k.matrix().rows(), k.matrix().cols(), rng)).delta;
  return d / d.norm();
}

/// Central difference of F along the straight line K + tΔ.
inline double central_difference(const Objective& obj, const StiefelPoint& k, const Matrix& delta,
                                 double h) {
  const StiefelPoint plus(k.dims(), k.matrix() + h * delta);
  const StiefelPoint minus(k.dims(), k.matrix() - h * delta);
  return (value(obj, plus) - value(obj, minus)) / (2.0 * h);
}

/// Random instance of each objective kind. Gate kinds need n = m.
inline Objective random_objective(ObjectiveKind kind, const ChannelDims& d, Rng& rng) {
  switch (kind) {
    case ObjectiveKind::Expectation:
      return Objective::expectation(Observable(random_hermitian(d.m, rng)),
                                    DensityMatrix(random_density(d.n, rng)));
    case ObjectiveKind::FreeEnergy:
      return Objective::free_energy(Observable(random_hermitian(d.m, rng)),
                                    DensityMatrix(random_density(d.n, rng)), 0.5 + rng.uniform());
    case ObjectiveKind::ChannelGen:
      return Objective::channel_generation(random_channel(d, rng));
    case ObjectiveKind::GateGen:
      return Objective::gate_generation(random_unitary(d.n, rng));
    case ObjectiveKind::Grk: {
      const GrkStates s = grk_default_states(d.n);
      return Objective::grk(random_unitary(d.n, rng), s.rho1, s.rho2, s.rho3);
    }
  }
  return Objective::gate_generation(Matrix::Identity(d.n, d.n));
}

inline constexpr ObjectiveKind kAllKinds[] = {ObjectiveKind::Expectation, ObjectiveKind::FreeEnergy,
                                              ObjectiveKind::ChannelGen, ObjectiveKind::GateGen,
                                              ObjectiveKind::Grk};

inline double max_abs_entry(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace qchan::test
