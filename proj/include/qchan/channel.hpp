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

#include <vector>

#include "qchan/linalg.hpp"

namespace qchan {

/// Input dimension n and output dimension m of a channel M_n → M_m.
struct ChannelDims {
  Index n = 1;
  Index m = 1;

  Index nm() const { return n * m; }
  /// Row count of the stacked Kraus matrix (nm blocks of m rows).
  Index stiefel_rows() const { return n * m * m; }

  friend bool operator==(const ChannelDims&, const ChannelDims&) = default;
};

void require_valid_dims(const ChannelDims& dims);

/// Hermitian, PSD (within the clamp) and unit trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho);

  Index dim() const { return rho_.rows(); }
  const Matrix& matrix() const { return rho_; }

 private:
  Matrix rho_;
};

class Observable {
 public:
  explicit Observable(Matrix o);

  Index dim() const { return o_.rows(); }
  const Matrix& matrix() const { return o_; }

 private:
  Matrix o_;
};

/// An nm×nm matrix tagged with its channel dimensions. Construction checks
/// shape and finiteness only; CPTP-ness is a property reported by validate()
/// and enforced by the operations that need it.
class ChoiMatrix {
 public:
  ChoiMatrix(ChannelDims dims, Matrix c);

  const ChannelDims& dims() const { return dims_; }
  const Matrix& matrix() const { return c_; }

 private:
  ChannelDims dims_;
  Matrix c_;
};

/// Ordered m×n Kraus operators. Construction checks shapes only.
class KrausSet {
 public:
  KrausSet(ChannelDims dims, std::vector<Matrix> ops);

  const ChannelDims& dims() const { return dims_; }
  const std::vector<Matrix>& operators() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

 private:
  ChannelDims dims_;
  std::vector<Matrix> ops_;
};

/// nm²×n vertical stack of nm Kraus blocks (each m×n). A valid point
/// satisfies K†K = I_n, which is the trace-preservation condition.
class StiefelPoint {
 public:
  StiefelPoint(ChannelDims dims, Matrix k);

  const ChannelDims& dims() const { return dims_; }
  const Matrix& matrix() const { return k_; }
  auto block(Index l) const { return k_.middleRows(l * dims_.m, dims_.m); }

  /// ‖K†K − I_n‖_F
  double manifold_residual() const;

 private:
  ChannelDims dims_;
  Matrix k_;
};

struct ValidationReport {
  double min_eigenvalue = 0.0;
  double tp_residual = 0.0;            // ‖Tr₂C − I_n‖_F
  double entry_bound_violation = 0.0;  // max(0, max|c_ij| − 1)
  double hermitian_residual = 0.0;     // ‖C − C†‖_F
  bool is_cptp = false;
};

inline constexpr double kCptpTol = 1e-9;
inline constexpr double kTpIngestTol = 1e-6;
inline constexpr double kDefaultRankTol = 1e-10;

// Representation conversions.
ChoiMatrix kraus_to_choi(const KrausSet& k);
ChoiMatrix stiefel_to_choi(const StiefelPoint& s);
KrausSet choi_to_minimal_kraus(const ChoiMatrix& c, double rank_tol = kDefaultRankTol);
StiefelPoint kraus_to_stiefel(const KrausSet& k);
KrausSet stiefel_to_kraus(const StiefelPoint& s);
StiefelPoint choi_to_stiefel_sqrt(const ChoiMatrix& c);

/// nm×nm matrix whose column l is the vectorized block l; X·X† is the Choi
/// matrix.
Matrix kraus_factor(const StiefelPoint& s);
StiefelPoint stiefel_from_factor(const ChannelDims& dims, const Matrix& x);

/// Canonically phased, √λ-scaled Choi eigenvectors in descending eigenvalue
/// order, one column per retained eigenvalue.
Matrix canonical_kraus_vectors(const ChoiMatrix& c, double rank_tol = kDefaultRankTol);

ValidationReport validate(const ChoiMatrix& c);
ValidationReport validate(const KrausSet& k);
void require_cptp(const ChoiMatrix& c);

Index kraus_rank(const ChoiMatrix& c, double rank_tol = kDefaultRankTol);

Matrix apply_kraus(const KrausSet& k, const Matrix& a);
Matrix apply_choi(const ChoiMatrix& c, const Matrix& a);

/// m²×n² matrix of the channel acting on column-stacked inputs:
/// S(a + b·m, i + j·n) = C(i·m + a, j·m + b).
Matrix superoperator_matrix(const ChoiMatrix& c);

// Example channels.
enum class TracedFactor { First, Second };

KrausSet identity_channel(Index n);
KrausSet unitary_channel(const Matrix& w);
/// ρ ↦ (1 − p)ρ + p·Tr(ρ)σ
KrausSet depolarize_to_state(Index n, const Matrix& sigma, double p);
/// Qubit into a qutrit whose last level is the erasure flag.
KrausSet erasing_channel(double eps);
/// Qubit into qubit ⊗ flag qubit; the flag records phase randomization.
KrausSet phase_erasing_channel(double eps);
KrausSet partial_trace_channel(Index k, Index l, TracedFactor which);

bool is_unitary(const Matrix& w, double tol = 1e-8);

}  // namespace qchan
