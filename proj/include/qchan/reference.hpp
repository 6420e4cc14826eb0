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

#include "qchan/channel.hpp"

/// Serial, index-loop versions of the parallel kernels. They follow the
/// textbook definitions entry by entry and exist so tests and benchmarks
/// have an independent implementation to compare against.
namespace qchan::reference {

Matrix kron(const Matrix& a, const Matrix& b);
Matrix partial_trace_second(const Matrix& m, Index k, Index l);
Matrix partial_trace_first(const Matrix& m, Index k, Index l);

/// Φ(A)_ab = Σ_ij A_ij·C[(i,a),(j,b)]
Matrix apply_choi(const ChoiMatrix& c, const Matrix& a);
/// Σ_ij E_ij ⊗ Φ(E_ij) with Φ applied through the Kraus sum.
Matrix choi_blockwise(const KrausSet& k);
/// Columns are vec(Φ(E_ij)) in column-stacking order.
Matrix superoperator_from_action(const KrausSet& k);

}  // namespace qchan::reference
