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

#include <cstdint>
#include <random>

#include "qchan/channel.hpp"

namespace qchan {

/// Seeded generator with a platform-independent normal sampler.
///
/// std::normal_distribution differs between standard libraries, so normals
/// are drawn by Box–Muller from the raw 64-bit engine output instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in (0, 1).
  double uniform();
  double normal();
  /// Standard complex Gaussian: E|z|² = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 of base + counter; used to give every run its own stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter);

struct TangentVector {
  StiefelPoint base;
  Matrix delta;  // nm²×n, K†Δ + Δ†K = 0
};

/// nm×k isometry parametrizing the orbit of a Kraus-rank-k channel.
class OrbitParam {
 public:
  OrbitParam(ChannelDims dims, Matrix mixing);

  const ChannelDims& dims() const { return dims_; }
  Index rank() const { return mixing_.cols(); }
  const Matrix& matrix() const { return mixing_; }

 private:
  ChannelDims dims_;
  Matrix mixing_;
};

struct Alignment {
  /// Maximizes Re Tr(U†X₂†X₁) where X_i are the Kraus factors. The aligned
  /// representative of the second point is unitary_act(u.transpose(), K₂).
  Matrix u;
  double distance = 0.0;  // ‖X₁ − X₂U‖_F
};

TangentVector project_tangent(const StiefelPoint& k, const Matrix& g);
double tangent_residual(const TangentVector& t);


/// Polar retraction: the orthonormal polar factor of K + Δ.
StiefelPoint retract_polar(const StiefelPoint& k, const Matrix& delta);
/// QR retraction with positive-diagonal R.
StiefelPoint retract_qr(const StiefelPoint& k, const Matrix& delta);

/// Mixes Kraus blocks: block i of the result is Σ_j u_ij·(block j).
StiefelPoint unitary_act(const Matrix& u, const StiefelPoint& k);

bool same_orbit(const StiefelPoint& a, const StiefelPoint& b, double tol = 1e-8);
Alignment orbit_align(const StiefelPoint& a, const StiefelPoint& b);

/// Quotient chordal distance between channels, via Procrustes alignment of
/// the √C representatives.
double channel_distance(const ChoiMatrix& a, const ChoiMatrix& b);
/// √(Tr C₁ + Tr C₂ − 2‖√C₁√C₂‖_tr); squared values at round-off level are
/// reported as exactly zero.
double bures_choi_distance(const ChoiMatrix& a, const ChoiMatrix& b);

StiefelPoint orbit_parametrize(const ChoiMatrix& c, const OrbitParam& param);

/// Haar-distributed rows×cols isometry (QR of a complex Gaussian).
Matrix haar_isometry(Index rows, Index cols, Rng& rng);
StiefelPoint random_stiefel(const ChannelDims& dims, Rng& rng);
Matrix random_unitary(Index size, Rng& rng);
/// Choi matrix of a channel drawn through random_stiefel.
ChoiMatrix random_channel(const ChannelDims& dims, Rng& rng);

}  // namespace qchan
