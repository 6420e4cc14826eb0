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

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "qchan/stiefel.hpp"

namespace qchan {

enum class ObjectiveKind { Expectation, FreeEnergy, ChannelGen, GateGen, Grk };
enum class Direction { Minimize, Maximize };

std::string_view to_string(ObjectiveKind kind);

struct ExpectationParams {
  Observable observable;
  DensityMatrix rho0;
};

struct FreeEnergyParams {
  Observable observable;
  DensityMatrix rho0;
  double beta;
};

struct ChannelGenParams {
  ChoiMatrix target;
};

struct GateGenParams {
  Matrix gate;
  ChoiMatrix target;  // Choi matrix of ρ ↦ WρW†
};

struct GrkParams {
  Matrix gate;
  std::array<DensityMatrix, 3> states;
};

using ObjectiveParams =
    std::variant<ExpectationParams, FreeEnergyParams, ChannelGenParams, GateGenParams, GrkParams>;

/// One of the five kinematic functionals together with its parameters and
/// the optimization direction. Immutable once built.
class Objective {
 public:
  static Objective expectation(Observable o, DensityMatrix rho0,
                               Direction dir = Direction::Maximize);
  static Objective free_energy(Observable o, DensityMatrix rho0, double beta,
                               Direction dir = Direction::Maximize);
  static Objective channel_generation(ChoiMatrix target, Direction dir = Direction::Minimize);
  static Objective gate_generation(Matrix gate, Direction dir = Direction::Minimize);
  /// Three-state gate functional. Throws BadParameter unless ρ₁ has n
  /// distinct positive eigenvalues, ρ₂ is a rank-one projector overlapping
  /// every eigenvector of ρ₁, and ρ₃ = I/n.
  static Objective grk(Matrix gate, DensityMatrix rho1, DensityMatrix rho2, DensityMatrix rho3,
                       Direction dir = Direction::Minimize);

  ObjectiveKind kind() const { return kind_; }
  Direction direction() const { return direction_; }
  const ChannelDims& dims() const { return dims_; }
  const ObjectiveParams& params() const { return params_; }

 private:
  Objective(ObjectiveKind kind, Direction dir, ChannelDims dims, ObjectiveParams params)
      : kind_(kind), direction_(dir), dims_(dims), params_(std::move(params)) {}

  ObjectiveKind kind_;
  Direction direction_;
  ChannelDims dims_;
  ObjectiveParams params_;
};

/// Euclidean gradient in the ambient space, paired so that the directional
/// derivative along Δ is 2·Re Tr(G†Δ).
struct Gradient {
  StiefelPoint base;
  Matrix g;
};

inline constexpr double kEntropyLogFloor = 1e-12;
inline constexpr double kEntropySingular = 1e-9;

/// Σ_l K_l·ρ·K_l† over the blocks of the stacked matrix.
Matrix channel_output(const StiefelPoint& k, const Matrix& rho);
/// −Σ λ ln λ over eigenvalues above 1e-12.
double von_neumann_entropy(const Matrix& rho);

double value(const Objective& obj, const StiefelPoint& k);
/// Evaluates through the minimal Kraus decomposition of a Choi matrix.
double value_at_choi(const Objective& obj, const ChoiMatrix& c);
Gradient euclidean_gradient(const Objective& obj, const StiefelPoint& k);
TangentVector riemannian_gradient(const Objective& obj, const StiefelPoint& k);


struct GrkStates {
  DensityMatrix rho1;
  DensityMatrix rho2;
  DensityMatrix rho3;
};

/// ρ₁ = diag(2(n+1−k)/(n(n+1))), ρ₂ = |+⟩⟨+|, ρ₃ = I/n.
GrkStates grk_default_states(Index n);

enum class ConvexityClaim { Affine, Convex, Concave };

struct ConvexityReport {
  ConvexityClaim claim;
  std::vector<double> lambdas;
  std::vector<double> values;
  /// Largest amount by which the chord inequality is broken (|deviation| for
  /// affine claims); ≤ 0 means the claim holds on the samples.
  double max_violation = 0.0;
};

ConvexityClaim claimed_shape(ObjectiveKind kind);

/// Samples F on λ·C_a + (1 − λ)·C_b for evenly spaced λ ∈ [0, 1].
ConvexityReport convexity_probe(const Objective& obj, const ChoiMatrix& a, const ChoiMatrix& b,
                                int samples);

}  // namespace qchan
