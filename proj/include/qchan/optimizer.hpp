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
#include <optional>
#include <vector>

#include "qchan/objectives.hpp"

namespace qchan {

/// Gradient: steepest descent in the embedded metric.
/// Lbfgs: limited-memory BFGS direction built from gradient differences,
/// stored pairs moved between tangent spaces by projection. It keeps
/// convergence fast at the rank-deficient minima of the Choi-matching
/// functionals, where steepest descent slows to a sublinear crawl.
enum class DescentRule { Gradient, Lbfgs };

struct OptimizerConfig {
  int max_iters = 5000;
  double grad_tol = 1e-8;  // on the Riemannian gradient norm
  double initial_step = 1.0;
  double armijo_shrink = 0.5;
  double armijo_slope = 1e-4;
  std::uint64_t seed = 0;
  DescentRule rule = DescentRule::Lbfgs;

  void check() const;
};

enum class RunStatus { Converged, MaxIterations, LineSearchStall, SpectrumTooSingular };

std::string_view to_string(RunStatus status);

struct RunResult {
  explicit RunResult(StiefelPoint start) : final_point(std::move(start)) {}

  StiefelPoint final_point;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  RunStatus status = RunStatus::MaxIterations;
  // One entry per iterate, the start included. steps[0] is 0.
  std::vector<double> value_trace;
  std::vector<double> grad_trace;
  std::vector<double> step_trace;
  double max_manifold_residual = 0.0;

  /// Runs whose gradient could not be evaluated carry no landscape information.
  bool failed() const { return status == RunStatus::SpectrumTooSingular; }
};

/// Riemannian descent (ascent for Direction::Maximize) with polar retraction
/// and Armijo backtracking. Each line search starts one notch above the
/// previously accepted step, capped at initial_step. Steps whose value change
/// is within round-off of the current value are accepted.
RunResult riemannian_gd(const Objective& obj, const StiefelPoint& start,
                        const OptimizerConfig& cfg);

/// Global optimum over all channels when a closed form is known.
std::optional<double> known_global_value(const Objective& obj);

struct LandscapeReport {
  std::vector<RunResult> runs;
  double best_value = 0.0;
  std::optional<double> worst_converged_value;
  double spread = 0.0;
  std::optional<double> global_oracle;
  std::vector<int> trap_suspects;
  double trap_tol = 1e-6;
  int converged_runs = 0;
  int failed_runs = 0;
};

/// Runs riemannian_gd from n_starts Haar-random points. Start i is drawn
/// from derive_seed(cfg.seed, i), so the report does not depend on how runs
/// are scheduled across threads.
LandscapeReport multi_start(const Objective& obj, int n_starts, const OptimizerConfig& cfg,
                            double trap_tol = 1e-6, bool parallel = true);

struct NeighborhoodReport {
  double center_value = 0.0;
  int samples = 0;
  double manifold_min = 0.0;
  double manifold_max = 0.0;
  double choi_min = 0.0;
  double choi_max = 0.0;
  /// Largest improvement over the center in the optimization direction
  /// (≤ 0 when no sampled neighbor is better).
  double manifold_improvement = 0.0;
  double choi_improvement = 0.0;
  /// Largest |F(U·K*) − F(K*)| over small orbit moves.
  double orbit_change = 0.0;
};

NeighborhoodReport extrema_correspondence_check(const Objective& obj, const StiefelPoint& center,
                                                double radius, int samples, std::uint64_t seed);

}  // namespace qchan
