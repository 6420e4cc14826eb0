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

#include "qchan/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qchan {

namespace {

constexpr double kMinStep = 1e-16;

double sign_of(Direction dir) { return dir == Direction::Minimize ? 1.0 : -1.0; }

// exp(i·t·H) for a random Hermitian H with unit Frobenius norm.
Matrix small_orbit_unitary(Index size, double t, Rng& rng) {
  Matrix h(size, size);
  for (Index j = 0; j < size; ++j)
    for (Index i = 0; i < size; ++i) h(i, j) = rng.complex_normal();
  h = hermitian_part(h);
  h /= h.norm();
  const HermitianEig eig = hermitian_eig(h);
  Vector phases(size);
  for (Index i = 0; i < size; ++i) phases(i) = std::polar(1.0, t * eig.eigenvalues(i));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

// Relative size of value changes treated as round-off in the Armijo test.
constexpr double kValueNoise = 8.0 * std::numeric_limits<double>::epsilon();
constexpr std::size_t kMemory = 20;

// Limited-memory BFGS pairs kept in the tangent space of the current point.
class QuasiNewtonMemory {
 public:
  explicit QuasiNewtonMemory(std::size_t capacity) : capacity_(capacity) {}

  // Moves the stored pairs to the tangent space at k by projection.
  void transport(const StiefelPoint& k) {
    for (Pair& p : pairs_) {
      p.s = project_tangent(k, p.s).delta;
      p.y = project_tangent(k, p.y).delta;
      p.sy = real_inner(p.s, p.y);
    }
    std::erase_if(pairs_, [](const Pair& p) { return !(p.sy > 0.0); });
  }

  void push(Matrix s, Matrix y) {
    const double sy = real_inner(s, y);
    if (!(sy > kCurvatureFloor * s.norm() * y.norm())) return;
    if (pairs_.size() == capacity_) pairs_.erase(pairs_.begin());
    pairs_.push_back({std::move(s), std::move(y), sy});
  }

  void clear() { pairs_.clear(); }

  // −H·grad by the two-loop recursion.
  Matrix direction(const Matrix& grad) const {
    Matrix q = grad;
    std::vector<double> a(pairs_.size());
    for (std::size_t i = pairs_.size(); i-- > 0;) {
      a[i] = real_inner(pairs_[i].s, q) / pairs_[i].sy;
      q -= a[i] * pairs_[i].y;
    }
    if (!pairs_.empty()) {
      const Pair& last = pairs_.back();
      q *= last.sy / last.y.squaredNorm();
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const double b = real_inner(pairs_[i].y, q) / pairs_[i].sy;
      q += (a[i] - b) * pairs_[i].s;
    }
    return -q;
  }

 private:
  static constexpr double kCurvatureFloor = 1e-12;
  struct Pair {
    Matrix s;
    Matrix y;
    double sy;
  };
  std::size_t capacity_;
  std::vector<Pair> pairs_;
};

}  // namespace

void OptimizerConfig::check() const {
  if (max_iters < 0) throw Error(ErrorCode::BadParameter, "max_iters must be non-negative");
  if (!(grad_tol > 0.0)) throw Error(ErrorCode::BadParameter, "grad_tol must be positive");
  if (!(initial_step > 0.0)) throw Error(ErrorCode::BadParameter, "initial_step must be positive");
  if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0))
    throw Error(ErrorCode::BadParameter, "armijo_shrink must lie in (0, 1)");
  if (!(armijo_slope > 0.0 && armijo_slope < 1.0))
    throw Error(ErrorCode::BadParameter, "armijo_slope must lie in (0, 1)");
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIterations: return "max_iterations";
    case RunStatus::LineSearchStall: return "line_search_stall";
    case RunStatus::SpectrumTooSingular: return "spectrum_too_singular";
  }
  return "unknown";
}

RunResult riemannian_gd(const Objective& obj, const StiefelPoint& start,
                        const OptimizerConfig& cfg) {
  cfg.check();
  if (!(obj.dims() == start.dims()))
    throw Error(ErrorCode::DimMismatch, "start point does not match the objective dims");
  const double sign = sign_of(obj.direction());

  StiefelPoint point = start;
  double f = sign * value(obj, point);
  RunResult out(point);
  out.max_manifold_residual = point.manifold_residual();
  double step_taken = 0.0;
  double trial = cfg.initial_step;
  QuasiNewtonMemory memory(kMemory);
  Matrix prev_grad, prev_step;

  for (int iter = 0;; ++iter) {
    Matrix grad;
    try {
      grad = sign * riemannian_gradient(obj, point).delta;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SpectrumTooSingular) throw;
      out.status = RunStatus::SpectrumTooSingular;
      out.final_grad_norm = std::numeric_limits<double>::quiet_NaN();
      break;
    }
    const double gnorm = grad.norm();
    if (cfg.rule == DescentRule::Lbfgs && prev_step.size() > 0) {
      memory.transport(point);
      memory.push(project_tangent(point, prev_step).delta,
                  grad - project_tangent(point, prev_grad).delta);
    }
    out.value_trace.push_back(sign * f);
    out.grad_trace.push_back(gnorm);
    out.step_trace.push_back(step_taken);
    out.iterations = iter;
    out.final_grad_norm = gnorm;

    if (gnorm <= cfg.grad_tol) {
      out.status = RunStatus::Converged;
      out.converged = true;
      break;
    }
    if (iter >= cfg.max_iters) {
      out.status = RunStatus::MaxIterations;
      break;
    }

    // step is a descent direction for sign·F; grad already carries the sign.
    Matrix step = -grad;
    if (cfg.rule == DescentRule::Lbfgs) {
      Matrix qn = memory.direction(grad);
      if (real_inner(grad, qn) < -1e-10 * gnorm * qn.norm()) step = std::move(qn);
      else memory.clear();
    }
    const double slope = cfg.armijo_slope * -real_inner(grad, step);
    const double noise = kValueNoise * (1.0 + std::abs(f));
    double alpha = trial;
    bool accepted = false;
    while (alpha > kMinStep) {
      StiefelPoint candidate = retract_polar(point, alpha * step);
      const double f_new = sign * value(obj, candidate);
      if (f_new <= f - slope * alpha + noise) {
        point = std::move(candidate);
        f = f_new;
        accepted = true;
        break;
      }
      alpha *= cfg.armijo_shrink;
    }
    if (!accepted) {
      out.status = RunStatus::LineSearchStall;
      break;
    }
    step_taken = alpha;
    prev_grad = std::move(grad);
    prev_step = alpha * step;
    trial = std::min(cfg.initial_step, alpha / cfg.armijo_shrink);
    out.max_manifold_residual = std::max(out.max_manifold_residual, point.manifold_residual());
  }

  out.final_value = sign * f;
  out.final_point = std::move(point);
  return out;
}

std::optional<double> known_global_value(const Objective& obj) {
  switch (obj.kind()) {
    case ObjectiveKind::Expectation: {
      const auto& p = std::get<ExpectationParams>(obj.params());
      const RealVector ev = hermitian_eig(p.observable.matrix()).eigenvalues;
      return obj.direction() == Direction::Maximize ? ev.maxCoeff() : ev.minCoeff();
    }
    case ObjectiveKind::FreeEnergy: {
      if (obj.direction() != Direction::Maximize) return std::nullopt;
      const auto& p = std::get<FreeEnergyParams>(obj.params());
      const RealVector ev = hermitian_eig(p.observable.matrix()).eigenvalues;
      // (1/β)·ln Σ e^{−βλ}, shifted by the smallest eigenvalue for stability.
      const double shift = ev.minCoeff();
      double z = 0.0;
      for (Index i = 0; i < ev.size(); ++i) z += std::exp(-p.beta * (ev(i) - shift));
      return std::log(z) / p.beta - shift;
    }
    case ObjectiveKind::ChannelGen:
    case ObjectiveKind::GateGen:
    case ObjectiveKind::Grk:
      if (obj.direction() == Direction::Minimize) return 0.0;
      return std::nullopt;
  }
  return std::nullopt;
}

LandscapeReport multi_start(const Objective& obj, int n_starts, const OptimizerConfig& cfg,
                            double trap_tol, bool parallel) {
  if (n_starts < 1) throw Error(ErrorCode::BadParameter, "need at least one start");
  cfg.check();
  std::vector<std::optional<RunResult>> slots(static_cast<std::size_t>(n_starts));

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int i = 0; i < n_starts; ++i) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const StiefelPoint start = random_stiefel(obj.dims(), rng);
    slots[static_cast<std::size_t>(i)] = riemannian_gd(obj, start, cfg);
  }

  LandscapeReport report;
  report.trap_tol = trap_tol;
  report.global_oracle = known_global_value(obj);
  report.runs.reserve(slots.size());
  for (auto& slot : slots) report.runs.push_back(std::move(*slot));

  const bool maximize = obj.direction() == Direction::Maximize;
  auto better = [maximize](double a, double b) { return maximize ? a > b : a < b; };
  bool have_best = false;
  for (const RunResult& r : report.runs) {
    if (r.failed()) {
      ++report.failed_runs;
      continue;
    }
    if (!have_best || better(r.final_value, report.best_value)) {
      report.best_value = r.final_value;
      have_best = true;
    }
    if (r.converged) {
      ++report.converged_runs;
      if (!report.worst_converged_value || better(*report.worst_converged_value, r.final_value))
        report.worst_converged_value = r.final_value;
    }
  }
  if (!have_best) report.best_value = std::numeric_limits<double>::quiet_NaN();
  if (report.worst_converged_value)
    report.spread = std::abs(*report.worst_converged_value - report.best_value);

  const double reference = report.global_oracle.value_or(report.best_value);
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const RunResult& r = report.runs[i];
    if (r.converged && std::abs(r.final_value - reference) > trap_tol)
      report.trap_suspects.push_back(static_cast<int>(i));
  }
  return report;
}

NeighborhoodReport extrema_correspondence_check(const Objective& obj, const StiefelPoint& center,
                                                double radius, int samples, std::uint64_t seed) {
  if (!(obj.dims() == center.dims()))
    throw Error(ErrorCode::DimMismatch, "point does not match the objective dims");
  if (samples < 1 || !(radius > 0.0))
    throw Error(ErrorCode::BadParameter, "need a positive radius and at least one sample");

  const double sign = sign_of(obj.direction());
  const ChannelDims& d = center.dims();
  Rng rng(seed);
  NeighborhoodReport r;
  r.samples = samples;
  r.center_value = value(obj, center);
  r.manifold_min = r.manifold_max = r.center_value;
  r.choi_min = r.choi_max = r.center_value;
  r.manifold_improvement = -std::numeric_limits<double>::infinity();
  r.choi_improvement = -std::numeric_limits<double>::infinity();

  for (int s = 0; s < samples; ++s) {
    Matrix g(d.stiefel_rows(), d.n);
    for (Index j = 0; j < g.cols(); ++j)
      for (Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
    Matrix delta = project_tangent(center, g).delta;
    delta *= radius * rng.uniform() / delta.norm();
    const StiefelPoint moved = retract_polar(center, delta);

    const double on_manifold = value(obj, moved);
    const double through_choi = value_at_choi(obj, stiefel_to_choi(moved));
    r.manifold_min = std::min(r.manifold_min, on_manifold);
    r.manifold_max = std::max(r.manifold_max, on_manifold);
    r.choi_min = std::min(r.choi_min, through_choi);
    r.choi_max = std::max(r.choi_max, through_choi);
    // Improvement means lower for minimization, higher for maximization.
    r.manifold_improvement = std::max(r.manifold_improvement, sign * (r.center_value - on_manifold));
    r.choi_improvement = std::max(r.choi_improvement, sign * (r.center_value - through_choi));

    const StiefelPoint orbit_move =
        unitary_act(small_orbit_unitary(d.nm(), radius, rng), center);
    r.orbit_change = std::max(r.orbit_change, std::abs(value(obj, orbit_move) - r.center_value));
  }
  return r;
}

}  // namespace qchan
