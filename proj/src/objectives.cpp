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

#include "qchan/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qchan {

namespace {

constexpr double kManifoldGate = 1e-6;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_point(const Objective& obj, const StiefelPoint& k) {
  if (!(obj.dims() == k.dims()))
    throw Error(ErrorCode::DimMismatch, "objective and point have different channel dims");
  if (k.manifold_residual() > kManifoldGate)
    throw Error(ErrorCode::ManifoldViolation, "‖K†K − I‖ exceeds 1e-6");
}

Matrix factor_to_stack(const ChannelDims& d, const Matrix& x) {
  Matrix k(d.stiefel_rows(), d.n);
  for (Index l = 0; l < d.nm(); ++l)
    k.middleRows(l * d.m, d.m) = reshape_vec_to_kraus(x.col(l), d.n, d.m);
  return k;
}

// Block l of the result is left·K_l·right.
Matrix sandwich_blocks(const StiefelPoint& k, const Matrix& left, const Matrix& right) {
  const ChannelDims& d = k.dims();
  Matrix g(d.stiefel_rows(), d.n);
  for (Index l = 0; l < d.nm(); ++l) g.middleRows(l * d.m, d.m).noalias() = left * k.block(l) * right;
  return g;
}

double choi_mismatch(const StiefelPoint& k, const ChoiMatrix& target) {
  const Matrix x = kraus_factor(k);
  return (x * x.adjoint() - target.matrix()).squaredNorm();
}

void check_unitary_gate(const Matrix& w) {
  if (w.rows() < 1 || !is_unitary(w, 1e-8))
    throw Error(ErrorCode::BadParameter, "gate must be unitary within 1e-8");
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Expectation: return "expectation";
    case ObjectiveKind::FreeEnergy: return "free_energy";
    case ObjectiveKind::ChannelGen: return "channel_gen";
    case ObjectiveKind::GateGen: return "gate_gen";
    case ObjectiveKind::Grk: return "grk";
  }
  return "unknown";
}

Objective Objective::expectation(Observable o, DensityMatrix rho0, Direction dir) {
  const ChannelDims dims{rho0.dim(), o.dim()};
  return Objective(ObjectiveKind::Expectation, dir, dims,
                   ExpectationParams{std::move(o), std::move(rho0)});
}

Objective Objective::free_energy(Observable o, DensityMatrix rho0, double beta, Direction dir) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::BadParameter, "inverse temperature must be positive");
  const ChannelDims dims{rho0.dim(), o.dim()};
  return Objective(ObjectiveKind::FreeEnergy, dir, dims,
                   FreeEnergyParams{std::move(o), std::move(rho0), beta});
}

Objective Objective::channel_generation(ChoiMatrix target, Direction dir) {
  require_cptp(target);
  const ChannelDims dims = target.dims();
  return Objective(ObjectiveKind::ChannelGen, dir, dims, ChannelGenParams{std::move(target)});
}

Objective Objective::gate_generation(Matrix gate, Direction dir) {
  check_unitary_gate(gate);
  const ChannelDims dims{gate.rows(), gate.rows()};
  ChoiMatrix target = kraus_to_choi(unitary_channel(gate));
  return Objective(ObjectiveKind::GateGen, dir, dims,
                   GateGenParams{std::move(gate), std::move(target)});
}

Objective Objective::grk(Matrix gate, DensityMatrix rho1, DensityMatrix rho2, DensityMatrix rho3,
                         Direction dir) {
  check_unitary_gate(gate);
  const Index n = gate.rows();
  if (rho1.dim() != n || rho2.dim() != n || rho3.dim() != n)
    throw Error(ErrorCode::BadParameter, "states must match the gate dimension");

  const HermitianEig eig1 = hermitian_eig(rho1.matrix());
  for (Index i = 0; i < n; ++i) {
    if (eig1.eigenvalues(i) <= 1e-12)
      throw Error(ErrorCode::BadParameter, "ρ₁ must have nonzero eigenvalues");
    if (i > 0 && eig1.eigenvalues(i) - eig1.eigenvalues(i - 1) <= 1e-8)
      throw Error(ErrorCode::BadParameter, "ρ₁ eigenvalues must be pairwise distinct");
  }
  const Matrix& p = rho2.matrix();
  if ((p * p - p).norm() > 1e-9)
    throw Error(ErrorCode::BadParameter, "ρ₂ must be a rank-one projector");
  for (Index i = 0; i < n; ++i) {
    const Vector phi = eig1.eigenvectors.col(i);
    if ((phi.adjoint() * p * phi)(0, 0).real() <= 1e-10)
      throw Error(ErrorCode::BadParameter, "ρ₂ must overlap every eigenvector of ρ₁");
  }
  const Matrix mixed = Matrix::Identity(n, n) / static_cast<double>(n);
  if ((rho3.matrix() - mixed).norm() > 1e-12)
    throw Error(ErrorCode::BadParameter, "ρ₃ must be the maximally mixed state");

  const ChannelDims dims{n, n};
  return Objective(ObjectiveKind::Grk, dir, dims,
                   GrkParams{std::move(gate), {std::move(rho1), std::move(rho2), std::move(rho3)}});
}

Matrix channel_output(const StiefelPoint& k, const Matrix& rho) {
  const ChannelDims& d = k.dims();
  Matrix out = Matrix::Zero(d.m, d.m);
  for (Index l = 0; l < d.nm(); ++l) {
    const Matrix t = k.block(l) * rho;
    out.noalias() += t * k.block(l).adjoint();
  }
  return out;
}

double von_neumann_entropy(const Matrix& rho) {
  const RealVector ev = hermitian_eig(hermitian_part(rho)).eigenvalues;
  double s = 0.0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kEntropyLogFloor) s -= ev(i) * std::log(ev(i));
  return s;
}

double value(const Objective& obj, const StiefelPoint& k) {
  check_point(obj, k);
  return std::visit(
      Overloaded{
          [&](const ExpectationParams& p) {
            return (p.observable.matrix() * channel_output(k, p.rho0.matrix())).trace().real();
          },
          [&](const FreeEnergyParams& p) {
            const Matrix out = hermitian_part(channel_output(k, p.rho0.matrix()));
            return -(p.observable.matrix() * out).trace().real() +
                   von_neumann_entropy(out) / p.beta;
          },
          [&](const ChannelGenParams& p) { return choi_mismatch(k, p.target); },
          [&](const GateGenParams& p) { return choi_mismatch(k, p.target); },
          [&](const GrkParams& p) {
            double sum = 0.0;
            for (const DensityMatrix& s : p.states) {
              const Matrix& rho = s.matrix();
              sum += (channel_output(k, rho) - p.gate * rho * p.gate.adjoint()).squaredNorm();
            }
            return sum / 6.0;
          },
      },
      obj.params());
}

double value_at_choi(const Objective& obj, const ChoiMatrix& c) {
  return value(obj, kraus_to_stiefel(choi_to_minimal_kraus(c)));
}

Gradient euclidean_gradient(const Objective& obj, const StiefelPoint& k) {
  check_point(obj, k);
  const ChannelDims& d = k.dims();
  Matrix g = std::visit(
      Overloaded{
          [&](const ExpectationParams& p) {
            return sandwich_blocks(k, p.observable.matrix(), p.rho0.matrix());
          },
          [&](const FreeEnergyParams& p) {
            const Matrix out = hermitian_part(channel_output(k, p.rho0.matrix()));
            const HermitianEig eig = hermitian_eig(out);
            if (eig.eigenvalues.minCoeff() < kEntropySingular)
              throw Error(ErrorCode::SpectrumTooSingular,
                          "output state has an eigenvalue below 1e-9");
            const Matrix log_out = spectral_apply(
                eig, [](double x) { return std::log(std::max(x, kEntropyLogFloor)); });
            const Matrix left =
                -p.observable.matrix() -
                (log_out + Matrix::Identity(d.m, d.m)) / p.beta;
            return sandwich_blocks(k, left, p.rho0.matrix());
          },
          [&](const ChannelGenParams& p) {
            const Matrix x = kraus_factor(k);
            return factor_to_stack(d, 2.0 * (x * x.adjoint() - p.target.matrix()) * x);
          },
          [&](const GateGenParams& p) {
            const Matrix x = kraus_factor(k);
            return factor_to_stack(d, 2.0 * (x * x.adjoint() - p.target.matrix()) * x);
          },
          [&](const GrkParams& p) {
            Matrix acc = Matrix::Zero(d.stiefel_rows(), d.n);
            for (const DensityMatrix& s : p.states) {
              const Matrix& rho = s.matrix();
              const Matrix err = channel_output(k, rho) - p.gate * rho * p.gate.adjoint();
              acc += sandwich_blocks(k, err, rho);
            }
            return Matrix(acc / 3.0);
          },
      },
      obj.params());
  return {k, std::move(g)};
}

TangentVector riemannian_gradient(const Objective& obj, const StiefelPoint& k) {
  const Gradient g = euclidean_gradient(obj, k);
  return project_tangent(k, 2.0 * g.g);
}

GrkStates grk_default_states(Index n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "dimension must be positive");
  const double nd = static_cast<double>(n);
  RealVector weights(n);
  for (Index k = 0; k < n; ++k) weights(k) = 2.0 * (nd - static_cast<double>(k)) / (nd * (nd + 1.0));
  Matrix rho1 = weights.cast<Complex>().asDiagonal();
  Matrix rho2 = Matrix::Constant(n, n, Complex(1.0 / nd));
  Matrix rho3 = Matrix::Identity(n, n) / nd;
  return {DensityMatrix(std::move(rho1)), DensityMatrix(std::move(rho2)),
          DensityMatrix(std::move(rho3))};
}

ConvexityClaim claimed_shape(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Expectation: return ConvexityClaim::Affine;
    case ObjectiveKind::FreeEnergy: return ConvexityClaim::Concave;
    default: return ConvexityClaim::Convex;
  }
}

ConvexityReport convexity_probe(const Objective& obj, const ChoiMatrix& a, const ChoiMatrix& b,
                                int samples) {
  if (samples < 2) throw Error(ErrorCode::BadParameter, "need at least two chord samples");
  if (!(a.dims() == obj.dims()) || !(b.dims() == obj.dims()))
    throw Error(ErrorCode::DimMismatch, "chord endpoints must match the objective dims");
  require_cptp(a);
  require_cptp(b);

  ConvexityReport report;
  report.claim = claimed_shape(obj.kind());
  for (int s = 0; s < samples; ++s) {
    const double lambda = static_cast<double>(s) / static_cast<double>(samples - 1);
    const Matrix mix = lambda * a.matrix() + (1.0 - lambda) * b.matrix();
    report.lambdas.push_back(lambda);
    report.values.push_back(value_at_choi(obj, ChoiMatrix(a.dims(), hermitian_part(mix))));
  }
  const double f_b = report.values.front();
  const double f_a = report.values.back();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < report.values.size(); ++s) {
    const double lambda = report.lambdas[s];
    const double chord = lambda * f_a + (1.0 - lambda) * f_b;
    const double f = report.values[s];
    double violation = 0.0;
    switch (report.claim) {
      case ConvexityClaim::Affine: violation = std::abs(f - chord); break;
      case ConvexityClaim::Convex: violation = f - chord; break;
      case ConvexityClaim::Concave: violation = chord - f; break;
    }
    worst = std::max(worst, violation);
  }
  report.max_violation = worst;
  return report;
}

}  // namespace qchan
