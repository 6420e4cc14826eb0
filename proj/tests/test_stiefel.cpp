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

#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

namespace qchan {
namespace {

using test::gaussian;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no qchan::Error thrown";
  return ErrorCode::Parse;
}

Matrix herm(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

double tangency(const StiefelPoint& k, const Matrix& d) {
  return (k.matrix().adjoint() * d + d.adjoint() * k.matrix()).norm();
}

const std::vector<ChannelDims> kDims{{1, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};

// ---------------------------------------------------------------- projection

TEST(ProjectTangent, RadialDirectionIsKilled) {
  Rng rng(1);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  EXPECT_LE(project_tangent(k, k.matrix()).delta.norm(), 1e-13);
}

TEST(ProjectTangent, FormulaTangencyIdempotenceOrthogonality) {
  Rng rng(2);
  for (const ChannelDims& d : kDims) {
    for (int trial = 0; trial < 20; ++trial) {
      const StiefelPoint k = random_stiefel(d, rng);
      const Matrix g = gaussian(d.stiefel_rows(), d.n, rng);
      const TangentVector t = project_tangent(k, g);
      const Matrix expected = g - k.matrix() * herm(k.matrix().adjoint() * g);
      EXPECT_LE((t.delta - expected).norm(), 1e-12);
      EXPECT_LE(tangency(k, t.delta), 1e-9);
      EXPECT_LE(tangent_residual(t), 1e-9);
      EXPECT_LE((project_tangent(k, t.delta).delta - t.delta).norm(), 1e-12);
      EXPECT_NEAR(real_inner(t.delta, g - t.delta), 0.0, 1e-10);
    }
  }
}

TEST(ProjectTangent, ShapeMismatch) {
  Rng rng(3);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  EXPECT_EQ(code_of([&] { project_tangent(k, Matrix::Zero(8, 3)); }), ErrorCode::DimMismatch);
}

// ---------------------------------------------------------------- retraction

TEST(Retraction, ZeroStepIsIdentity) {
  Rng rng(4);
  const StiefelPoint k = random_stiefel({2, 3}, rng);
  const Matrix zero = Matrix::Zero(k.matrix().rows(), k.matrix().cols());
  EXPECT_LE((retract_polar(k, zero).matrix() - k.matrix()).norm(), 1e-14);
  EXPECT_LE((retract_qr(k, zero).matrix() - k.matrix()).norm(), 1e-14);
}

TEST(Retraction, PolarMatchesClosedForm) {
  Rng rng(5);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  const Matrix d = test::random_tangent(k, rng) * 0.7;
  const HermitianEig e = hermitian_eig(Matrix::Identity(2, 2) + d.adjoint() * d);
  const Matrix inv_sqrt = spectral_apply(e, [](double x) { return 1.0 / std::sqrt(x); });
  EXPECT_LE((retract_polar(k, d).matrix() - (k.matrix() + d) * inv_sqrt).norm(), 1e-12);
}

TEST(Retraction, StaysOnManifold) {
  Rng rng(6);
  for (const ChannelDims& d : kDims) {
    for (double scale : {1e-6, 0.1, 1.0, 10.0, 1e3}) {
      const StiefelPoint k = random_stiefel(d, rng);
      const Matrix delta = test::random_tangent(k, rng) * scale;
      EXPECT_LE(retract_polar(k, delta).manifold_residual(), 1e-10);
      EXPECT_LE(retract_qr(k, delta).manifold_residual(), 1e-10);
    }
  }
}

TEST(Retraction, SecondOrderAgreementWithTheStraightLine) {
  Rng rng(7);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  const Matrix d = test::random_tangent(k, rng);
  auto gap = [&](double t) { return (retract_polar(k, t * d).matrix() - (k.matrix() + t * d)).norm(); };
  // Halving t should quarter an O(t²) gap.
  for (double t : {1e-1, 1e-2, 1e-3}) EXPECT_NEAR(gap(t) / gap(t / 2.0), 4.0, 0.1);
}

TEST(Retraction, DerivativeAtZeroIsTheTangent) {
  Rng rng(8);
  for (const ChannelDims& d : kDims) {
    const StiefelPoint k = random_stiefel(d, rng);
    const Matrix delta = test::random_tangent(k, rng);
    const double h = 1e-6;
    for (auto retract : {&retract_polar, &retract_qr}) {
      const Matrix fd = (retract(k, h * delta).matrix() - retract(k, -h * delta).matrix()) / (2 * h);
      EXPECT_LE((fd - delta).norm(), 1e-8);
    }
  }
}

TEST(Retraction, QrHasPositiveDiagonalFactor) {
  Rng rng(9);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  const Matrix delta = test::random_tangent(k, rng);
  const Matrix q = retract_qr(k, delta).matrix();
  const Matrix r = q.adjoint() * (k.matrix() + delta);
  EXPECT_LE((q * r - (k.matrix() + delta)).norm(), 1e-12);
  for (Index i = 0; i < r.rows(); ++i) {
    EXPECT_GT(r(i, i).real(), 0.0);
    EXPECT_NEAR(r(i, i).imag(), 0.0, 1e-12);
    for (Index j = 0; j < i; ++j) EXPECT_NEAR(std::abs(r(i, j)), 0.0, 1e-12);
  }
}

TEST(Retraction, ShapeMismatch) {
  Rng rng(10);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  EXPECT_EQ(code_of([&] { retract_polar(k, Matrix::Zero(4, 2)); }), ErrorCode::DimMismatch);
  EXPECT_EQ(code_of([&] { retract_qr(k, Matrix::Zero(8, 1)); }), ErrorCode::DimMismatch);
}

// ---------------------------------------------------------------- orbit action

TEST(UnitaryAct, IdentityAndPermutation) {
  Rng rng(11);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  EXPECT_EQ(unitary_act(Matrix::Identity(4, 4), k).matrix(), k.matrix());
  const std::vector<Index> perm{2, 0, 3, 1};
  Matrix p = Matrix::Zero(4, 4);
  for (Index i = 0; i < 4; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  const StiefelPoint moved = unitary_act(p, k);
  for (Index i = 0; i < 4; ++i) EXPECT_EQ(Matrix(moved.block(i)), Matrix(k.block(perm[static_cast<std::size_t>(i)])));
}

TEST(UnitaryAct, MatchesTheStackedKroneckerForm) {
  Rng rng(12);
  const ChannelDims d{2, 3};
  const StiefelPoint k = random_stiefel(d, rng);
  const Matrix u = random_unitary(d.nm(), rng);
  const Matrix expected = kron(u, Matrix::Identity(d.m, d.m)) * k.matrix();
  EXPECT_LE((unitary_act(u, k).matrix() - expected).norm(), 1e-12);
}

TEST(UnitaryAct, PreservesManifoldAndChoi) {
  Rng rng(13);
  for (const ChannelDims& d : kDims) {
    const StiefelPoint k = random_stiefel(d, rng);
    const StiefelPoint moved = unitary_act(random_unitary(d.nm(), rng), k);
    EXPECT_LE(moved.manifold_residual(), 1e-10);
    EXPECT_LE((stiefel_to_choi(moved).matrix() - stiefel_to_choi(k).matrix()).norm(), 1e-10);
  }
}

TEST(UnitaryAct, RejectsNonUnitary) {
  Rng rng(14);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  EXPECT_EQ(code_of([&] { unitary_act(1.01 * Matrix::Identity(4, 4), k); }), ErrorCode::NotUnitary);
  EXPECT_EQ(code_of([&] { unitary_act(Matrix::Identity(3, 3), k); }), ErrorCode::DimMismatch);
}

TEST(SameOrbit, Examples) {
  Rng rng(15);
  const StiefelPoint k = random_stiefel({2, 2}, rng);
  EXPECT_TRUE(same_orbit(k, k));
  EXPECT_TRUE(same_orbit(k, unitary_act(random_unitary(4, rng), k)));
  const StiefelPoint id = kraus_to_stiefel(identity_channel(2));
  const StiefelPoint x = kraus_to_stiefel(unitary_channel(test::pauli_x()));
  EXPECT_FALSE(same_orbit(id, x));
  EXPECT_NEAR((stiefel_to_choi(id).matrix() - stiefel_to_choi(x).matrix()).norm(), std::sqrt(8.0),
              1e-14);
  EXPECT_NEAR(channel_distance(stiefel_to_choi(id), stiefel_to_choi(x)), 2.0, 1e-12);
  EXPECT_EQ(code_of([&] { same_orbit(k, random_stiefel({2, 3}, rng)); }), ErrorCode::DimMismatch);
}

// ---------------------------------------------------------------- alignment

TEST(OrbitAlign, SameOrbitAlignsToZero) {
  Rng rng(16);
  for (const ChannelDims& d : kDims) {
    const StiefelPoint k = random_stiefel(d, rng);
    const StiefelPoint moved = unitary_act(random_unitary(d.nm(), rng), k);
    const Alignment a = orbit_align(k, moved);
    EXPECT_LE(a.distance, 1e-9);
    EXPECT_LE((unitary_act(a.u.transpose(), moved).matrix() - k.matrix()).norm(), 1e-9);
  }
}

TEST(OrbitAlign, IdentityAgainstBitFlip) {
  const StiefelPoint id = kraus_to_stiefel(identity_channel(2));
  const StiefelPoint x = kraus_to_stiefel(unitary_channel(test::pauli_x()));
  EXPECT_NEAR(orbit_align(id, x).distance, 2.0, 1e-12);
}

TEST(OrbitAlign, ProcrustesOptimalityAndClosedForm) {
  Rng rng(17);
  const ChannelDims d{2, 2};
  const StiefelPoint k1 = random_stiefel(d, rng), k2 = random_stiefel(d, rng);
  const Alignment a = orbit_align(k1, k2);
  const Matrix x1 = kraus_factor(k1), x2 = kraus_factor(k2);
  EXPECT_LE((a.u.adjoint() * a.u - Matrix::Identity(4, 4)).norm(), 1e-10);
  EXPECT_NEAR(a.distance, (x1 - x2 * a.u).norm(), 1e-12);
  for (int trial = 0; trial < 100; ++trial)
    EXPECT_LE(a.distance, (x1 - x2 * random_unitary(4, rng)).norm() + 1e-12);
  const Eigen::JacobiSVD<Matrix> svd(x2.adjoint() * x1);
  const double closed = std::sqrt(std::max(0.0, x1.squaredNorm() + x2.squaredNorm() -
                                                    2.0 * svd.singularValues().sum()));
  EXPECT_NEAR(a.distance, closed, 1e-10);
}

// ---------------------------------------------------------------- distances

TEST(ChannelDistance, ExamplesAndErrors) {
  Rng rng(18);
  const ChoiMatrix c = random_channel({2, 2}, rng);
  EXPECT_LE(channel_distance(c, c), 1e-7);
  EXPECT_EQ(bures_choi_distance(c, c), 0.0);
  const ChoiMatrix id = kraus_to_choi(identity_channel(2));
  const ChoiMatrix x = kraus_to_choi(unitary_channel(test::pauli_x()));
  EXPECT_NEAR(channel_distance(id, x), 2.0, 1e-12);
  EXPECT_NEAR(bures_choi_distance(id, x), 2.0, 1e-12);
  EXPECT_EQ(code_of([&] { channel_distance(c, random_channel({2, 3}, rng)); }), ErrorCode::DimMismatch);
  EXPECT_EQ(code_of([&] { channel_distance(c, ChoiMatrix({2, 2}, Matrix::Identity(4, 4))); }),
            ErrorCode::NotCPTP);
}

TEST(ChannelDistance, TwoFormulasAgree) {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const ChannelDims d = kDims[static_cast<std::size_t>(trial) % kDims.size()];
    const ChoiMatrix a = random_channel(d, rng), b = random_channel(d, rng);
    EXPECT_NEAR(channel_distance(a, b), bures_choi_distance(a, b), 1e-9);
  }
}

TEST(ChannelDistance, OrbitInvariance) {
  Rng rng(20);
  const ChannelDims d{2, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const StiefelPoint k1 = random_stiefel(d, rng), k2 = random_stiefel(d, rng);
    const double base = orbit_align(k1, k2).distance;
    const StiefelPoint m1 = unitary_act(random_unitary(d.nm(), rng), k1);
    const StiefelPoint m2 = unitary_act(random_unitary(d.nm(), rng), k2);
    EXPECT_NEAR(orbit_align(m1, m2).distance, base, 1e-9);
    EXPECT_NEAR(channel_distance(stiefel_to_choi(k1), stiefel_to_choi(k2)), base, 1e-9);
  }
}

TEST(ChannelDistance, MetricAxioms) {
  Rng rng(21);
  const ChannelDims d{2, 2};
  for (int trial = 0; trial < 100; ++trial) {
    const ChoiMatrix a = random_channel(d, rng), b = random_channel(d, rng),
                     c = random_channel(d, rng);
    const double ab = channel_distance(a, b), bc = channel_distance(b, c),
                 ac = channel_distance(a, c);
    EXPECT_NEAR(ab, channel_distance(b, a), 1e-12);
    EXPECT_GE(ab + bc - ac, -1e-9);
    EXPECT_GT(ab, 1e-8);
  }
}

TEST(ChannelDistance, ZeroOnlyForEqualChoi) {
  Rng rng(22);
  const ChoiMatrix a = random_channel({2, 2}, rng);
  const ChoiMatrix near(a.dims(), 0.999 * a.matrix() +
                                      0.001 * random_channel({2, 2}, rng).matrix());
  EXPECT_GT(channel_distance(a, near), 1e-8);
  EXPECT_GT(bures_choi_distance(a, near), 1e-8);
}

// ---------------------------------------------------------------- orbit parametrization

TEST(OrbitParametrize, LeadingIdentityRecoversTheCanonicalSet) {
  Rng rng(23);
  const ChannelDims d{2, 2};
  const ChoiMatrix c = test::random_channel_of_rank(d, 2, rng);
  Matrix m = Matrix::Zero(4, 2);
  m.topRows(2) = Matrix::Identity(2, 2);
  const KrausSet got = stiefel_to_kraus(orbit_parametrize(c, OrbitParam(d, m)));
  const KrausSet minimal = choi_to_minimal_kraus(c);
  ASSERT_EQ(got.size(), 4u);
  for (std::size_t l = 0; l < 2; ++l)
    EXPECT_LE((got.operators()[l] - minimal.operators()[l]).norm(), 1e-12);
  for (std::size_t l = 2; l < 4; ++l) EXPECT_EQ(got.operators()[l].norm(), 0.0);
}

TEST(OrbitParametrize, RandomParametersGiveTheSameChannel) {
  Rng rng(24);
  for (const ChannelDims& d : kDims) {
    for (Index rank = 1; rank <= d.nm(); ++rank) {
      if (rank * d.m < d.n) continue;
      const ChoiMatrix c = test::random_channel_of_rank(d, rank, rng);
      const OrbitParam m(d, haar_isometry(d.nm(), rank, rng));
      const StiefelPoint k = orbit_parametrize(c, m);
      EXPECT_LE(k.manifold_residual(), 1e-9);
      EXPECT_LE((stiefel_to_choi(k).matrix() - c.matrix()).norm(), 1e-9);
    }
  }
}

TEST(OrbitParametrize, UnitaryChannelOrbitIsASphere) {
  Rng rng(25);
  const ChoiMatrix c = kraus_to_choi(unitary_channel(random_unitary(2, rng)));
  ASSERT_EQ(kraus_rank(c), 1);
  // A unit vector of C⁴ is a valid parameter; the point norm is √n for every one.
  for (int trial = 0; trial < 10; ++trial) {
    const StiefelPoint k = orbit_parametrize(c, OrbitParam({2, 2}, haar_isometry(4, 1, rng)));
    EXPECT_NEAR(k.matrix().norm(), std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(same_orbit(k, kraus_to_stiefel(choi_to_minimal_kraus(c))));
  }
}

TEST(OrbitParametrize, Injective) {
  Rng rng(26);
  const ChannelDims d{2, 2};
  const ChoiMatrix c = test::random_channel_of_rank(d, 2, rng);
  std::vector<Matrix> params;
  std::vector<Matrix> points;
  for (int trial = 0; trial < 30; ++trial) {
    params.push_back(haar_isometry(4, 2, rng));
    points.push_back(orbit_parametrize(c, OrbitParam(d, params.back())).matrix());
  }
  // A nearby parameter must also map to a distinct point.
  Matrix shifted = params[0];
  shifted(0, 0) += 1e-3;
  const Eigen::HouseholderQR<Matrix> qr(shifted);
  params.push_back(qr.householderQ() * Matrix::Identity(4, 2));
  points.push_back(orbit_parametrize(c, OrbitParam(d, params.back())).matrix());
  for (std::size_t i = 0; i < params.size(); ++i)
    for (std::size_t j = i + 1; j < params.size(); ++j)
      if ((params[i] - params[j]).norm() > 1e-4) {
        EXPECT_GT((points[i] - points[j]).norm(), 1e-8);
      }
}

TEST(OrbitParametrize, Errors) {
  Rng rng(27);
  const ChannelDims d{2, 2};
  const ChoiMatrix c = test::random_channel_of_rank(d, 2, rng);
  EXPECT_EQ(code_of([&] { orbit_parametrize(c, OrbitParam(d, haar_isometry(4, 3, rng))); }),
            ErrorCode::RankMismatch);
  EXPECT_EQ(code_of([&] { OrbitParam(d, 2.0 * haar_isometry(4, 2, rng)); }), ErrorCode::NotIsometry);
  EXPECT_EQ(code_of([&] { OrbitParam(d, haar_isometry(3, 2, rng)); }), ErrorCode::DimMismatch);
}

// ---------------------------------------------------------------- sampling

TEST(Sampling, OnManifoldAndDeterministic) {
  for (const ChannelDims& d : kDims) {
    Rng a(77), b(77);
    const StiefelPoint k = random_stiefel(d, a);
    EXPECT_LE(k.manifold_residual(), 1e-10);
    EXPECT_EQ(k.matrix(), random_stiefel(d, b).matrix());
  }
  Rng a(78), b(78);
  const Matrix u = random_unitary(5, a);
  EXPECT_EQ(u, random_unitary(5, b));
  EXPECT_LE((u.adjoint() * u - Matrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(Sampling, HaarMarginalOfTheFirstEntry) {
  const ChannelDims d{2, 2};
  const double dim = static_cast<double>(d.stiefel_rows());
  const int samples = 10000;
  Rng rng(79);
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) sum += std::norm(random_stiefel(d, rng).matrix()(0, 0));
  // |z₁|² of a uniform unit vector in C^dim is Beta(1, dim − 1).
  const double mean = 1.0 / dim;
  const double sd = std::sqrt((dim - 1.0) / (dim * dim * (dim + 1.0)) / samples);
  EXPECT_NEAR(sum / samples, mean, 5.0 * sd);
}

TEST(Sampling, DerivedSeedsAreDistinct) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.push_back(derive_seed(42, i));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
}

TEST(Sampling, NormalsHaveUnitVariance) {
  Rng rng(80);
  double s1 = 0.0, s2 = 0.0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    const Complex z = rng.complex_normal();
    s1 += z.real();
    s2 += std::norm(z);
  }
  EXPECT_NEAR(s1 / samples, 0.0, 5.0 * std::sqrt(0.5 / samples));
  EXPECT_NEAR(s2 / samples, 1.0, 5.0 * std::sqrt(1.0 / samples));
}

}  // namespace
}  // namespace qchan
