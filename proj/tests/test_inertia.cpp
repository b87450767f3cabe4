// Copyright 2026 The Morphforge Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "morphforge/inertia.hpp"
#include "morphforge/rng.hpp"

using namespace morphforge;
using namespace morphforge::inertia;

namespace {

// Uniform solid cube with edge 1 and mass 1, centered on the origin:
// Ibar = diag(1/6), J = diag(1/12, 1/12, 1/12, 1). The expected values were
// cross-checked against a 1e7-sample Monte-Carlo volume integral (also run in
// the acceptance suite).
InertialParams UnitCube() {
  InertialParams p;
  p.m = 1.0;
  p.h = Eigen::Vector3d::Zero();
  p.Ibar = (1.0 / 6.0) * Eigen::Matrix3d::Identity();
  return p;
}

// Draws a strictly consistent body: random box-like principal moments, a
// random rotation, and a CoM offset moved back to the origin frame.
InertialParams RandomConsistentParams(Rng& rng) {
  const double m = rng.Uniform(0.1, 40.0);
  // Box semi-axes give moments that always satisfy the triangle inequality.
  const double a = rng.Uniform(0.05, 0.8);
  const double b = rng.Uniform(0.05, 0.8);
  const double c = rng.Uniform(0.05, 0.8);
  Eigen::Vector3d d(m / 3.0 * (b * b + c * c), m / 3.0 * (a * a + c * c),
                    m / 3.0 * (a * a + b * b));
  const Eigen::Vector3d rpy(rng.Uniform(-3.0, 3.0), rng.Uniform(-1.5, 1.5),
                            rng.Uniform(-3.0, 3.0));
  const Eigen::Matrix3d r =
      (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
       Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
       Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
          .toRotationMatrix();
  const Eigen::Matrix3d ibar_c = r * d.asDiagonal() * r.transpose();
  const Eigen::Vector3d com(rng.Uniform(-0.3, 0.3), rng.Uniform(-0.3, 0.3),
                            rng.Uniform(-0.3, 0.3));
  InertialParams p;
  p.m = m;
  p.h = m * com;
  p.Ibar = ibar_c + m * (com.squaredNorm() * Eigen::Matrix3d::Identity() -
                         com * com.transpose());
  p.Ibar = (0.5 * (p.Ibar + p.Ibar.transpose())).eval();
  return p;
}

ThetaInert RandomTheta(Rng& rng, double span) {
  std::array<double, 10> a{};
  for (auto& x : a) x = rng.Uniform(-span, span);
  return ThetaInert::FromArray(a);
}

}  // namespace

TEST_CASE("pseudo_from_params analytic shapes") {
  SUBCASE("unit cube") {
    const PseudoInertia j = PseudoFromParams(UnitCube());
    Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
    expected.diagonal() << 1.0 / 12, 1.0 / 12, 1.0 / 12, 1.0;
    CHECK((j.J - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("zero second moment") {
    InertialParams p;
    p.m = 1.0;
    const PseudoInertia j = PseudoFromParams(p);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
    expected(3, 3) = 1.0;
    CHECK((j.J - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("unit solid sphere radius 1") {
    InertialParams p;
    p.m = 1.0;
    p.Ibar = 0.4 * Eigen::Matrix3d::Identity();
    const PseudoInertia j = PseudoFromParams(p);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
    expected.diagonal() << 0.2, 0.2, 0.2, 1.0;
    CHECK((j.J - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("params_from_pseudo inverts the block formula") {
  SUBCASE("cube case") {
    PseudoInertia j;
    j.J = Eigen::Matrix4d::Identity();
    j.J.diagonal() << 1.0 / 12, 1.0 / 12, 1.0 / 12, 1.0;
    const InertialParams p = ParamsFromPseudo(j);
    CHECK(p.m == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.h.norm() == 0.0);
    CHECK((p.Ibar - (1.0 / 6.0) * Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  SUBCASE("identity pseudo-inertia") {
    PseudoInertia j;
    j.J = Eigen::Matrix4d::Identity();
    const InertialParams p = ParamsFromPseudo(j);
    // Sigma = I, tr(Sigma) = 3, Ibar = 3I - I = 2I.
    CHECK((p.Ibar - 2.0 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
          1e-15);
    const PseudoInertia back = PseudoFromParams(p);
    CHECK((back.J - j.J).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("round trip on random consistent bodies") {
    Rng rng(101);
    for (int i = 0; i < 200; ++i) {
      const InertialParams p = RandomConsistentParams(rng);
      const PseudoInertia j = PseudoFromParams(p);
      const InertialParams q = ParamsFromPseudo(j);
      const PseudoInertia j2 = PseudoFromParams(q);
      CHECK((j2.J - j.J).cwiseAbs().maxCoeff() <
            1e-12 * std::max(1.0, j.J.cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("rejects asymmetric input") {
    PseudoInertia j;
    j.J = Eigen::Matrix4d::Identity();
    j.J(0, 1) = 0.5;
    CHECK_THROWS_WITH_AS(ParamsFromPseudo(j),
                         doctest::Contains("not symmetric"), Error);
  }
}

TEST_CASE("vector layout round trip is exact") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Vector10d v;
    for (int k = 0; k < 10; ++k) v[k] = rng.Uniform(-5.0, 5.0);
    const InertialParams p = InertialParams::FromVector(v);
    CHECK((p.ToVector() - v).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("check_consistency") {
  SUBCASE("unit cube is consistent") {
    const ConsistencyReport r = CheckConsistency(UnitCube());
    CHECK(r.mass_positive);
    CHECK(r.moments_positive);
    CHECK(r.triangle_ok);
    CHECK(r.pd_ok);
    CHECK(r.consistent);
  }
  SUBCASE("point mass is degenerate, not an error") {
    InertialParams p;
    p.m = 2.0;
    p.h = Eigen::Vector3d(2.0, 0.0, 0.0);
    p.Ibar = Eigen::Vector3d(0.0, 2.0, 2.0).asDiagonal();
    const ConsistencyReport r = CheckConsistency(p);
    CHECK(r.mass_positive);
    CHECK_FALSE(r.moments_positive);
    CHECK_FALSE(r.consistent);
    CHECK(std::abs(r.min_eigenvalue_J) < 1e-12);
  }
  SUBCASE("triangle violation: D = (1, 1, 3)") {
    InertialParams p;
    p.m = 1.0;
    p.Ibar = Eigen::Vector3d(1.0, 1.0, 3.0).asDiagonal();
    const ConsistencyReport r = CheckConsistency(p);
    CHECK(r.mass_positive);
    CHECK(r.moments_positive);
    CHECK_FALSE(r.triangle_ok);
    CHECK_FALSE(r.pd_ok);
    CHECK_FALSE(r.consistent);
  }
  SUBCASE("both routes agree over mixed random inputs") {
    Rng rng(2024);
    int consistent_count = 0;
    for (int i = 0; i < 10000; ++i) {
      InertialParams p;
      if (i % 2 == 0) {
        p = RandomConsistentParams(rng);
      } else {
        // Unconstrained draw: usually inconsistent.
        Vector10d v;
        for (int k = 0; k < 10; ++k) v[k] = rng.Uniform(-2.0, 2.0);
        p = InertialParams::FromVector(v);
      }
      const ConsistencyReport r = CheckConsistency(p);
      const bool route_a =
          r.mass_positive && r.moments_positive && r.triangle_ok;
      CHECK(route_a == r.pd_ok);
      if (r.consistent) ++consistent_count;
    }
    CHECK(consistent_count >= 5000);  // every even draw is consistent
  }
}

TEST_CASE("principal_moments") {
  SUBCASE("cube at origin") {
    const PrincipalMoments pm = ComputePrincipalMoments(UnitCube());
    CHECK(pm.D.x() == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(pm.D.y() == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(pm.D.z() == doctest::Approx(1.0 / 6).epsilon(1e-12));
  }
  SUBCASE("parallel-axis removal recovers CoM-frame inertia") {
    // Cube displaced so that c = (0, 0, 0.5); Ibar built about the displaced
    // origin must still give D = (1/6, 1/6, 1/6).
    const Eigen::Vector3d c(0.0, 0.0, 0.5);
    InertialParams p;
    p.m = 1.0;
    p.h = p.m * c;
    p.Ibar = (1.0 / 6.0) * Eigen::Matrix3d::Identity() +
             p.m * (c.squaredNorm() * Eigen::Matrix3d::Identity() -
                    c * c.transpose());
    const PrincipalMoments pm = ComputePrincipalMoments(p);
    CHECK((pm.D - Eigen::Vector3d::Constant(1.0 / 6)).cwiseAbs().maxCoeff() <
          1e-9);
  }
  SUBCASE("sorted ascending with reconstructing eigenbasis") {
    Rng rng(55);
    for (int i = 0; i < 200; ++i) {
      const InertialParams p = RandomConsistentParams(rng);
      const PrincipalMoments pm = ComputePrincipalMoments(p);
      CHECK(pm.D.x() <= pm.D.y());
      CHECK(pm.D.y() <= pm.D.z());
      const Eigen::Vector3d c = p.h / p.m;
      const Eigen::Matrix3d ibar_c =
          p.Ibar - p.m * (c.squaredNorm() * Eigen::Matrix3d::Identity() -
                          c * c.transpose());
      const Eigen::Matrix3d recon =
          pm.R * pm.D.asDiagonal() * pm.R.transpose();
      CHECK((recon - ibar_c).cwiseAbs().maxCoeff() <
            1e-9 * std::max(1.0, ibar_c.cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("zero mass throws") {
    InertialParams p;
    p.m = 0.0;
    CHECK_THROWS_AS(ComputePrincipalMoments(p), Error);
  }
}

TEST_CASE("upper_cholesky") {
  SUBCASE("identity") {
    PseudoInertia j;
    j.J = Eigen::Matrix4d::Identity();
    const UpperCholesky l = UpperCholeskyFactor(j);
    CHECK((l.L - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("diagonal square roots") {
    PseudoInertia j;
    j.J = Eigen::Matrix4d::Identity();
    j.J.diagonal() << 1.0 / 12, 1.0 / 12, 1.0 / 12, 1.0;
    const UpperCholesky l = UpperCholeskyFactor(j);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
    const double s = 1.0 / std::sqrt(12.0);
    expected.diagonal() << s, s, s, 1.0;
    CHECK((l.L - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("reconstruction, triangularity, uniqueness") {
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
      const PseudoInertia j = PseudoFromParams(RandomConsistentParams(rng));
      const UpperCholesky l = UpperCholeskyFactor(j);
      for (int r = 1; r < 4; ++r)
        for (int c = 0; c < r; ++c) CHECK(l.L(r, c) == 0.0);
      for (int d = 0; d < 4; ++d) CHECK(l.L(d, d) > 0.0);
      const Eigen::Matrix4d recon = l.L * l.L.transpose();
      CHECK((recon - j.J).norm() / j.J.norm() < 1e-10);
      // Uniqueness: an independently computed upper factor must match
      // entrywise. Reverse-reorder Eigen's lower LLT of the reversed matrix.
      Eigen::Matrix4d reversed;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) reversed(r, c) = j.J(3 - r, 3 - c);
      const Eigen::Matrix4d alt_lower =
          Eigen::LLT<Eigen::Matrix4d>(reversed).matrixL();
      Eigen::Matrix4d alt;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) alt(3 - r, 3 - c) = alt_lower(r, c);
      CHECK((alt - l.L).cwiseAbs().maxCoeff() <
            1e-10 * std::max(1.0, l.L.cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("reports the failing pivot") {
    PseudoInertia j;
    j.J = Eigen::Matrix4d::Identity();
    j.J(3, 3) = -1.0;  // reversed factorization hits this first
    CHECK_THROWS_WITH_AS(UpperCholeskyFactor(j),
                         doctest::Contains("pivot at index 3"), Error);
  }
}

TEST_CASE("build_U") {
  SUBCASE("zero theta is the identity") {
    CHECK((BuildU(ThetaInert{}) - Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("alpha = ln 2 scales uniformly") {
    ThetaInert t;
    t.alpha = std::log(2.0);
    CHECK((BuildU(t) - 2.0 * Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  SUBCASE("single-axis stretch") {
    ThetaInert t;
    t.d1 = std::log(2.0);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
    expected(0, 0) = 2.0;
    CHECK((BuildU(t) - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("shear and translation placement") {
    ThetaInert t;
    t.s12 = 0.1;
    t.s23 = 0.2;
    t.s13 = 0.3;
    t.t1 = 0.4;
    t.t2 = 0.5;
    t.t3 = 0.6;
    const Eigen::Matrix4d u = BuildU(t);
    CHECK(u(0, 1) == 0.1);
    CHECK(u(1, 2) == 0.2);
    CHECK(u(0, 2) == 0.3);
    CHECK(u(0, 3) == 0.4);
    CHECK(u(1, 3) == 0.5);
    CHECK(u(2, 3) == 0.6);
    CHECK(u(3, 3) == 1.0);
  }
}

TEST_CASE("theta_from_U") {
  SUBCASE("identity maps to zero") {
    const ThetaInert t = ThetaFromU(Eigen::Matrix4d::Identity());
    for (double x : t.ToArray()) CHECK(x == 0.0);
  }
  SUBCASE("round trip over 1000 seeded draws") {
    Rng rng(31337);
    for (int i = 0; i < 1000; ++i) {
      const ThetaInert t = RandomTheta(rng, 0.7);
      const ThetaInert back = ThetaFromU(BuildU(t));
      const auto a = t.ToArray(), b = back.ToArray();
      for (int k = 0; k < 10; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
    }
  }
  SUBCASE("rejects lower-triangular garbage") {
    Eigen::Matrix4d u = Eigen::Matrix4d::Identity();
    u(1, 0) = 0.1;
    CHECK_THROWS_AS(ThetaFromU(u), Error);
  }
  SUBCASE("rejects nonpositive diagonal") {
    Eigen::Matrix4d u = Eigen::Matrix4d::Identity();
    u(2, 2) = 0.0;
    CHECK_THROWS_AS(ThetaFromU(u), Error);
  }
}

TEST_CASE("perturb") {
  const PseudoInertia cube_j = PseudoFromParams(UnitCube());

  SUBCASE("zero theta is the identity perturbation") {
    const PseudoInertia j2 = Perturb(cube_j, ThetaInert{});
    CHECK((j2.J - cube_j.J).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("alpha scales mass by beta^2") {
    ThetaInert t;
    const double beta = 1.5;
    t.alpha = std::log(beta);
    const PseudoInertia j2 = Perturb(cube_j, t);
    CHECK((j2.J - beta * beta * cube_j.J).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(j2.mass() == doctest::Approx(beta * beta).epsilon(1e-10));
  }
  SUBCASE("d1 = ln 2 quadruples the x second moment, keeps mass") {
    ThetaInert t;
    t.d1 = std::log(2.0);
    const PseudoInertia j2 = Perturb(cube_j, t);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
    expected.diagonal() << 1.0 / 3, 1.0 / 12, 1.0 / 12, 1.0;
    CHECK((j2.J - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("manifold closure over 10000 random pairs") {
    Rng rng(424242);
    for (int i = 0; i < 10000; ++i) {
      const InertialParams p = RandomConsistentParams(rng);
      const ThetaInert t = RandomTheta(rng, 1.0);
      const PseudoInertia j2 = Perturb(PseudoFromParams(p), t);
      const ConsistencyReport r = CheckConsistency(ParamsFromPseudo(j2));
      REQUIRE(r.consistent);
      REQUIRE(r.min_eigenvalue_J > 0.0);
    }
  }
  SUBCASE("mass law: alpha = 0 preserves mass exactly") {
    Rng rng(808);
    for (int i = 0; i < 200; ++i) {
      ThetaInert t = RandomTheta(rng, 0.5);
      t.alpha = 0.0;
      const PseudoInertia j = PseudoFromParams(RandomConsistentParams(rng));
      const PseudoInertia j2 = Perturb(j, t);
      CHECK(std::abs(j2.mass() - j.mass()) < 1e-12 * j.mass());
    }
  }
  SUBCASE("mass law: general alpha multiplies mass by e^{2 alpha}") {
    Rng rng(809);
    for (int i = 0; i < 200; ++i) {
      const ThetaInert t = RandomTheta(rng, 0.5);
      const PseudoInertia j = PseudoFromParams(RandomConsistentParams(rng));
      const PseudoInertia j2 = Perturb(j, t);
      const double expected = std::exp(2.0 * t.alpha) * j.mass();
      CHECK(std::abs(j2.mass() - expected) < 1e-10 * expected);
    }
  }
}
