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

#include "morphforge/inertia.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "morphforge/geometry.hpp"

namespace morphforge::inertia {

namespace {

double SymmetryDefect(const Eigen::Matrix4d& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

// Closed-form symmetric 3x3 eigendecomposition with an iterative fallback.
// computeDirect is Eigen's Cardano/trigonometric path; it is deterministic
// but loses accuracy on nearly-degenerate spectra, so the reconstruction is
// checked and the tridiagonal QL iteration takes over when it is poor.
void SymmetricEigen3(const Eigen::Matrix3d& a, Eigen::Vector3d* values,
                     Eigen::Matrix3d* vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
  solver.computeDirect(a);
  const Eigen::Matrix3d recon = solver.eigenvectors() *
                                solver.eigenvalues().asDiagonal() *
                                solver.eigenvectors().transpose();
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  if ((recon - a).cwiseAbs().maxCoeff() / scale > 1e-10) {
    solver.compute(a);
  }
  *values = solver.eigenvalues();
  *vectors = solver.eigenvectors();
}

}  // namespace

Vector10d InertialParams::ToVector() const {
  Vector10d v;
  v << m, h.x(), h.y(), h.z(),
      Ibar(0, 0), Ibar(1, 1), Ibar(2, 2),
      Ibar(0, 1), Ibar(0, 2), Ibar(1, 2);
  return v;
}

InertialParams InertialParams::FromVector(const Vector10d& v) {
  InertialParams p;
  p.m = v[0];
  p.h = Eigen::Vector3d(v[1], v[2], v[3]);
  p.Ibar << v[4], v[7], v[8],
            v[7], v[5], v[9],
            v[8], v[9], v[6];
  return p;
}

Eigen::Vector3d InertialParams::CenterOfMass() const {
  if (m <= 0.0) {
    throw Error(ErrorCode::kZeroMass, "center of mass undefined for m <= 0");
  }
  return h / m;
}

PseudoInertia PseudoFromParams(const InertialParams& p) {
  PseudoInertia pseudo;
  const Eigen::Matrix3d sigma =
      0.5 * p.Ibar.trace() * Eigen::Matrix3d::Identity() - p.Ibar;
  pseudo.J.topLeftCorner<3, 3>() = sigma;
  pseudo.J.topRightCorner<3, 1>() = p.h;
  pseudo.J.bottomLeftCorner<1, 3>() = p.h.transpose();
  pseudo.J(3, 3) = p.m;
  return pseudo;
}

InertialParams ParamsFromPseudo(const PseudoInertia& pseudo) {
  if (SymmetryDefect(pseudo.J) > 1e-12) {
    throw Error(ErrorCode::kNonSymmetric, "pseudo-inertia is not symmetric");
  }
  const Eigen::Matrix3d sigma = pseudo.J.topLeftCorner<3, 3>();
  InertialParams p;
  p.m = pseudo.J(3, 3);
  p.h = pseudo.J.topRightCorner<3, 1>();
  p.Ibar = sigma.trace() * Eigen::Matrix3d::Identity() - sigma;
  // Exact symmetry of Ibar regardless of roundoff in the input.
  p.Ibar = (0.5 * (p.Ibar + p.Ibar.transpose())).eval();
  return p;
}

ConsistencyReport CheckConsistency(const InertialParams& p) {
  ConsistencyReport report;
  report.mass_positive = p.m > 0.0;

  // Route (a): explicit constraints on the CoM-frame principal moments.
  if (report.mass_positive) {
    const Eigen::Vector3d c = p.h / p.m;
    const Eigen::Matrix3d ibar_c = p.Ibar - ParallelAxisTerm(p.m, c);
    Eigen::Vector3d d;
    Eigen::Matrix3d r;
    SymmetricEigen3(ibar_c, &d, &r);
    report.moments_positive = d[0] > 0.0 && d[1] > 0.0 && d[2] > 0.0;
    const double sum = d.sum();
    report.triangle_ok =
        sum > 2.0 * d[0] && sum > 2.0 * d[1] && sum > 2.0 * d[2];
  }

  // Route (b): eigenvalue test on the pseudo-inertia.
  const PseudoInertia pseudo = PseudoFromParams(p);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(pseudo.J);
  report.min_eigenvalue_J = solver.eigenvalues()[0];
  report.pd_ok = report.min_eigenvalue_J > kPdTolerance * pseudo.J.trace();

  report.consistent = report.mass_positive && report.moments_positive &&
                      report.triangle_ok && report.pd_ok;
  return report;
}

PrincipalMoments ComputePrincipalMoments(const InertialParams& p) {
  if (p.m <= 0.0) {
    throw Error(ErrorCode::kZeroMass, "principal moments require m > 0");
  }
  const Eigen::Vector3d c = p.h / p.m;
  const Eigen::Matrix3d ibar_c = p.Ibar - ParallelAxisTerm(p.m, c);
  PrincipalMoments pm;
  SymmetricEigen3(ibar_c, &pm.D, &pm.R);  // Eigen returns ascending order
  return pm;
}

UpperCholesky UpperCholeskyFactor(const PseudoInertia& pseudo) {
  // Index reversal: with P the exchange permutation, J = L L^T with L upper
  // iff P J P = (P L P)(P L P)^T with P L P lower. Run the textbook lower
  // factorization on the reversed matrix and reverse back.
  Eigen::Matrix4d reversed;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) reversed(i, j) = pseudo.J(3 - i, 3 - j);

  Eigen::Matrix4d lower = Eigen::Matrix4d::Zero();
  for (int j = 0; j < 4; ++j) {
    double pivot = reversed(j, j);
    for (int k = 0; k < j; ++k) pivot -= lower(j, k) * lower(j, k);
    if (!(pivot > 0.0)) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "nonpositive pivot at index " + std::to_string(3 - j));
    }
    lower(j, j) = std::sqrt(pivot);
    for (int i = j + 1; i < 4; ++i) {
      double acc = reversed(i, j);
      for (int k = 0; k < j; ++k) acc -= lower(i, k) * lower(j, k);
      lower(i, j) = acc / lower(j, j);
    }
  }

  UpperCholesky result;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) result.L(3 - i, 3 - j) = lower(i, j);
  return result;
}

std::array<double, 10> ThetaInert::ToArray() const {
  return {alpha, d1, d2, d3, s12, s23, s13, t1, t2, t3};
}

ThetaInert ThetaInert::FromArray(const std::array<double, 10>& a) {
  ThetaInert t;
  t.alpha = a[0];
  t.d1 = a[1];
  t.d2 = a[2];
  t.d3 = a[3];
  t.s12 = a[4];
  t.s23 = a[5];
  t.s13 = a[6];
  t.t1 = a[7];
  t.t2 = a[8];
  t.t3 = a[9];
  return t;
}

Eigen::Matrix4d BuildU(const ThetaInert& theta) {
  Eigen::Matrix4d u;
  u << std::exp(theta.d1), theta.s12, theta.s13, theta.t1,
       0.0, std::exp(theta.d2), theta.s23, theta.t2,
       0.0, 0.0, std::exp(theta.d3), theta.t3,
       0.0, 0.0, 0.0, 1.0;
  return std::exp(theta.alpha) * u;
}

ThetaInert ThetaFromU(const Eigen::Matrix4d& u) {
  const double scale = std::max(u.cwiseAbs().maxCoeff(), 1e-300);
  for (int i = 1; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(u(i, j)) > 1e-12 * scale) {
        throw Error(ErrorCode::kNotUpperTriangular,
                    "nonzero entry below the diagonal at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    if (!(u(i, i) > 0.0)) {
      throw Error(ErrorCode::kNonPositiveDiagonal,
                  "diagonal entry " + std::to_string(i) + " not positive");
    }
  }

  ThetaInert theta;
  const double ea = u(3, 3);
  theta.alpha = std::log(ea);
  theta.d1 = std::log(u(0, 0) / ea);
  theta.d2 = std::log(u(1, 1) / ea);
  theta.d3 = std::log(u(2, 2) / ea);
  theta.s12 = u(0, 1) / ea;
  theta.s13 = u(0, 2) / ea;
  theta.s23 = u(1, 2) / ea;
  theta.t1 = u(0, 3) / ea;
  theta.t2 = u(1, 3) / ea;
  theta.t3 = u(2, 3) / ea;
  return theta;
}

PseudoInertia Perturb(const PseudoInertia& pseudo, const ThetaInert& theta) {
  const UpperCholesky chol = UpperCholeskyFactor(pseudo);
  const Eigen::Matrix4d ul = BuildU(theta) * chol.L;
  PseudoInertia result;
  result.J = ul * ul.transpose();
  result.J = (0.5 * (result.J + result.J.transpose())).eval();
  return result;
}

}  // namespace morphforge::inertia
