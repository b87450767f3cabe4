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
//
// Pseudo-inertia algebra for rigid bodies. A body's 10 inertial parameters
// (mass, first mass moment, origin-frame rotational inertia) are packed into
// the symmetric 4x4 pseudo-inertia matrix
//
//     J = [ Sigma  h ]      Sigma = 1/2 tr(Ibar) I - Ibar
//         [ h^T    m ]
//
// which is positive definite exactly when the parameters describe a body that
// some nonnegative mass density could realize. Consistency-preserving
// perturbations factor J = L L^T (upper-triangular Cholesky) and act on L with
// an upper-triangular transform U built from an unconstrained 10-vector
// theta = [alpha, d1..d3, s12, s23, s13, t1..t3]: density scale, axis
// stretches, shears, and CoM translation. J' = (U L)(U L)^T stays positive
// definite for every finite theta.

#ifndef MORPHFORGE_INERTIA_HPP_
#define MORPHFORGE_INERTIA_HPP_

#include <array>

#include <Eigen/Dense>

#include "morphforge/errors.hpp"

namespace morphforge::inertia {

using Vector10d = Eigen::Matrix<double, 10, 1>;

// Mass m, first mass moment h = m*c, and rotational inertia Ibar taken about
// the body-frame origin (not the CoM).
struct InertialParams {
  double m{0.0};
  Eigen::Vector3d h{Eigen::Vector3d::Zero()};
  Eigen::Matrix3d Ibar{Eigen::Matrix3d::Zero()};

  // Flat layout [m, hx, hy, hz, Ixx, Iyy, Izz, Ixy, Ixz, Iyz].
  Vector10d ToVector() const;
  static InertialParams FromVector(const Vector10d& v);

  Eigen::Vector3d CenterOfMass() const;  // h/m; throws ZeroMass if m <= 0
};

struct PseudoInertia {
  Eigen::Matrix4d J{Eigen::Matrix4d::Zero()};

  double mass() const { return J(3, 3); }
};

// Upper-triangular factor with positive diagonal: J = L * L^T.
struct UpperCholesky {
  Eigen::Matrix4d L{Eigen::Matrix4d::Identity()};
};

// The unconstrained randomization vector. Any finite value is admissible;
// zero is the identity perturbation.
struct ThetaInert {
  double alpha{0.0};
  double d1{0.0}, d2{0.0}, d3{0.0};
  double s12{0.0}, s23{0.0}, s13{0.0};
  double t1{0.0}, t2{0.0}, t3{0.0};

  std::array<double, 10> ToArray() const;
  static ThetaInert FromArray(const std::array<double, 10>& a);
};

// Eigenvalues of the CoM-frame inertia, ascending, with the eigenvector basis.
struct PrincipalMoments {
  Eigen::Vector3d D{Eigen::Vector3d::Zero()};
  Eigen::Matrix3d R{Eigen::Matrix3d::Identity()};
};

// Physical-consistency verdict computed along two independent routes: the
// explicit CoM-frame constraints (mass, principal moments, triangle
// inequality) and the eigenvalue test on J. `consistent` is the conjunction
// of all flags; the two routes agreeing is a tested invariant, not an
// enforced one.
struct ConsistencyReport {
  bool mass_positive{false};
  bool moments_positive{false};
  bool triangle_ok{false};
  bool pd_ok{false};
  double min_eigenvalue_J{0.0};
  bool consistent{false};
};

// J is accepted as positive definite when its minimum eigenvalue exceeds
// kPdTolerance * trace(J). Scale-invariant: robot links span several orders
// of magnitude in inertia.
inline constexpr double kPdTolerance = 1e-12;

PseudoInertia PseudoFromParams(const InertialParams& p);

// Algebraic inverse of PseudoFromParams: Ibar = tr(Sigma) I - Sigma.
// Throws NonSymmetric if J is not symmetric to 1e-12 relative.
InertialParams ParamsFromPseudo(const PseudoInertia& pseudo);

ConsistencyReport CheckConsistency(const InertialParams& p);

// CoM-frame inertia Ibar_C = Ibar - m S(c) S(c)^T, eigen-decomposed with a
// closed-form (trigonometric) 3x3 solver; falls back to the tridiagonal
// iteration when the direct result reconstructs poorly. Throws ZeroMass.
PrincipalMoments ComputePrincipalMoments(const InertialParams& p);

// Factors J = L L^T with L upper-triangular, positive diagonal. Implemented
// by running a standard lower Cholesky on the index-reversed matrix, which
// keeps the uniqueness argument intact. Throws NotPositiveDefinite with the
// failing pivot index (in the original index order).
UpperCholesky UpperCholeskyFactor(const PseudoInertia& pseudo);

// U(theta) = e^alpha * [[e^d1, s12, s13, t1],
//                       [   0, e^d2, s23, t2],
//                       [   0,    0, e^d3, t3],
//                       [   0,    0,    0,  1]]
Eigen::Matrix4d BuildU(const ThetaInert& theta);

// Inverse of BuildU. Throws NotUpperTriangular / NonPositiveDiagonal.
ThetaInert ThetaFromU(const Eigen::Matrix4d& u);

// J' = (U L)(U L)^T. Positive definite for every finite theta; theta = 0
// returns J unchanged (to roundoff).
PseudoInertia Perturb(const PseudoInertia& pseudo, const ThetaInert& theta);

}  // namespace morphforge::inertia

#endif  // MORPHFORGE_INERTIA_HPP_
