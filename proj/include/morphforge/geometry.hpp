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

#ifndef MORPHFORGE_GEOMETRY_HPP_
#define MORPHFORGE_GEOMETRY_HPP_

#include <cmath>

#include <Eigen/Dense>

namespace morphforge {

// Fixed-axis roll/pitch/yaw to rotation matrix, R = Rz(yaw)*Ry(pitch)*Rx(roll).
// This is the URDF <origin rpy="..."/> convention.
inline Eigen::Matrix3d RpyToRotation(const Eigen::Vector3d& rpy) {
  const double cr = std::cos(rpy.x()), sr = std::sin(rpy.x());
  const double cp = std::cos(rpy.y()), sp = std::sin(rpy.y());
  const double cy = std::cos(rpy.z()), sy = std::sin(rpy.z());
  Eigen::Matrix3d r;
  r << cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr,
       sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr,
       -sp,     cp * sr,                cp * cr;
  return r;
}

inline Eigen::Matrix3d Skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d s;
  s <<     0, -v.z(),  v.y(),
       v.z(),      0, -v.x(),
      -v.y(),  v.x(),      0;
  return s;
}

// m * S(c) * S(c)^T = m * (|c|^2 I - c c^T): the parallel-axis correction term
// between origin-frame and CoM-frame rotational inertia.
inline Eigen::Matrix3d ParallelAxisTerm(double m, const Eigen::Vector3d& c) {
  return m * (c.squaredNorm() * Eigen::Matrix3d::Identity() - c * c.transpose());
}

}  // namespace morphforge

#endif  // MORPHFORGE_GEOMETRY_HPP_
