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
// URDF front end. Parsing converts each link's inertial data -- which URDF
// states about the CoM in a possibly rotated inertia frame -- into the
// origin-frame convention used everywhere else in this library:
//
//     Ibar = R * I_com * R^T + m * (|c|^2 I - c c^T),    h = m * c.
//
// Serialization re-expresses inertia in URDF's CoM convention with an
// identity inertia-frame rotation, so parse -> serialize -> parse is a fixed
// point. Elements outside the interpreted subset (visual, collision, vendor
// extensions) ride along opaquely and are re-emitted as parsed.

#ifndef MORPHFORGE_ROBOT_MODEL_HPP_
#define MORPHFORGE_ROBOT_MODEL_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "morphforge/inertia.hpp"
#include "morphforge/xml.hpp"

namespace morphforge::model {

enum class Actuation { kRevolute, kFixed };

struct LinkSpec {
  std::string name;
  bool has_inertia = false;  // false: zero-extent dummy link
  inertia::InertialParams inertial;  // origin frame
  std::vector<xml::Node> passthrough;

  // Massless links model joint frames, not bodies; they are skipped by link
  // randomization and by consistency enforcement.
  bool IsMassless() const { return !has_inertia || inertial.m == 0.0; }
};

// Joint origin (position, rpy) follows URDF's native convention: expressed
// in the parent link's frame, even when joint origins chain.
struct JointSpec {
  std::string name;
  std::string parent;
  std::string child;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d rpy = Eigen::Vector3d::Zero();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  double q_min = 0.0;
  double q_max = 0.0;
  double qdot_max = 0.0;
  double tau_max = 0.0;
  Actuation actuation = Actuation::kRevolute;
  std::vector<xml::Node> passthrough;

  bool IsRevolute() const { return actuation == Actuation::kRevolute; }

  // [p, e, a, q_min, q_max, qdot_max, tau_max]
  Eigen::Matrix<double, 13, 1> ToVector() const;
};

struct RobotTemplate {
  std::string name;
  std::vector<LinkSpec> links;
  std::vector<JointSpec> joints;
  std::string root;

  int NumLinks() const { return static_cast<int>(links.size()); }
  int NumDof() const;  // revolute joint count

  const LinkSpec* FindLink(std::string_view link_name) const;
  LinkSpec* FindLink(std::string_view link_name);
  const JointSpec* FindJoint(std::string_view joint_name) const;
  JointSpec* FindJoint(std::string_view joint_name);

  // The joint whose child is the given link; nullptr for the root.
  const JointSpec* ParentJoint(std::string_view link_name) const;
};

// Parses a URDF document. Throws MalformedDocument, DanglingReference,
// CyclicTree, or MissingInertia. Links without an <inertial> block are
// accepted as massless dummies only when they also carry no visual/collision
// geometry.
RobotTemplate ParseRobot(std::string_view urdf_text);

RobotTemplate LoadRobot(const std::filesystem::path& path);

// Emits URDF with 17-significant-digit numerics. Refuses to emit impossible
// robots: throws InconsistentLink if any massful link fails the consistency
// check.
std::string SerializeRobot(const RobotTemplate& robot);

void SaveRobot(const RobotTemplate& robot, const std::filesystem::path& path);

// kappa: per-link 10-vectors then per-revolute-joint 13-vectors, in template
// list order. Length 10*n_b + 13*n_d.
Eigen::VectorXd TemplateVector(const RobotTemplate& robot);

double TotalMass(const RobotTemplate& robot);

}  // namespace morphforge::model

#endif  // MORPHFORGE_ROBOT_MODEL_HPP_
