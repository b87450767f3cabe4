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

#include "morphforge/robot_model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "morphforge/errors.hpp"
#include "morphforge/geometry.hpp"

namespace morphforge::model {

namespace {

[[noreturn]] void FailAt(const xml::Node& node, const std::string& message) {
  throw Error(ErrorCode::kMalformedDocument,
              "line " + std::to_string(node.line) + ", column " +
                  std::to_string(node.column) + ": " + message);
}

double ParseNumber(const xml::Node& node, const std::string& raw) {
  const char* begin = raw.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end)))
    ++end;
  if (end == begin || (end && *end != '\0') || !std::isfinite(value)) {
    FailAt(node, "bad number '" + raw + "'");
  }
  return value;
}

double RequiredNumberAttr(const xml::Node& node, std::string_view name) {
  const std::string* raw = node.FindAttribute(name);
  if (!raw) FailAt(node, "<" + node.name + "> is missing '" + std::string(name) + "'");
  return ParseNumber(node, *raw);
}

double OptionalNumberAttr(const xml::Node& node, std::string_view name,
                          double fallback) {
  const std::string* raw = node.FindAttribute(name);
  return raw ? ParseNumber(node, *raw) : fallback;
}

Eigen::Vector3d ParseVector3(const xml::Node& node, const std::string& raw) {
  std::istringstream stream(raw);
  Eigen::Vector3d v;
  std::string token;
  for (int i = 0; i < 3; ++i) {
    if (!(stream >> token)) FailAt(node, "expected 3 numbers in '" + raw + "'");
    v[i] = ParseNumber(node, token);
  }
  if (stream >> token) FailAt(node, "expected 3 numbers in '" + raw + "'");
  return v;
}

Eigen::Vector3d OptionalVector3Attr(const xml::Node& node,
                                    std::string_view name,
                                    const Eigen::Vector3d& fallback) {
  const std::string* raw = node.FindAttribute(name);
  return raw ? ParseVector3(node, *raw) : fallback;
}

// 17 significant digits: enough to reproduce any double exactly on re-parse.
std::string FormatNumber(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string FormatVector3(const Eigen::Vector3d& v) {
  return FormatNumber(v.x()) + " " + FormatNumber(v.y()) + " " +
         FormatNumber(v.z());
}

LinkSpec ParseLink(const xml::Node& node) {
  LinkSpec link;
  const std::string* name = node.FindAttribute("name");
  if (!name || name->empty()) FailAt(node, "<link> is missing 'name'");
  link.name = *name;

  bool has_geometry = false;
  for (const xml::Node& child : node.children) {
    if (child.name == "inertial") continue;
    if (child.name == "visual" || child.name == "collision")
      has_geometry = true;
    link.passthrough.push_back(child);
  }

  const xml::Node* inertial = node.FindChild("inertial");
  if (!inertial) {
    if (has_geometry) {
      throw Error(ErrorCode::kMissingInertia,
                  "link '" + link.name +
                      "' has geometry but no <inertial> block");
    }
    link.has_inertia = false;  // zero-extent dummy link
    return link;
  }

  link.has_inertia = true;
  const xml::Node* mass = inertial->FindChild("mass");
  if (!mass) FailAt(*inertial, "<inertial> is missing <mass>");
  const double m = RequiredNumberAttr(*mass, "value");
  if (m < 0.0) FailAt(*mass, "negative mass");

  Eigen::Vector3d com = Eigen::Vector3d::Zero();
  Eigen::Vector3d inertia_rpy = Eigen::Vector3d::Zero();
  if (const xml::Node* origin = inertial->FindChild("origin")) {
    com = OptionalVector3Attr(*origin, "xyz", Eigen::Vector3d::Zero());
    inertia_rpy = OptionalVector3Attr(*origin, "rpy", Eigen::Vector3d::Zero());
  }

  Eigen::Matrix3d i_com = Eigen::Matrix3d::Zero();
  if (const xml::Node* tensor = inertial->FindChild("inertia")) {
    const double ixx = RequiredNumberAttr(*tensor, "ixx");
    const double iyy = RequiredNumberAttr(*tensor, "iyy");
    const double izz = RequiredNumberAttr(*tensor, "izz");
    const double ixy = OptionalNumberAttr(*tensor, "ixy", 0.0);
    const double ixz = OptionalNumberAttr(*tensor, "ixz", 0.0);
    const double iyz = OptionalNumberAttr(*tensor, "iyz", 0.0);
    i_com << ixx, ixy, ixz, ixy, iyy, iyz, ixz, iyz, izz;
  } else if (m > 0.0) {
    FailAt(*inertial, "<inertial> is missing <inertia>");
  }

  // URDF states I about the CoM in a possibly rotated inertia frame; move it
  // to the link-frame origin.
  const Eigen::Matrix3d r = RpyToRotation(inertia_rpy);
  link.inertial.m = m;
  link.inertial.h = m * com;
  link.inertial.Ibar =
      r * i_com * r.transpose() + ParallelAxisTerm(m, com);
  link.inertial.Ibar =
      (0.5 * (link.inertial.Ibar + link.inertial.Ibar.transpose())).eval();
  return link;
}

JointSpec ParseJoint(const xml::Node& node) {
  JointSpec joint;
  const std::string* name = node.FindAttribute("name");
  if (!name || name->empty()) FailAt(node, "<joint> is missing 'name'");
  joint.name = *name;

  const std::string* type = node.FindAttribute("type");
  if (!type) FailAt(node, "<joint> is missing 'type'");
  if (*type == "revolute") {
    joint.actuation = Actuation::kRevolute;
  } else if (*type == "fixed") {
    joint.actuation = Actuation::kFixed;
  } else {
    FailAt(node, "unsupported joint type '" + *type +
                     "' (subset: revolute, fixed)");
  }

  const xml::Node* parent = node.FindChild("parent");
  const xml::Node* child = node.FindChild("child");
  if (!parent || !parent->FindAttribute("link"))
    FailAt(node, "<joint> is missing <parent link=...>");
  if (!child || !child->FindAttribute("link"))
    FailAt(node, "<joint> is missing <child link=...>");
  joint.parent = *parent->FindAttribute("link");
  joint.child = *child->FindAttribute("link");

  if (const xml::Node* origin = node.FindChild("origin")) {
    joint.position = OptionalVector3Attr(*origin, "xyz", Eigen::Vector3d::Zero());
    joint.rpy = OptionalVector3Attr(*origin, "rpy", Eigen::Vector3d::Zero());
  }
  if (const xml::Node* axis = node.FindChild("axis")) {
    joint.axis = OptionalVector3Attr(*axis, "xyz", Eigen::Vector3d::UnitX());
  }

  if (joint.IsRevolute()) {
    const xml::Node* limit = node.FindChild("limit");
    if (!limit) FailAt(node, "revolute joint '" + joint.name + "' has no <limit>");
    joint.q_min = OptionalNumberAttr(*limit, "lower", 0.0);
    joint.q_max = OptionalNumberAttr(*limit, "upper", 0.0);
    joint.qdot_max = RequiredNumberAttr(*limit, "velocity");
    joint.tau_max = RequiredNumberAttr(*limit, "effort");
    if (joint.q_min > joint.q_max) {
      FailAt(*limit, "lower > upper on joint '" + joint.name + "'");
    }
    if (std::abs(joint.axis.norm() - 1.0) > 1e-9) {
      FailAt(node, "revolute joint '" + joint.name + "' axis is not unit length");
    }
  }

  for (const xml::Node& extra : node.children) {
    if (extra.name == "parent" || extra.name == "child" ||
        extra.name == "origin" || extra.name == "axis" ||
        extra.name == "limit") {
      continue;
    }
    joint.passthrough.push_back(extra);
  }
  return joint;
}

void ValidateTree(const RobotTemplate& robot) {
  std::map<std::string, int> link_index;
  for (int i = 0; i < robot.NumLinks(); ++i) {
    if (!link_index.emplace(robot.links[i].name, i).second) {
      throw Error(ErrorCode::kMalformedDocument,
                  "duplicate link name '" + robot.links[i].name + "'");
    }
  }
  std::set<std::string> joint_names;
  std::map<std::string, const JointSpec*> parent_of;
  for (const JointSpec& joint : robot.joints) {
    if (!joint_names.insert(joint.name).second) {
      throw Error(ErrorCode::kMalformedDocument,
                  "duplicate joint name '" + joint.name + "'");
    }
    for (const std::string& ref : {joint.parent, joint.child}) {
      if (!link_index.count(ref)) {
        throw Error(ErrorCode::kDanglingReference,
                    "joint '" + joint.name + "' references missing link '" +
                        ref + "'");
      }
    }
    if (!parent_of.emplace(joint.child, &joint).second) {
      throw Error(ErrorCode::kCyclicTree,
                  "link '" + joint.child + "' has multiple parent joints");
    }
  }

  std::vector<std::string> roots;
  for (const LinkSpec& link : robot.links) {
    if (!parent_of.count(link.name)) roots.push_back(link.name);
  }
  if (roots.empty()) {
    throw Error(ErrorCode::kCyclicTree, "no root link: the joint graph is cyclic");
  }
  if (roots.size() > 1) {
    std::string listed;
    for (const std::string& r : roots) listed += " '" + r + "'";
    throw Error(ErrorCode::kMalformedDocument,
                "multiple root links:" + listed);
  }

  // Walk child chains up to the root; a chain longer than the link count
  // means a cycle that is unreachable from the root.
  for (const LinkSpec& link : robot.links) {
    std::string current = link.name;
    int steps = 0;
    while (parent_of.count(current)) {
      current = parent_of.at(current)->parent;
      if (++steps > robot.NumLinks()) {
        throw Error(ErrorCode::kCyclicTree,
                    "cycle detected through link '" + link.name + "'");
      }
    }
    if (current != roots[0]) {
      throw Error(ErrorCode::kCyclicTree,
                  "link '" + link.name + "' is not connected to the root");
    }
  }
}

}  // namespace

Eigen::Matrix<double, 13, 1> JointSpec::ToVector() const {
  Eigen::Matrix<double, 13, 1> v;
  v << position, rpy, axis, q_min, q_max, qdot_max, tau_max;
  return v;
}

int RobotTemplate::NumDof() const {
  int n = 0;
  for (const JointSpec& joint : joints) n += joint.IsRevolute() ? 1 : 0;
  return n;
}

const LinkSpec* RobotTemplate::FindLink(std::string_view link_name) const {
  for (const LinkSpec& link : links)
    if (link.name == link_name) return &link;
  return nullptr;
}

LinkSpec* RobotTemplate::FindLink(std::string_view link_name) {
  return const_cast<LinkSpec*>(
      static_cast<const RobotTemplate*>(this)->FindLink(link_name));
}

const JointSpec* RobotTemplate::FindJoint(std::string_view joint_name) const {
  for (const JointSpec& joint : joints)
    if (joint.name == joint_name) return &joint;
  return nullptr;
}

JointSpec* RobotTemplate::FindJoint(std::string_view joint_name) {
  return const_cast<JointSpec*>(
      static_cast<const RobotTemplate*>(this)->FindJoint(joint_name));
}

const JointSpec* RobotTemplate::ParentJoint(std::string_view link_name) const {
  for (const JointSpec& joint : joints)
    if (joint.child == link_name) return &joint;
  return nullptr;
}

RobotTemplate ParseRobot(std::string_view urdf_text) {
  const xml::Node root = xml::Parse(urdf_text);
  if (root.name != "robot") {
    FailAt(root, "expected <robot>, found <" + root.name + ">");
  }
  RobotTemplate robot;
  if (const std::string* name = root.FindAttribute("name")) robot.name = *name;

  for (const xml::Node& child : root.children) {
    if (child.name == "link") {
      robot.links.push_back(ParseLink(child));
    } else if (child.name == "joint") {
      robot.joints.push_back(ParseJoint(child));
    }
    // Other top-level elements (material, gazebo, transmission...) are not
    // interpreted and not needed for round-tripping kappa; skip them.
  }
  if (robot.links.empty()) {
    FailAt(root, "<robot> declares no links");
  }

  ValidateTree(robot);
  std::set<std::string> children;
  for (const JointSpec& joint : robot.joints) children.insert(joint.child);
  for (const LinkSpec& link : robot.links) {
    if (!children.count(link.name)) {
      robot.root = link.name;
      break;
    }
  }
  return robot;
}

RobotTemplate LoadRobot(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return ParseRobot(buffer.str());
}

std::string SerializeRobot(const RobotTemplate& robot) {
  for (const LinkSpec& link : robot.links) {
    if (link.IsMassless()) continue;
    if (!inertia::CheckConsistency(link.inertial).consistent) {
      throw Error(ErrorCode::kInconsistentLink,
                  "link '" + link.name +
                      "' fails the physical-consistency check");
    }
  }

  xml::Node root;
  root.name = "robot";
  root.attributes.push_back({"name", robot.name});

  for (const LinkSpec& link : robot.links) {
    xml::Node node;
    node.name = "link";
    node.attributes.push_back({"name", link.name});
    if (link.has_inertia) {
      const double m = link.inertial.m;
      const Eigen::Vector3d com =
          m > 0.0 ? Eigen::Vector3d(link.inertial.h / m)
                  : Eigen::Vector3d::Zero();
      const Eigen::Matrix3d i_com =
          link.inertial.Ibar - ParallelAxisTerm(m, com);

      xml::Node inertial;
      inertial.name = "inertial";
      xml::Node origin;
      origin.name = "origin";
      origin.attributes.push_back({"xyz", FormatVector3(com)});
      origin.attributes.push_back({"rpy", "0 0 0"});
      xml::Node mass;
      mass.name = "mass";
      mass.attributes.push_back({"value", FormatNumber(m)});
      xml::Node tensor;
      tensor.name = "inertia";
      tensor.attributes.push_back({"ixx", FormatNumber(i_com(0, 0))});
      tensor.attributes.push_back({"ixy", FormatNumber(i_com(0, 1))});
      tensor.attributes.push_back({"ixz", FormatNumber(i_com(0, 2))});
      tensor.attributes.push_back({"iyy", FormatNumber(i_com(1, 1))});
      tensor.attributes.push_back({"iyz", FormatNumber(i_com(1, 2))});
      tensor.attributes.push_back({"izz", FormatNumber(i_com(2, 2))});
      inertial.children = {origin, mass, tensor};
      node.children.push_back(std::move(inertial));
    }
    for (const xml::Node& extra : link.passthrough) node.children.push_back(extra);
    root.children.push_back(std::move(node));
  }

  for (const JointSpec& joint : robot.joints) {
    xml::Node node;
    node.name = "joint";
    node.attributes.push_back({"name", joint.name});
    node.attributes.push_back(
        {"type", joint.IsRevolute() ? "revolute" : "fixed"});

    xml::Node origin;
    origin.name = "origin";
    origin.attributes.push_back({"xyz", FormatVector3(joint.position)});
    origin.attributes.push_back({"rpy", FormatVector3(joint.rpy)});
    node.children.push_back(std::move(origin));

    xml::Node parent;
    parent.name = "parent";
    parent.attributes.push_back({"link", joint.parent});
    node.children.push_back(std::move(parent));
    xml::Node child;
    child.name = "child";
    child.attributes.push_back({"link", joint.child});
    node.children.push_back(std::move(child));

    xml::Node axis;
    axis.name = "axis";
    axis.attributes.push_back({"xyz", FormatVector3(joint.axis)});
    node.children.push_back(std::move(axis));

    if (joint.IsRevolute()) {
      xml::Node limit;
      limit.name = "limit";
      limit.attributes.push_back({"lower", FormatNumber(joint.q_min)});
      limit.attributes.push_back({"upper", FormatNumber(joint.q_max)});
      limit.attributes.push_back({"velocity", FormatNumber(joint.qdot_max)});
      limit.attributes.push_back({"effort", FormatNumber(joint.tau_max)});
      node.children.push_back(std::move(limit));
    }
    for (const xml::Node& extra : joint.passthrough) node.children.push_back(extra);
    root.children.push_back(std::move(node));
  }
  return xml::Serialize(root);
}

void SaveRobot(const RobotTemplate& robot, const std::filesystem::path& path) {
  const std::string text = SerializeRobot(robot);
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream || !(stream << text)) {
    throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  }
}

Eigen::VectorXd TemplateVector(const RobotTemplate& robot) {
  const int n_b = robot.NumLinks();
  const int n_d = robot.NumDof();
  Eigen::VectorXd kappa(10 * n_b + 13 * n_d);
  int offset = 0;
  for (const LinkSpec& link : robot.links) {
    kappa.segment<10>(offset) =
        link.has_inertia ? link.inertial.ToVector()
                         : inertia::Vector10d::Zero();
    offset += 10;
  }
  for (const JointSpec& joint : robot.joints) {
    if (!joint.IsRevolute()) continue;
    kappa.segment<13>(offset) = joint.ToVector();
    offset += 13;
  }
  return kappa;
}

double TotalMass(const RobotTemplate& robot) {
  double total = 0.0;
  for (const LinkSpec& link : robot.links) {
    if (link.has_inertia) total += link.inertial.m;
  }
  return total;
}

}  // namespace morphforge::model
