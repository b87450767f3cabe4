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

#include "morphforge/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include <nlohmann/json.hpp>

#include "morphforge/errors.hpp"

namespace morphforge::canonical {

namespace {

constexpr std::array<CanonicalJoint, kNumSlots> kGlobalJoints = {{
    {0, "Left hip roll", {1, 0, 0}},
    {1, "Left hip pitch", {0, 1, 0}},
    {2, "Left hip yaw", {0, 0, 1}},
    {3, "Left knee pitch", {0, 1, 0}},
    {4, "Left ankle roll", {1, 0, 0}},
    {5, "Left ankle pitch", {0, 1, 0}},
    {6, "Right hip roll", {1, 0, 0}},
    {7, "Right hip pitch", {0, 1, 0}},
    {8, "Right hip yaw", {0, 0, 1}},
    {9, "Right knee pitch", {0, 1, 0}},
    {10, "Right ankle roll", {1, 0, 0}},
    {11, "Right ankle pitch", {0, 1, 0}},
    {12, "Waist pitch", {0, 1, 0}},
    {13, "Waist roll", {1, 0, 0}},
    {14, "Waist yaw", {0, 0, 1}},
    {15, "Head roll", {1, 0, 0}},
    {16, "Head pitch", {0, 1, 0}},
    {17, "Head yaw", {0, 0, 1}},
    {18, "Left shoulder roll", {1, 0, 0}},
    {19, "Left shoulder pitch", {0, 1, 0}},
    {20, "Left shoulder yaw", {0, 0, 1}},
    {21, "Left elbow pitch", {0, 1, 0}},
    {22, "Left wrist roll", {1, 0, 0}},
    {23, "Left wrist pitch", {0, 1, 0}},
    {24, "Left wrist yaw", {0, 0, 1}},
    {25, "Right shoulder roll", {1, 0, 0}},
    {26, "Right shoulder pitch", {0, 1, 0}},
    {27, "Right shoulder yaw", {0, 0, 1}},
    {28, "Right elbow pitch", {0, 1, 0}},
    {29, "Right wrist roll", {1, 0, 0}},
    {30, "Right wrist pitch", {0, 1, 0}},
    {31, "Right wrist yaw", {0, 0, 1}},
}};

// Levenshtein distance, used only for error suggestions.
int EditDistance(std::string_view a, std::string_view b) {
  std::vector<int> prev(b.size() + 1), curr(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    curr[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

std::string SuggestCanonicalNames(std::string_view physical) {
  std::vector<std::pair<int, std::string>> ranked;
  for (const CanonicalJoint& joint : kGlobalJoints) {
    std::string lowered(joint.name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), ::tolower);
    std::replace(lowered.begin(), lowered.end(), ' ', '_');
    ranked.emplace_back(EditDistance(physical, lowered), joint.name);
  }
  std::sort(ranked.begin(), ranked.end());
  std::string out;
  for (size_t i = 0; i < 3 && i < ranked.size(); ++i) {
    if (i) out += ", ";
    out += "'" + ranked[i].second + "'";
  }
  return out;
}

}  // namespace

const std::array<CanonicalJoint, kNumSlots>& GlobalJointTable() {
  return kGlobalJoints;
}

int SlotByName(std::string_view canonical_name) {
  for (const CanonicalJoint& joint : kGlobalJoints) {
    if (canonical_name == joint.name) return joint.index;
  }
  return -1;
}

uint64_t TableChecksum() {
  uint64_t hash = 14695981039346656037ULL;
  auto mix = [&hash](std::string_view bytes) {
    for (const char c : bytes) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 1099511628211ULL;
    }
  };
  for (const CanonicalJoint& joint : kGlobalJoints) {
    mix(std::to_string(joint.index));
    mix(joint.name);
    for (const double a : joint.axis) mix(std::to_string(static_cast<int>(a)));
  }
  return hash;
}

std::optional<std::string> AliasTable::Lookup(std::string_view physical) const {
  const auto exact = entries.find(std::string(physical));
  if (exact != entries.end()) return exact->second;
  const std::string* best = nullptr;
  size_t best_len = 0;
  for (const auto& [pattern, canonical] : entries) {
    if (pattern.empty() || pattern.back() != '*') continue;
    const std::string_view prefix(pattern.data(), pattern.size() - 1);
    if (physical.substr(0, prefix.size()) == prefix &&
        prefix.size() >= best_len) {
      best = &canonical;
      best_len = prefix.size();
    }
  }
  if (best) return *best;
  return std::nullopt;
}

JointMap BuildJointMap(const model::RobotTemplate& robot,
                       const AliasTable& aliases) {
  JointMap map;
  for (const model::JointSpec& joint : robot.joints) {
    if (!joint.IsRevolute()) continue;
    const std::optional<std::string> canonical = aliases.Lookup(joint.name);
    if (!canonical) {
      throw Error(ErrorCode::kUnmappedJoint,
                  "no alias for revolute joint '" + joint.name +
                      "'; closest canonical names: " +
                      SuggestCanonicalNames(joint.name));
    }
    const int slot = SlotByName(*canonical);
    if (slot < 0) {
      throw Error(ErrorCode::kUnmappedJoint,
                  "alias for '" + joint.name + "' names unknown slot '" +
                      *canonical + "'; closest canonical names: " +
                      SuggestCanonicalNames(*canonical));
    }
    if (map.inverse[slot].has_value()) {
      throw Error(ErrorCode::kDuplicateSlot,
                  "joints '" + *map.inverse[slot] + "' and '" + joint.name +
                      "' both claim slot " + std::to_string(slot) + " ('" +
                      *canonical + "')");
    }
    map.forward[joint.name] = slot;
    map.inverse[slot] = joint.name;
  }
  map.n_r = static_cast<int>(map.forward.size());
  return map;
}

namespace {

// Physical revolute joints in template order define the layout of q_r.
std::vector<const model::JointSpec*> RevoluteJoints(
    const model::RobotTemplate& robot) {
  std::vector<const model::JointSpec*> joints;
  for (const model::JointSpec& joint : robot.joints) {
    if (joint.IsRevolute()) joints.push_back(&joint);
  }
  return joints;
}

}  // namespace

Eigen::VectorXd Project(const Eigen::VectorXd& q_r,
                        const model::RobotTemplate& robot,
                        const JointMap& map) {
  const auto joints = RevoluteJoints(robot);
  if (q_r.size() != static_cast<Eigen::Index>(joints.size())) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(joints.size()) + " values, got " +
                    std::to_string(q_r.size()));
  }
  Eigen::VectorXd q_global = Eigen::VectorXd::Zero(kNumSlots);
  for (size_t j = 0; j < joints.size(); ++j) {
    const auto found = map.forward.find(joints[j]->name);
    if (found != map.forward.end()) q_global[found->second] = q_r[j];
  }
  return q_global;
}

Eigen::VectorXd Unproject(const Eigen::VectorXd& q_global,
                          const model::RobotTemplate& robot,
                          const JointMap& map) {
  if (q_global.size() != kNumSlots) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected a 32-vector, got " + std::to_string(q_global.size()));
  }
  const auto joints = RevoluteJoints(robot);
  Eigen::VectorXd q_r = Eigen::VectorXd::Zero(joints.size());
  for (size_t j = 0; j < joints.size(); ++j) {
    const auto found = map.forward.find(joints[j]->name);
    if (found != map.forward.end()) q_r[j] = q_global[found->second];
  }
  return q_r;
}

int EmbodimentGraph::PresentCount() const {
  int count = 0;
  for (const bool p : present) count += p ? 1 : 0;
  return count;
}

EmbodimentGraph BuildGraph(const model::RobotTemplate& robot,
                           const JointMap& map,
                           const ParallelGroups& parallel_groups) {
  EmbodimentGraph graph;
  graph.A.setZero();

  // group_of[joint] = index into parallel_groups, or -1.
  std::map<std::string, int> group_of;
  for (size_t g = 0; g < parallel_groups.size(); ++g) {
    for (const std::string& name : parallel_groups[g]) {
      group_of[name] = static_cast<int>(g);
    }
  }

  auto slot_of = [&map](const std::string& joint_name) -> int {
    const auto found = map.forward.find(joint_name);
    return found == map.forward.end() ? -1 : found->second;
  };

  for (const model::JointSpec& joint : robot.joints) {
    if (!joint.IsRevolute()) continue;
    const int slot = slot_of(joint.name);
    if (slot >= 0) graph.present[slot] = true;
  }

  // Nearest present ancestor: walk parent links upward, skipping fixed and
  // unmapped joints, and skipping members of the same parallel group so the
  // group's preceding joint becomes the shared parent.
  std::vector<int> roots;
  std::vector<std::pair<int, int>> edges;
  for (const model::JointSpec& joint : robot.joints) {
    const int slot = slot_of(joint.name);
    if (slot < 0 || !joint.IsRevolute()) continue;
    const int own_group =
        group_of.count(joint.name) ? group_of.at(joint.name) : -1;

    int parent_slot = -1;
    std::string link = joint.parent;
    int steps = 0;
    while (true) {
      const model::JointSpec* up = robot.ParentJoint(link);
      if (!up) break;  // reached the root link
      if (++steps > robot.NumLinks()) {
        throw Error(ErrorCode::kCycleDetected,
                    "cycle while walking ancestors of '" + joint.name + "'");
      }
      const int up_slot = slot_of(up->name);
      const bool same_group = own_group >= 0 && group_of.count(up->name) &&
                              group_of.at(up->name) == own_group;
      if (up->IsRevolute() && up_slot >= 0 && !same_group) {
        parent_slot = up_slot;
        break;
      }
      link = up->parent;
    }
    if (parent_slot >= 0) {
      edges.emplace_back(parent_slot, slot);
    } else {
      roots.push_back(slot);
    }
  }

  // Joints hanging off the root link form a forest; the lowest canonical
  // index becomes the tree root and adopts the other forest roots.
  if (!roots.empty()) {
    std::sort(roots.begin(), roots.end());
    for (size_t i = 1; i < roots.size(); ++i) {
      edges.emplace_back(roots[0], roots[i]);
    }
  }

  graph.edges = std::move(edges);
  for (const auto& [parent, child] : graph.edges) {
    graph.A(parent, child) = 1.0;
  }

  // Tree check over present nodes: |E| = |V| - 1 and every present node is
  // reachable from the root.
  const int present_count = graph.PresentCount();
  if (present_count > 0) {
    if (static_cast<int>(graph.edges.size()) != present_count - 1) {
      throw Error(ErrorCode::kCycleDetected,
                  "edge count " + std::to_string(graph.edges.size()) +
                      " does not match " + std::to_string(present_count) +
                      " present nodes");
    }
    std::array<bool, kNumSlots> reached{};
    std::vector<int> stack{roots.empty() ? -1 : roots[0]};
    if (stack[0] >= 0) reached[stack[0]] = true;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (const auto& [parent, child] : graph.edges) {
        if (parent == node && !reached[child]) {
          reached[child] = true;
          stack.push_back(child);
        }
      }
    }
    for (int slot = 0; slot < kNumSlots; ++slot) {
      if (graph.present[slot] && !reached[slot]) {
        throw Error(ErrorCode::kDisconnectedGraph,
                    "slot " + std::to_string(slot) +
                        " is unreachable from the graph root");
      }
    }
  }
  return graph;
}

Eigen::Matrix<double, kNumSlots, kNumSlots> Adjacency(
    const EmbodimentGraph& graph) {
  return graph.A;
}

Eigen::Matrix<double, kNumSlots, kNumSlots> AttentionMask(
    const Eigen::Matrix<double, kNumSlots, kNumSlots>& A) {
  Eigen::Matrix<double, kNumSlots, kNumSlots> mask =
      Eigen::Matrix<double, kNumSlots, kNumSlots>::Identity() + A +
      A.transpose();
  return mask.cwiseMin(1.0);
}

ControllabilityMask Controllability(const model::RobotTemplate& robot,
                                    const JointMap& map) {
  ControllabilityMask mask{};
  for (const model::JointSpec& joint : robot.joints) {
    if (!joint.IsRevolute()) continue;
    const auto found = map.forward.find(joint.name);
    if (found != map.forward.end()) mask[found->second] = 1;
  }
  return mask;
}

std::string AdjacencyCsv(const EmbodimentGraph& graph) {
  std::ostringstream out;
  for (int i = 0; i < kNumSlots; ++i) {
    for (int j = 0; j < kNumSlots; ++j) {
      if (j) out << ",";
      out << static_cast<int>(graph.A(i, j));
    }
    out << "\n";
  }
  return out.str();
}

std::string GraphDot(const EmbodimentGraph& graph) {
  std::ostringstream out;
  out << "digraph embodiment {\n";
  out << "  rankdir=TB;\n";
  for (int slot = 0; slot < kNumSlots; ++slot) {
    const CanonicalJoint& joint = kGlobalJoints[slot];
    out << "  n" << slot << " [label=\"" << slot << ": " << joint.name << "\"";
    if (!graph.present[slot]) out << " style=dotted color=gray";
    out << "];\n";
  }
  for (const auto& [parent, child] : graph.edges) {
    out << "  n" << parent << " -> n" << child << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string JointMapJson(const JointMap& map) {
  nlohmann::ordered_json json;
  for (const auto& [name, slot] : map.forward) json[name] = slot;
  return json.dump(2) + "\n";
}

AliasConfig ParseAliasConfig(const std::string& json_text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument,
                std::string("bad alias JSON: ") + e.what());
  }
  AliasConfig config;
  if (!json.contains("aliases") || !json["aliases"].is_object()) {
    throw Error(ErrorCode::kMalformedDocument,
                "alias file must contain an 'aliases' object");
  }
  for (const auto& [key, value] : json["aliases"].items()) {
    if (!value.is_string()) {
      throw Error(ErrorCode::kMalformedDocument,
                  "alias for '" + key + "' must be a string");
    }
    config.aliases.entries[key] = value.get<std::string>();
  }
  if (json.contains("parallel_groups")) {
    for (const auto& group : json["parallel_groups"]) {
      std::vector<std::string> names;
      for (const auto& name : group) names.push_back(name.get<std::string>());
      config.parallel_groups.push_back(std::move(names));
    }
  }
  return config;
}

}  // namespace morphforge::canonical
