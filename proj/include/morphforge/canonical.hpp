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
// The universal cross-embodiment representation: a fixed 32-slot joint space
// into which any humanoid's revolute joints embed by semantic role, plus the
// kinematic graph over occupied slots that drives graph convolutions and
// attention masks.

#ifndef MORPHFORGE_CANONICAL_HPP_
#define MORPHFORGE_CANONICAL_HPP_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "morphforge/robot_model.hpp"

namespace morphforge::canonical {

inline constexpr int kNumSlots = 32;

struct CanonicalJoint {
  int index;
  const char* name;
  std::array<double, 3> axis;  // right-hand rule
};

// The immutable 32-entry table: left hip roll = 0 ... right wrist yaw = 31.
const std::array<CanonicalJoint, kNumSlots>& GlobalJointTable();

// Index lookup by canonical name; -1 if unknown.
int SlotByName(std::string_view canonical_name);

// FNV-1a over every entry's index, name, and axis; pinned in tests so the
// table cannot drift silently.
uint64_t TableChecksum();

// Injective partial assignment of physical joints to canonical slots.
struct JointMap {
  std::map<std::string, int> forward;              // physical name -> slot
  std::array<std::optional<std::string>, kNumSlots> inverse;
  int n_r = 0;  // physical joint count = |forward|

  bool SlotOccupied(int slot) const { return inverse[slot].has_value(); }
};

// Alias tables map physical joint names to canonical names. A key may end
// with '*' to match any name with that prefix; exact entries win over
// prefixes, longer prefixes over shorter.
struct AliasTable {
  std::map<std::string, std::string> entries;

  // Canonical name for a physical joint, or nullopt.
  std::optional<std::string> Lookup(std::string_view physical) const;
};

// Declared parallel-linkage groups (URDF cannot express closed loops): every
// member of a group becomes a child of the group's preceding joint in the
// embodiment graph. The default configuration declares the two ankle joints
// of each leg.
using ParallelGroups = std::vector<std::vector<std::string>>;

struct EmbodimentGraph {
  std::array<bool, kNumSlots> present{};             // slot occupied & revolute
  std::vector<std::pair<int, int>> edges;            // parent slot -> child slot
  Eigen::Matrix<double, kNumSlots, kNumSlots> A;     // directed adjacency

  int PresentCount() const;
};

using ControllabilityMask = std::array<int, kNumSlots>;

// Maps every revolute joint of the robot through the alias table. Unmapped
// revolute joints are an error (UnmappedJoint, with name suggestions);
// two joints claiming one slot is DuplicateSlot.
JointMap BuildJointMap(const model::RobotTemplate& robot,
                       const AliasTable& aliases);

// q_global[i] = q_r[j] where physical joint j maps to slot i; 0 elsewhere.
Eigen::VectorXd Project(const Eigen::VectorXd& q_r,
                        const model::RobotTemplate& robot,
                        const JointMap& map);

// Inverse mapping: values at unmapped slots are discarded.
Eigen::VectorXd Unproject(const Eigen::VectorXd& q_global,
                          const model::RobotTemplate& robot,
                          const JointMap& map);

// Directed kinematic tree over present slots. Fixed and unmapped joints
// vanish; their descendants re-parent to the nearest mapped revolute
// ancestor. Joints hanging off the root link attach under the present joint
// with the lowest canonical index, which makes the graph a single tree.
EmbodimentGraph BuildGraph(const model::RobotTemplate& robot,
                           const JointMap& map,
                           const ParallelGroups& parallel_groups = {});

Eigen::Matrix<double, kNumSlots, kNumSlots> Adjacency(
    const EmbodimentGraph& graph);

// Structural attention mask M = I + A + A^T clipped to {0,1}: symmetric,
// unit diagonal. A stays directed for export; the mask is symmetrized so
// attention can flow both ways along each kinematic edge.
Eigen::Matrix<double, kNumSlots, kNumSlots> AttentionMask(
    const Eigen::Matrix<double, kNumSlots, kNumSlots>& A);

// 1 exactly at slots occupied by a mapped revolute joint.
ControllabilityMask Controllability(const model::RobotTemplate& robot,
                                    const JointMap& map);

// Exports.
std::string AdjacencyCsv(const EmbodimentGraph& graph);
std::string GraphDot(const EmbodimentGraph& graph);
std::string JointMapJson(const JointMap& map);

// Loads {"aliases": {...}, "parallel_groups": [[...]]} from JSON text.
struct AliasConfig {
  AliasTable aliases;
  ParallelGroups parallel_groups;
};
AliasConfig ParseAliasConfig(const std::string& json_text);

}  // namespace morphforge::canonical

#endif  // MORPHFORGE_CANONICAL_HPP_
