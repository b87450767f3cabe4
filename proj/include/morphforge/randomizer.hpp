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
// Physics-consistent embodiment sampling. Link inertia is perturbed through
// the theta parameterization (consistency preserved by construction); joint
// geometry, limits, and actuation follow the per-group range tables.
//
// All table entries are multiplicative factor ranges: diagonal factors
// (e^alpha, e^di) are sampled directly in range, shears are stored as
// s = f - 1, and translations as t_i = (f - 1) * l_i with l_i the link's CoM
// offset magnitude along axis i. [1, 1] is therefore the identity everywhere.
//
// Determinism contract: a sample is a pure function of (template, config).
// Every operation consumes the RNG stream in a fixed order -- links in
// template order (10 draws each), hip clusters in config order, joints in
// template order, then actuation.

#ifndef MORPHFORGE_RANDOMIZER_HPP_
#define MORPHFORGE_RANDOMIZER_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "morphforge/inertia.hpp"
#include "morphforge/rng.hpp"
#include "morphforge/robot_model.hpp"

namespace morphforge::rand {

enum class LinkGroup { kShoulder, kTorso, kPelvis, kHip, kKnee, kFoot };
enum class JointGroup { kShoulder, kWaist, kHip, kKnee, kAnkle };

const char* LinkGroupName(LinkGroup group);
const char* JointGroupName(JointGroup group);

struct Range {
  double lo = 1.0;
  double hi = 1.0;
};

// Factor ranges per theta component, one row set per link group.
struct LinkRanges {
  Range e_alpha, d1, d2, d3, s12, s23, s13, t1, t2, t3;
};

struct LinkRangeTable {
  std::map<LinkGroup, LinkRanges> rows;

  // The published defaults (Shoulder/Torso/Pelvis/Hip/Knee/Foot).
  static LinkRangeTable Defaults();
};

struct JointRanges {
  Range position_scale{1.0, 1.0};       // per-component factor on p
  Range orientation_offset{0.0, 0.0};   // additive rad; hip only
  Range limit_scale{1.0, 1.0};          // q_min, q_max, qdot_max
  Range torque_scale{1.0, 1.0};         // tau_max
  bool lockable = false;                // R/F column
  bool permute_axes = false;            // hip only
};

struct JointRangeTable {
  std::map<JointGroup, JointRanges> rows;

  static JointRangeTable Defaults();
};

enum class ThetaMode { kPerLink, kPerGroup };

// kCountUniform draws the lock count uniformly in {0..n} then a uniform
// subset: every joint is still locked with marginal probability 1/2, and
// both DoF extremes actually occur at realistic sample counts. kBernoulli
// locks each joint independently.
enum class ActuationMode { kCountUniform, kBernoulli };

struct RandomizationConfig {
  uint64_t seed = 0;
  LinkRangeTable link_ranges = LinkRangeTable::Defaults();
  JointRangeTable joint_ranges = JointRangeTable::Defaults();
  std::map<std::string, LinkGroup> link_groups;
  std::map<std::string, JointGroup> joint_groups;
  // Ordered triples of hip joint names, one per leg; axis permutation and
  // zero-sum orientation offsets act on these.
  std::vector<std::array<std::string, 3>> hip_clusters;
  std::vector<std::string> lockable_joints;
  double gain_reference = 0.0;  // <= 0: use the template's total mass
  double default_kp = 100.0;
  double default_kd = 2.0;
  ThetaMode theta_mode = ThetaMode::kPerLink;
  ActuationMode actuation_mode = ActuationMode::kCountUniform;
  double lock_probability = 0.5;

  // Checks group/lockable references against the template; leg-group joints
  // must never be lockable. Throws InvalidConfig.
  void Validate(const model::RobotTemplate& robot) const;
};

RandomizationConfig ParseConfig(const std::string& json_text,
                                const model::RobotTemplate& robot);
RandomizationConfig LoadConfig(const std::filesystem::path& path,
                               const model::RobotTemplate& robot);

struct JointGains {
  double kp = 0.0;
  double kd = 0.0;
  double tau_max = 0.0;
};

struct EmbodimentSample {
  model::RobotTemplate robot;
  std::map<std::string, inertia::ThetaInert> applied_theta;  // by link name
  std::set<std::string> locked;
  // Cluster's first joint name -> permutation of {x, y, z} axis indices.
  std::map<std::string, std::array<int, 3>> axis_permutations;
  std::map<std::string, JointGains> scaled_gains;
  uint64_t sample_seed = 0;
};

// One theta draw for a link group. char_lengths are the per-axis CoM offset
// magnitudes of the link being perturbed. Throws UnknownGroup.
inertia::ThetaInert SampleTheta(LinkGroup group, const LinkRangeTable& table,
                                const Eigen::Vector3d& char_lengths, Rng& rng);

// Replaces each grouped massful link's J with Perturb(J, theta); ungrouped
// and massless links are untouched. Throws InconsistentTemplate if an input
// link fails the consistency check. applied (optional) records the draws.
model::RobotTemplate RandomizeLinks(
    const model::RobotTemplate& robot, const RandomizationConfig& config,
    Rng& rng, std::map<std::string, inertia::ThetaInert>* applied = nullptr);

// Hip axis permutation + zero-sum orientation offsets, then per-group
// position/limit/torque scaling. Joint positions are clamped so the
// displacement never exceeds twice the parent link's CoM distance.
model::RobotTemplate RandomizeJoints(
    const model::RobotTemplate& robot, const RandomizationConfig& config,
    Rng& rng,
    std::map<std::string, std::array<int, 3>>* permutations = nullptr);

// Draws the set of joints to lock. Active count stays in [12, 32] because
// leg joints are never lockable.
std::set<std::string> SampleActuation(const model::RobotTemplate& robot,
                                      const RandomizationConfig& config,
                                      Rng& rng);

// (kp, kd, tau_max) per revolute joint, linearly scaled by
// total_mass(robot) / gain_reference. Throws ZeroReferenceMass.
std::map<std::string, JointGains> ScaleActuationGains(
    const model::RobotTemplate& robot, const RandomizationConfig& config);

// Full pipeline: links -> joints -> actuation -> gains, from config.seed.
EmbodimentSample Generate(const model::RobotTemplate& robot,
                          const RandomizationConfig& config);

// Batch entry point: sample i runs on an independent stream seeded with
// (config.seed ^ i).
EmbodimentSample GenerateIndexed(const model::RobotTemplate& robot,
                                 const RandomizationConfig& config,
                                 uint64_t index);

}  // namespace morphforge::rand

#endif  // MORPHFORGE_RANDOMIZER_HPP_
