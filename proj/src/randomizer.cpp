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

#include "morphforge/randomizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "morphforge/errors.hpp"

namespace morphforge::rand {

namespace {

constexpr LinkGroup kLinkGroups[] = {LinkGroup::kShoulder, LinkGroup::kTorso,
                                     LinkGroup::kPelvis,   LinkGroup::kHip,
                                     LinkGroup::kKnee,     LinkGroup::kFoot};
constexpr JointGroup kJointGroups[] = {JointGroup::kShoulder,
                                       JointGroup::kWaist, JointGroup::kHip,
                                       JointGroup::kKnee, JointGroup::kAnkle};

// The ten multiplicative factors behind one theta draw, in stream order.
struct ThetaFactors {
  std::array<double, 10> f;
};

ThetaFactors DrawFactors(const LinkRanges& row, Rng& rng) {
  ThetaFactors factors;
  const Range* ranges[10] = {&row.e_alpha, &row.d1,  &row.d2,  &row.d3,
                             &row.s12,     &row.s23, &row.s13, &row.t1,
                             &row.t2,      &row.t3};
  for (int i = 0; i < 10; ++i) {
    factors.f[i] = rng.Uniform(ranges[i]->lo, ranges[i]->hi);
  }
  return factors;
}

inertia::ThetaInert FactorsToTheta(const ThetaFactors& factors,
                                   const Eigen::Vector3d& char_lengths) {
  inertia::ThetaInert theta;
  theta.alpha = std::log(factors.f[0]);
  theta.d1 = std::log(factors.f[1]);
  theta.d2 = std::log(factors.f[2]);
  theta.d3 = std::log(factors.f[3]);
  theta.s12 = factors.f[4] - 1.0;
  theta.s23 = factors.f[5] - 1.0;
  theta.s13 = factors.f[6] - 1.0;
  theta.t1 = (factors.f[7] - 1.0) * char_lengths.x();
  theta.t2 = (factors.f[8] - 1.0) * char_lengths.y();
  theta.t3 = (factors.f[9] - 1.0) * char_lengths.z();
  return theta;
}

Eigen::Vector3d CharacteristicLengths(const model::LinkSpec& link) {
  if (link.IsMassless()) return Eigen::Vector3d::Zero();
  return (link.inertial.h / link.inertial.m).cwiseAbs();
}

bool IsLegGroup(JointGroup group) {
  return group == JointGroup::kHip || group == JointGroup::kKnee ||
         group == JointGroup::kAnkle;
}

// Dominant axis component decides which rpy slot an orientation offset
// perturbs (roll joints tilt about x, and so on).
int DominantAxisIndex(const Eigen::Vector3d& axis) {
  int index = 0;
  axis.cwiseAbs().maxCoeff(&index);
  return index;
}

}  // namespace

const char* LinkGroupName(LinkGroup group) {
  switch (group) {
    case LinkGroup::kShoulder: return "Shoulder";
    case LinkGroup::kTorso:    return "Torso";
    case LinkGroup::kPelvis:   return "Pelvis";
    case LinkGroup::kHip:      return "Hip";
    case LinkGroup::kKnee:     return "Knee";
    case LinkGroup::kFoot:     return "Foot";
  }
  return "?";
}

const char* JointGroupName(JointGroup group) {
  switch (group) {
    case JointGroup::kShoulder: return "Shoulder";
    case JointGroup::kWaist:    return "Waist";
    case JointGroup::kHip:      return "Hip";
    case JointGroup::kKnee:     return "Knee";
    case JointGroup::kAnkle:    return "Ankle";
  }
  return "?";
}

LinkRangeTable LinkRangeTable::Defaults() {
  LinkRangeTable table;
  auto& rows = table.rows;
  //                         e^a         d1          d2          d3          s12         s23         s13         t1          t2          t3
  rows[LinkGroup::kShoulder] = {{0.8, 1.4}, {0.8, 1.2}, {0.8, 1.2}, {0.8, 1.2}, {0.9, 1.1}, {0.9, 1.1}, {0.9, 1.1}, {0.8, 1.2}, {0.8, 1.2}, {0.7, 1.3}};
  rows[LinkGroup::kTorso]    = {{0.8, 1.5}, {0.8, 1.5}, {0.8, 1.4}, {0.8, 1.2}, {0.9, 1.1}, {0.9, 1.1}, {0.9, 1.1}, {0.8, 1.2}, {0.8, 1.2}, {0.7, 1.3}};
  rows[LinkGroup::kPelvis]   = {{0.8, 1.5}, {0.8, 1.4}, {0.8, 1.4}, {0.8, 1.2}, {0.9, 1.1}, {0.9, 1.1}, {0.9, 1.1}, {0.8, 1.2}, {0.8, 1.2}, {0.7, 1.3}};
  rows[LinkGroup::kHip]      = {{0.8, 1.5}, {0.8, 1.2}, {0.8, 1.2}, {0.5, 1.5}, {0.9, 1.1}, {0.9, 1.1}, {0.9, 1.1}, {0.8, 1.2}, {0.8, 1.2}, {0.7, 1.3}};
  rows[LinkGroup::kKnee]     = {{0.8, 1.5}, {0.8, 1.2}, {0.8, 1.2}, {0.5, 1.5}, {0.9, 1.1}, {0.9, 1.1}, {0.8, 1.1}, {0.8, 1.2}, {0.8, 1.2}, {0.7, 1.3}};
  rows[LinkGroup::kFoot]     = {{0.8, 1.4}, {0.5, 1.5}, {0.5, 1.2}, {0.8, 1.2}, {0.9, 1.1}, {0.9, 1.1}, {0.9, 1.1}, {0.8, 1.2}, {0.8, 1.2}, {0.8, 1.2}};
  return table;
}

JointRangeTable JointRangeTable::Defaults() {
  JointRangeTable table;
  auto& rows = table.rows;
  rows[JointGroup::kShoulder] = {{0.8, 1.2}, {0.0, 0.0}, {0.8, 1.0}, {0.7, 1.0}, true, false};
  rows[JointGroup::kWaist]    = {{0.8, 1.2}, {0.0, 0.0}, {0.8, 1.0}, {0.7, 1.0}, true, false};
  rows[JointGroup::kHip]      = {{0.8, 1.2}, {-0.3, 0.3}, {0.8, 1.0}, {0.7, 1.0}, false, true};
  rows[JointGroup::kKnee]     = {{0.8, 1.2}, {0.0, 0.0}, {0.8, 1.3}, {0.7, 1.0}, false, false};
  rows[JointGroup::kAnkle]    = {{0.8, 1.2}, {0.0, 0.0}, {0.8, 1.0}, {0.7, 1.0}, false, false};
  return table;
}

void RandomizationConfig::Validate(const model::RobotTemplate& robot) const {
  for (const auto& [name, group] : link_groups) {
    if (!robot.FindLink(name)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "link group entry '" + name + "' names no template link");
    }
    (void)group;
  }
  for (const auto& [name, group] : joint_groups) {
    if (!robot.FindJoint(name)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "joint group entry '" + name + "' names no template joint");
    }
    (void)group;
  }
  for (const auto& cluster : hip_clusters) {
    for (const std::string& name : cluster) {
      if (!robot.FindJoint(name)) {
        throw Error(ErrorCode::kInvalidConfig,
                    "hip cluster entry '" + name + "' names no template joint");
      }
    }
  }
  for (const std::string& name : lockable_joints) {
    const model::JointSpec* joint = robot.FindJoint(name);
    if (!joint) {
      throw Error(ErrorCode::kInvalidConfig,
                  "lockable entry '" + name + "' names no template joint");
    }
    const auto grouped = joint_groups.find(name);
    if (grouped != joint_groups.end() && IsLegGroup(grouped->second)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "leg joint '" + name + "' must not be lockable");
    }
    for (const auto& cluster : hip_clusters) {
      for (const std::string& member : cluster) {
        if (member == name) {
          throw Error(ErrorCode::kInvalidConfig,
                      "hip joint '" + name + "' must not be lockable");
        }
      }
    }
  }
  if (lock_probability < 0.0 || lock_probability > 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "lock_probability outside [0, 1]");
  }
}

inertia::ThetaInert SampleTheta(LinkGroup group, const LinkRangeTable& table,
                                const Eigen::Vector3d& char_lengths,
                                Rng& rng) {
  const auto row = table.rows.find(group);
  if (row == table.rows.end()) {
    throw Error(ErrorCode::kUnknownGroup,
                std::string("no link ranges for group '") +
                    LinkGroupName(group) + "'");
  }
  return FactorsToTheta(DrawFactors(row->second, rng), char_lengths);
}

model::RobotTemplate RandomizeLinks(
    const model::RobotTemplate& robot, const RandomizationConfig& config,
    Rng& rng, std::map<std::string, inertia::ThetaInert>* applied) {
  model::RobotTemplate out = robot;
  std::map<LinkGroup, ThetaFactors> group_factors;

  for (model::LinkSpec& link : out.links) {
    const auto grouped = config.link_groups.find(link.name);
    if (grouped == config.link_groups.end() || link.IsMassless()) continue;

    if (!inertia::CheckConsistency(link.inertial).consistent) {
      throw Error(ErrorCode::kInconsistentTemplate,
                  "template link '" + link.name +
                      "' fails the consistency check");
    }
    const auto row = config.link_ranges.rows.find(grouped->second);
    if (row == config.link_ranges.rows.end()) {
      throw Error(ErrorCode::kUnknownGroup,
                  std::string("no link ranges for group '") +
                      LinkGroupName(grouped->second) + "'");
    }

    ThetaFactors factors;
    if (config.theta_mode == ThetaMode::kPerGroup) {
      auto cached = group_factors.find(grouped->second);
      if (cached == group_factors.end()) {
        cached = group_factors
                     .emplace(grouped->second, DrawFactors(row->second, rng))
                     .first;
      }
      factors = cached->second;
    } else {
      factors = DrawFactors(row->second, rng);
    }
    const inertia::ThetaInert theta =
        FactorsToTheta(factors, CharacteristicLengths(link));

    const inertia::PseudoInertia perturbed =
        inertia::Perturb(inertia::PseudoFromParams(link.inertial), theta);
    link.inertial = inertia::ParamsFromPseudo(perturbed);
    if (applied) (*applied)[link.name] = theta;
  }
  return out;
}

model::RobotTemplate RandomizeJoints(
    const model::RobotTemplate& robot, const RandomizationConfig& config,
    Rng& rng, std::map<std::string, std::array<int, 3>>* permutations) {
  model::RobotTemplate out = robot;

  // Pass 1: hip clusters, in config order. Axis permutation first, then the
  // zero-sum orientation offsets (draw three, recenter, resample on range
  // overflow).
  static constexpr int kPermutations[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const auto hip_row = config.joint_ranges.rows.find(JointGroup::kHip);
  const bool permute_axes = hip_row != config.joint_ranges.rows.end() &&
                            hip_row->second.permute_axes;
  for (const auto& cluster : config.hip_clusters) {
    std::array<model::JointSpec*, 3> joints{};
    for (int k = 0; k < 3; ++k) {
      joints[k] = out.FindJoint(cluster[k]);
      if (!joints[k]) {
        throw Error(ErrorCode::kInvalidConfig,
                    "hip cluster joint '" + cluster[k] + "' missing");
      }
    }
    // Offset slot per joint follows the template axis, before permutation.
    std::array<int, 3> rpy_slot{};
    for (int k = 0; k < 3; ++k) {
      rpy_slot[k] = DominantAxisIndex(joints[k]->axis);
    }
    if (permute_axes) {
      const auto& perm = kPermutations[rng.NextBelow(6)];
      for (int k = 0; k < 3; ++k) {
        joints[k]->axis = Eigen::Vector3d::Unit(perm[k]);
      }
      if (permutations) {
        (*permutations)[cluster[0]] = {perm[0], perm[1], perm[2]};
      }
    }

    if (hip_row != config.joint_ranges.rows.end()) {
      const Range& range = hip_row->second.orientation_offset;
      if (range.lo != 0.0 || range.hi != 0.0) {
        std::array<double, 3> offsets{};
        for (int attempt = 0; attempt < 1000; ++attempt) {
          double mean = 0.0;
          for (double& offset : offsets) {
            offset = rng.Uniform(range.lo, range.hi);
            mean += offset / 3.0;
          }
          bool in_range = true;
          for (double& offset : offsets) {
            offset -= mean;
            in_range = in_range && offset >= range.lo && offset <= range.hi;
          }
          if (in_range) break;
          if (attempt == 999) {
            throw Error(ErrorCode::kInvalidConfig,
                        "zero-sum offsets cannot satisfy the range");
          }
        }
        for (int k = 0; k < 3; ++k) {
          joints[k]->rpy[rpy_slot[k]] += offsets[k];
        }
      }
    }
  }

  // Pass 2: per-joint scaling in template order. Position factors are per
  // component; the displacement is clamped to twice the parent link's CoM
  // distance. One limit factor scales the motion range (keeps q_min <= q_max
  // for any sign), a second scales velocity, a third the torque.
  for (model::JointSpec& joint : out.joints) {
    const auto grouped = config.joint_groups.find(joint.name);
    if (grouped == config.joint_groups.end()) continue;
    const auto row = config.joint_ranges.rows.find(grouped->second);
    if (row == config.joint_ranges.rows.end()) {
      throw Error(ErrorCode::kUnknownGroup,
                  std::string("no joint ranges for group '") +
                      JointGroupName(grouped->second) + "'");
    }
    const JointRanges& ranges = row->second;

    Eigen::Vector3d scaled = joint.position;
    for (int i = 0; i < 3; ++i) {
      scaled[i] *= rng.Uniform(ranges.position_scale.lo, ranges.position_scale.hi);
    }
    const model::LinkSpec* parent = out.FindLink(joint.parent);
    double bound = 0.0;
    if (parent && !parent->IsMassless()) {
      bound = 2.0 * (parent->inertial.h / parent->inertial.m).norm();
    }
    const Eigen::Vector3d displacement = scaled - joint.position;
    if (displacement.norm() > bound) {
      scaled = joint.position +
               (bound > 0.0 ? Eigen::Vector3d(displacement * bound /
                                              displacement.norm())
                            : Eigen::Vector3d::Zero());
    }
    joint.position = scaled;

    const double rom = rng.Uniform(ranges.limit_scale.lo, ranges.limit_scale.hi);
    const double vel = rng.Uniform(ranges.limit_scale.lo, ranges.limit_scale.hi);
    const double tau = rng.Uniform(ranges.torque_scale.lo, ranges.torque_scale.hi);
    joint.q_min *= rom;
    joint.q_max *= rom;
    joint.qdot_max *= vel;
    joint.tau_max *= tau;
  }
  return out;
}

std::set<std::string> SampleActuation(const model::RobotTemplate& robot,
                                      const RandomizationConfig& config,
                                      Rng& rng) {
  std::vector<std::string> lockable;
  for (const std::string& name : config.lockable_joints) {
    const model::JointSpec* joint = robot.FindJoint(name);
    if (joint && joint->IsRevolute()) lockable.push_back(name);
  }

  std::set<std::string> locked;
  if (config.actuation_mode == ActuationMode::kBernoulli) {
    for (const std::string& name : lockable) {
      if (rng.Bernoulli(config.lock_probability)) locked.insert(name);
    }
  } else {
    const auto n = static_cast<uint64_t>(lockable.size());
    const uint64_t count = n == 0 ? 0 : rng.NextBelow(n + 1);
    // Partial Fisher-Yates over a copy; the first `count` entries lock.
    std::vector<std::string> pool = lockable;
    for (uint64_t i = 0; i < count; ++i) {
      const uint64_t j = i + rng.NextBelow(n - i);
      std::swap(pool[i], pool[j]);
      locked.insert(pool[i]);
    }
  }
  return locked;
}

std::map<std::string, JointGains> ScaleActuationGains(
    const model::RobotTemplate& robot, const RandomizationConfig& config) {
  const double reference = config.gain_reference > 0.0
                               ? config.gain_reference
                               : model::TotalMass(robot);
  if (reference <= 0.0) {
    throw Error(ErrorCode::kZeroReferenceMass,
                "gain reference mass must be positive");
  }
  const double factor = model::TotalMass(robot) / reference;
  std::map<std::string, JointGains> gains;
  for (const model::JointSpec& joint : robot.joints) {
    if (!joint.IsRevolute()) continue;
    gains[joint.name] = {config.default_kp * factor, config.default_kd * factor,
                         joint.tau_max * factor};
  }
  return gains;
}

EmbodimentSample Generate(const model::RobotTemplate& robot,
                          const RandomizationConfig& config) {
  config.Validate(robot);
  Rng rng(config.seed);

  EmbodimentSample sample;
  sample.sample_seed = config.seed;
  sample.robot = RandomizeLinks(robot, config, rng, &sample.applied_theta);
  sample.robot =
      RandomizeJoints(sample.robot, config, rng, &sample.axis_permutations);
  sample.locked = SampleActuation(sample.robot, config, rng);
  for (const std::string& name : sample.locked) {
    sample.robot.FindJoint(name)->actuation = model::Actuation::kFixed;
  }
  sample.scaled_gains = ScaleActuationGains(sample.robot, config);

  const int active = sample.robot.NumDof();
  if (!config.lockable_joints.empty() && (active < 12 || active > 32)) {
    throw Error(ErrorCode::kInvalidConfig,
                "active joint count " + std::to_string(active) +
                    " escapes [12, 32]");
  }
  for (const model::LinkSpec& link : sample.robot.links) {
    if (link.IsMassless()) continue;
    if (!inertia::CheckConsistency(link.inertial).consistent) {
      // Unreachable by construction; a failure here means the closure
      // guarantee is broken.
      throw Error(ErrorCode::kInconsistentLink,
                  "sample link '" + link.name + "' is inconsistent");
    }
  }
  return sample;
}

EmbodimentSample GenerateIndexed(const model::RobotTemplate& robot,
                                 const RandomizationConfig& config,
                                 uint64_t index) {
  RandomizationConfig derived = config;
  derived.seed = config.seed ^ index;
  EmbodimentSample sample = Generate(robot, derived);
  sample.sample_seed = derived.seed;
  return sample;
}

namespace {

Range ParseRange(const nlohmann::json& json, const std::string& context) {
  if (!json.is_array() || json.size() != 2 || !json[0].is_number() ||
      !json[1].is_number()) {
    throw Error(ErrorCode::kInvalidConfig,
                context + " must be a [lo, hi] pair");
  }
  Range range{json[0].get<double>(), json[1].get<double>()};
  if (range.lo > range.hi) {
    throw Error(ErrorCode::kInvalidConfig, context + " has lo > hi");
  }
  return range;
}

}  // namespace

RandomizationConfig ParseConfig(const std::string& json_text,
                                const model::RobotTemplate& robot) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("bad config JSON: ") + e.what());
  }

  RandomizationConfig config;
  config.seed = json.value("seed", uint64_t{0});
  config.gain_reference = json.value("gain_reference", 0.0);
  config.default_kp = json.value("default_kp", 100.0);
  config.default_kd = json.value("default_kd", 2.0);
  config.lock_probability = json.value("lock_probability", 0.5);
  if (json.contains("theta_mode")) {
    const std::string mode = json["theta_mode"];
    if (mode == "per_link") {
      config.theta_mode = ThetaMode::kPerLink;
    } else if (mode == "per_group") {
      config.theta_mode = ThetaMode::kPerGroup;
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown theta_mode '" + mode + "'");
    }
  }
  if (json.contains("actuation_mode")) {
    const std::string mode = json["actuation_mode"];
    if (mode == "count_uniform") {
      config.actuation_mode = ActuationMode::kCountUniform;
    } else if (mode == "bernoulli") {
      config.actuation_mode = ActuationMode::kBernoulli;
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  "unknown actuation_mode '" + mode + "'");
    }
  }

  if (json.contains("ranges") && json["ranges"].contains("links")) {
    for (const auto& [group_name, row] : json["ranges"]["links"].items()) {
      LinkGroup group{};
      bool found = false;
      for (const LinkGroup candidate : kLinkGroups) {
        if (group_name == LinkGroupName(candidate)) {
          group = candidate;
          found = true;
        }
      }
      if (!found) {
        throw Error(ErrorCode::kInvalidConfig,
                    "unknown link group '" + group_name + "'");
      }
      LinkRanges& ranges = config.link_ranges.rows[group];
      const std::pair<const char*, Range*> fields[] = {
          {"e_alpha", &ranges.e_alpha}, {"d1", &ranges.d1},
          {"d2", &ranges.d2},           {"d3", &ranges.d3},
          {"s12", &ranges.s12},         {"s23", &ranges.s23},
          {"s13", &ranges.s13},         {"t1", &ranges.t1},
          {"t2", &ranges.t2},           {"t3", &ranges.t3}};
      for (const auto& [key, slot] : fields) {
        if (row.contains(key)) {
          *slot = ParseRange(row[key], group_name + std::string(".") + key);
        }
      }
    }
  }
  if (json.contains("ranges") && json["ranges"].contains("joints")) {
    for (const auto& [group_name, row] : json["ranges"]["joints"].items()) {
      JointGroup group{};
      bool found = false;
      for (const JointGroup candidate : kJointGroups) {
        if (group_name == JointGroupName(candidate)) {
          group = candidate;
          found = true;
        }
      }
      if (!found) {
        throw Error(ErrorCode::kInvalidConfig,
                    "unknown joint group '" + group_name + "'");
      }
      JointRanges& ranges = config.joint_ranges.rows[group];
      if (row.contains("position"))
        ranges.position_scale = ParseRange(row["position"], group_name);
      if (row.contains("orientation"))
        ranges.orientation_offset = ParseRange(row["orientation"], group_name);
      if (row.contains("limits"))
        ranges.limit_scale = ParseRange(row["limits"], group_name);
      if (row.contains("torque"))
        ranges.torque_scale = ParseRange(row["torque"], group_name);
    }
  }

  if (json.contains("groups")) {
    if (json["groups"].contains("links")) {
      for (const auto& [name, group_name] : json["groups"]["links"].items()) {
        bool found = false;
        for (const LinkGroup candidate : kLinkGroups) {
          if (group_name == LinkGroupName(candidate)) {
            config.link_groups[name] = candidate;
            found = true;
          }
        }
        if (!found) {
          throw Error(ErrorCode::kInvalidConfig,
                      "unknown link group '" +
                          group_name.get<std::string>() + "' for '" + name + "'");
        }
      }
    }
    if (json["groups"].contains("joints")) {
      for (const auto& [name, group_name] : json["groups"]["joints"].items()) {
        bool found = false;
        for (const JointGroup candidate : kJointGroups) {
          if (group_name == JointGroupName(candidate)) {
            config.joint_groups[name] = candidate;
            found = true;
          }
        }
        if (!found) {
          throw Error(ErrorCode::kInvalidConfig,
                      "unknown joint group '" +
                          group_name.get<std::string>() + "' for '" + name + "'");
        }
      }
    }
  }

  if (json.contains("hip_clusters")) {
    for (const auto& cluster : json["hip_clusters"]) {
      if (!cluster.is_array() || cluster.size() != 3) {
        throw Error(ErrorCode::kInvalidConfig,
                    "hip clusters must be triples of joint names");
      }
      config.hip_clusters.push_back(
          {cluster[0].get<std::string>(), cluster[1].get<std::string>(),
           cluster[2].get<std::string>()});
    }
  }
  if (json.contains("lockable")) {
    for (const auto& name : json["lockable"]) {
      config.lockable_joints.push_back(name.get<std::string>());
    }
  }

  config.Validate(robot);
  return config;
}

RandomizationConfig LoadConfig(const std::filesystem::path& path,
                               const model::RobotTemplate& robot) {
  std::ifstream stream(path);
  if (!stream) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return ParseConfig(buffer.str(), robot);
}

}  // namespace morphforge::rand
