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
// Pure evaluators for the whole-body reward table: tracking kernels, gait
// contact scheduling, and regularizers, all computable from a state snapshot
// with no simulator in the loop.

#ifndef MORPHFORGE_REWARDS_HPP_
#define MORPHFORGE_REWARDS_HPP_

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "morphforge/canonical.hpp"

namespace morphforge::rewards {

// The 12-number whole-body command: planar velocity and yaw rate, posture
// (height, pelvis pitch, waist yaw/pitch/roll), and gait (frequency, two
// per-foot phase offsets, stance ratio).
struct CommandVector {
  double v_x = 0.0, v_y = 0.0, w_z = 0.0;
  double h = 0.0, p = 0.0;
  double theta_y = 0.0, theta_p = 0.0, theta_r = 0.0;
  double psi = 1.0;         // gait frequency (Hz)
  double phi_1 = 0.0;       // phase offset, foot 0
  double phi_2 = 0.5;       // phase offset, foot 1
  double phi_stance = 0.5;  // stance ratio, in (0, 1)

  Eigen::Matrix<double, 12, 1> ToVector() const;
  static CommandVector FromVector(const Eigen::Matrix<double, 12, 1>& v);
};

struct FootState {
  double force = 0.0;                                 // contact force (N)
  Eigen::Vector2d velocity_xy = Eigen::Vector2d::Zero();
};

struct StateSnapshot {
  Eigen::Vector2d v_xy = Eigen::Vector2d::Zero();
  double v_z = 0.0;
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  double h = 0.0;        // base height
  double p = 0.0;        // pelvis pitch
  double theta_y = 0.0, theta_p = 0.0, theta_r = 0.0;  // waist angles
  std::vector<FootState> feet = {FootState{}, FootState{}};
  Eigen::VectorXd q = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd qdot = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd qddot = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd kp = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd a_t = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd a_prev = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd a_prev2 = Eigen::VectorXd::Zero(canonical::kNumSlots);
  Eigen::VectorXd q_nominal = Eigen::VectorXd::Zero(canonical::kNumSlots);
  // Slot sets for the deviation penalties.
  std::vector<int> upper_slots = DefaultUpperSlots();
  std::vector<int> head_slots = {15, 16, 17};
  std::vector<int> hip_xz_slots = {0, 2, 6, 8};  // hip roll & yaw, both legs
  canonical::ControllabilityMask controllability{};
  bool terminated = false;
  double t = 0.0;

  static std::vector<int> DefaultUpperSlots();  // arm slots 18..31

  std::string ToJson() const;
  static StateSnapshot FromJson(const std::string& json_text);
};

struct RewardTerm {
  double value = 0.0;   // the table's Definition column, unweighted
  double weight = 0.0;
  double Weighted() const { return value * weight; }
};

// One entry per table row. Tracking kernels are in (0, 1] before weighting;
// penalty rows are non-negative before weighting and carry negative weights.
struct RewardBreakdown {
  RewardTerm linear_velocity_tracking;
  RewardTerm angular_velocity_tracking;
  RewardTerm body_height_tracking;
  RewardTerm torso_pitch_tracking;
  RewardTerm waist_yaw_tracking;
  RewardTerm waist_roll_tracking;
  RewardTerm waist_pitch_tracking;
  RewardTerm contact_swing_tracking;
  RewardTerm rp_angular_velocity;
  RewardTerm vertical_body_movement;
  RewardTerm feet_slip;
  RewardTerm action_rate;
  RewardTerm action_smoothness;
  RewardTerm joint_torque;
  RewardTerm joint_acceleration;
  RewardTerm upper_joint_deviation;
  RewardTerm head_joint_deviation;
  RewardTerm hip_joint_deviation;
  RewardTerm zero_actions;
  RewardTerm termination;
  double total = 0.0;  // sum of weighted terms

  std::vector<std::pair<std::string, const RewardTerm*>> Terms() const;
  std::string ToJson() const;
};

struct RewardWeights {
  double linear_velocity_tracking = 2.5;
  double angular_velocity_tracking = 2.0;
  double body_height_tracking = -20.0;
  double torso_pitch_tracking = -10.0;
  double waist_yaw_tracking = -1.0;
  double waist_roll_tracking = -1.0;
  double waist_pitch_tracking = -2.0;
  double contact_swing_tracking = -2.0;
  double rp_angular_velocity = -0.5;
  double vertical_body_movement = -0.1;
  double feet_slip = -0.2;
  double action_rate = -0.01;
  double action_smoothness = -0.01;
  double joint_torque = -5e-6;
  double joint_acceleration = -2.5e-7;
  double upper_joint_deviation = -0.5;
  double head_joint_deviation = -0.5;
  double hip_joint_deviation = -1.0;
  double zero_actions = -0.05;
  double termination = -40.0;
};

struct GaitPhaseResult {
  double phase = 0.0;  // in [0, 1)
  bool contact = false;
};

// phase_i = frac(psi * t + phi_i); contact while phase < stance ratio.
// foot is 0 or 1 (selecting phi_1 / phi_2). Throws InvalidStanceRatio unless
// phi_stance lies strictly inside (0, 1).
GaitPhaseResult GaitPhase(const CommandVector& command, int foot, double t);

// Every table row evaluated exactly per its formula; total is the weighted
// sum. Torque entries at slots with kp = 0 contribute nothing (those slots
// have no actuator). The zero-actions row penalizes action magnitude at
// slots whose controllability flag is 0.
RewardBreakdown EvaluateRewards(const StateSnapshot& state,
                                const CommandVector& command,
                                const RewardWeights& weights = {});

}  // namespace morphforge::rewards

#endif  // MORPHFORGE_REWARDS_HPP_
