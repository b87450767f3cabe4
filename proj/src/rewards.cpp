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

#include "morphforge/rewards.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "morphforge/errors.hpp"

namespace morphforge::rewards {

namespace {

double SquaredNorm(const Eigen::VectorXd& v) { return v.squaredNorm(); }

double DeviationOverSlots(const Eigen::VectorXd& q,
                          const Eigen::VectorXd& q_nominal,
                          const std::vector<int>& slots) {
  double sum = 0.0;
  for (const int slot : slots) {
    const double d = q[slot] - q_nominal[slot];
    sum += d * d;
  }
  return sum;
}

}  // namespace

Eigen::Matrix<double, 12, 1> CommandVector::ToVector() const {
  Eigen::Matrix<double, 12, 1> v;
  v << v_x, v_y, w_z, h, p, theta_y, theta_p, theta_r, psi, phi_1, phi_2,
      phi_stance;
  return v;
}

CommandVector CommandVector::FromVector(const Eigen::Matrix<double, 12, 1>& v) {
  CommandVector c;
  c.v_x = v[0];
  c.v_y = v[1];
  c.w_z = v[2];
  c.h = v[3];
  c.p = v[4];
  c.theta_y = v[5];
  c.theta_p = v[6];
  c.theta_r = v[7];
  c.psi = v[8];
  c.phi_1 = v[9];
  c.phi_2 = v[10];
  c.phi_stance = v[11];
  return c;
}

std::vector<int> StateSnapshot::DefaultUpperSlots() {
  std::vector<int> slots;
  for (int slot = 18; slot < 32; ++slot) slots.push_back(slot);
  return slots;
}

GaitPhaseResult GaitPhase(const CommandVector& command, int foot, double t) {
  if (!(command.phi_stance > 0.0 && command.phi_stance < 1.0)) {
    throw Error(ErrorCode::kInvalidStanceRatio,
                "stance ratio must lie in (0, 1), got " +
                    std::to_string(command.phi_stance));
  }
  if (foot != 0 && foot != 1) {
    throw Error(ErrorCode::kLengthMismatch,
                "gait offsets exist for feet 0 and 1, got foot " +
                    std::to_string(foot));
  }
  const double offset = foot == 0 ? command.phi_1 : command.phi_2;
  const double raw = command.psi * t + offset;
  GaitPhaseResult result;
  result.phase = raw - std::floor(raw);
  result.contact = result.phase < command.phi_stance;
  return result;
}

RewardBreakdown EvaluateRewards(const StateSnapshot& state,
                                const CommandVector& command,
                                const RewardWeights& weights) {
  RewardBreakdown out;

  const Eigen::Vector2d v_target(command.v_x, command.v_y);
  out.linear_velocity_tracking.value =
      std::exp(-(v_target - state.v_xy).squaredNorm() / 0.2);
  const double w_err = command.w_z - state.omega.z();
  out.angular_velocity_tracking.value = std::exp(-(w_err * w_err) / 0.2);

  const double h_err = command.h - state.h;
  out.body_height_tracking.value = h_err * h_err;
  const double p_err = command.p - state.p;
  out.torso_pitch_tracking.value = p_err * p_err;
  const double yaw_err = command.theta_y - state.theta_y;
  out.waist_yaw_tracking.value = yaw_err * yaw_err;
  const double roll_err = command.theta_r - state.theta_r;
  out.waist_roll_tracking.value = roll_err * roll_err;
  const double pitch_err = command.theta_p - state.theta_p;
  out.waist_pitch_tracking.value = pitch_err * pitch_err;

  // Swing feet are penalized for carrying force, stance feet for sliding:
  // -sum_i (1-C_i)[1 - exp(|f_i|^2 / 50)] + C_i [1 - exp(|v_i|^2 / 5)].
  // Both brackets are <= 0, so the row value is >= 0 and the -2 weight turns
  // it into a penalty.
  double contact_swing = 0.0;
  for (size_t foot = 0; foot < state.feet.size(); ++foot) {
    const GaitPhaseResult gait =
        GaitPhase(command, static_cast<int>(foot), state.t);
    // Branch on C instead of multiplying by it: the inactive bracket can
    // overflow to -inf and 0 * inf would poison the sum.
    if (gait.contact) {
      const double slip_sq = state.feet[foot].velocity_xy.squaredNorm();
      contact_swing -= 1.0 - std::exp(slip_sq / 5.0);
    } else {
      const double force_sq = state.feet[foot].force * state.feet[foot].force;
      contact_swing -= 1.0 - std::exp(force_sq / 50.0);
    }
  }
  out.contact_swing_tracking.value = contact_swing;

  out.rp_angular_velocity.value = state.omega.head<2>().squaredNorm();
  out.vertical_body_movement.value = state.v_z * state.v_z;

  double slip = 0.0;
  for (const FootState& foot : state.feet) {
    slip += 1.0 - std::exp(-foot.velocity_xy.squaredNorm());
  }
  out.feet_slip.value = slip;

  out.action_rate.value = SquaredNorm(state.a_t - state.a_prev);
  out.action_smoothness.value =
      SquaredNorm(state.a_prev2 - 2.0 * state.a_prev + state.a_t);

  double torque = 0.0;
  for (int slot = 0; slot < state.tau.size(); ++slot) {
    if (state.kp[slot] == 0.0) continue;
    const double ratio = state.tau[slot] / state.kp[slot];
    torque += ratio * ratio;
  }
  out.joint_torque.value = torque;
  out.joint_acceleration.value = state.qddot.squaredNorm();

  out.upper_joint_deviation.value =
      DeviationOverSlots(state.q, state.q_nominal, state.upper_slots);
  out.head_joint_deviation.value =
      DeviationOverSlots(state.q, state.q_nominal, state.head_slots);
  out.hip_joint_deviation.value =
      DeviationOverSlots(state.q, state.q_nominal, state.hip_xz_slots);

  double zero_actions = 0.0;
  for (int slot = 0; slot < state.a_t.size(); ++slot) {
    if (state.controllability[slot] == 0) {
      zero_actions += state.a_t[slot] * state.a_t[slot];
    }
  }
  out.zero_actions.value = zero_actions;
  out.termination.value = state.terminated ? 1.0 : 0.0;

  const std::pair<RewardTerm*, double> rows[] = {
      {&out.linear_velocity_tracking, weights.linear_velocity_tracking},
      {&out.angular_velocity_tracking, weights.angular_velocity_tracking},
      {&out.body_height_tracking, weights.body_height_tracking},
      {&out.torso_pitch_tracking, weights.torso_pitch_tracking},
      {&out.waist_yaw_tracking, weights.waist_yaw_tracking},
      {&out.waist_roll_tracking, weights.waist_roll_tracking},
      {&out.waist_pitch_tracking, weights.waist_pitch_tracking},
      {&out.contact_swing_tracking, weights.contact_swing_tracking},
      {&out.rp_angular_velocity, weights.rp_angular_velocity},
      {&out.vertical_body_movement, weights.vertical_body_movement},
      {&out.feet_slip, weights.feet_slip},
      {&out.action_rate, weights.action_rate},
      {&out.action_smoothness, weights.action_smoothness},
      {&out.joint_torque, weights.joint_torque},
      {&out.joint_acceleration, weights.joint_acceleration},
      {&out.upper_joint_deviation, weights.upper_joint_deviation},
      {&out.head_joint_deviation, weights.head_joint_deviation},
      {&out.hip_joint_deviation, weights.hip_joint_deviation},
      {&out.zero_actions, weights.zero_actions},
      {&out.termination, weights.termination},
  };
  out.total = 0.0;
  for (const auto& [term, weight] : rows) {
    term->weight = weight;
    out.total += term->Weighted();
  }
  return out;
}

std::vector<std::pair<std::string, const RewardTerm*>> RewardBreakdown::Terms()
    const {
  return {
      {"linear_velocity_tracking", &linear_velocity_tracking},
      {"angular_velocity_tracking", &angular_velocity_tracking},
      {"body_height_tracking", &body_height_tracking},
      {"torso_pitch_tracking", &torso_pitch_tracking},
      {"waist_yaw_tracking", &waist_yaw_tracking},
      {"waist_roll_tracking", &waist_roll_tracking},
      {"waist_pitch_tracking", &waist_pitch_tracking},
      {"contact_swing_tracking", &contact_swing_tracking},
      {"rp_angular_velocity", &rp_angular_velocity},
      {"vertical_body_movement", &vertical_body_movement},
      {"feet_slip", &feet_slip},
      {"action_rate", &action_rate},
      {"action_smoothness", &action_smoothness},
      {"joint_torque", &joint_torque},
      {"joint_acceleration", &joint_acceleration},
      {"upper_joint_deviation", &upper_joint_deviation},
      {"head_joint_deviation", &head_joint_deviation},
      {"hip_joint_deviation", &hip_joint_deviation},
      {"zero_actions", &zero_actions},
      {"termination", &termination},
  };
}

std::string RewardBreakdown::ToJson() const {
  nlohmann::ordered_json json;
  for (const auto& [name, term] : Terms()) {
    json[name] = {{"value", term->value},
                  {"weight", term->weight},
                  {"weighted", term->Weighted()}};
  }
  json["total"] = total;
  return json.dump(2) + "\n";
}

namespace {

nlohmann::json VectorToJson(const Eigen::VectorXd& v) {
  nlohmann::json array = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) array.push_back(v[i]);
  return array;
}

Eigen::VectorXd VectorFromJson(const nlohmann::json& array) {
  Eigen::VectorXd v(array.size());
  for (size_t i = 0; i < array.size(); ++i) v[i] = array[i].get<double>();
  return v;
}

}  // namespace

std::string StateSnapshot::ToJson() const {
  nlohmann::ordered_json json;
  json["v_xy"] = {v_xy.x(), v_xy.y()};
  json["v_z"] = v_z;
  json["omega"] = {omega.x(), omega.y(), omega.z()};
  json["h"] = h;
  json["p"] = p;
  json["theta_y"] = theta_y;
  json["theta_p"] = theta_p;
  json["theta_r"] = theta_r;
  json["feet"] = nlohmann::json::array();
  for (const FootState& foot : feet) {
    json["feet"].push_back({{"force", foot.force},
                            {"velocity_xy",
                             {foot.velocity_xy.x(), foot.velocity_xy.y()}}});
  }
  json["q"] = VectorToJson(q);
  json["qdot"] = VectorToJson(qdot);
  json["qddot"] = VectorToJson(qddot);
  json["tau"] = VectorToJson(tau);
  json["kp"] = VectorToJson(kp);
  json["a_t"] = VectorToJson(a_t);
  json["a_prev"] = VectorToJson(a_prev);
  json["a_prev2"] = VectorToJson(a_prev2);
  json["q_nominal"] = VectorToJson(q_nominal);
  json["upper_slots"] = upper_slots;
  json["head_slots"] = head_slots;
  json["hip_xz_slots"] = hip_xz_slots;
  json["controllability"] = controllability;
  json["terminated"] = terminated;
  json["t"] = t;
  return json.dump(2) + "\n";
}

StateSnapshot StateSnapshot::FromJson(const std::string& json_text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument,
                std::string("bad snapshot JSON: ") + e.what());
  }
  StateSnapshot state;
  state.v_xy = Eigen::Vector2d(json["v_xy"][0], json["v_xy"][1]);
  state.v_z = json["v_z"];
  state.omega =
      Eigen::Vector3d(json["omega"][0], json["omega"][1], json["omega"][2]);
  state.h = json["h"];
  state.p = json["p"];
  state.theta_y = json["theta_y"];
  state.theta_p = json["theta_p"];
  state.theta_r = json["theta_r"];
  state.feet.clear();
  for (const auto& foot_json : json["feet"]) {
    FootState foot;
    foot.force = foot_json["force"];
    foot.velocity_xy = Eigen::Vector2d(foot_json["velocity_xy"][0],
                                       foot_json["velocity_xy"][1]);
    state.feet.push_back(foot);
  }
  state.q = VectorFromJson(json["q"]);
  state.qdot = VectorFromJson(json["qdot"]);
  state.qddot = VectorFromJson(json["qddot"]);
  state.tau = VectorFromJson(json["tau"]);
  state.kp = VectorFromJson(json["kp"]);
  state.a_t = VectorFromJson(json["a_t"]);
  state.a_prev = VectorFromJson(json["a_prev"]);
  state.a_prev2 = VectorFromJson(json["a_prev2"]);
  state.q_nominal = VectorFromJson(json["q_nominal"]);
  state.upper_slots = json["upper_slots"].get<std::vector<int>>();
  state.head_slots = json["head_slots"].get<std::vector<int>>();
  state.hip_xz_slots = json["hip_xz_slots"].get<std::vector<int>>();
  const auto mask = json["controllability"].get<std::vector<int>>();
  for (size_t i = 0; i < mask.size() && i < state.controllability.size(); ++i) {
    state.controllability[i] = mask[i];
  }
  state.terminated = json["terminated"];
  state.t = json["t"];
  return state;
}

}  // namespace morphforge::rewards
