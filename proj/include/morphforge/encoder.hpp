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
// Desk-scale forward passes of the policy pipeline: observation assembly,
// per-node tokenization, GCN and hybrid-mask Transformer encoders, the state
// estimator head, per-node action decoding, and the node-averaged critic.
// No training loop lives here; weights are randomly initialized or loaded.
// Everything runs in 64-bit floats so gradient checks have headroom; a
// 32-bit build of the math would be a config concern, not an API change.
//
// A forward-mode directional derivative (Jvp) is provided for the full
// X -> actions pipeline and is validated against central finite differences
// in the tests.

#ifndef MORPHFORGE_ENCODER_HPP_
#define MORPHFORGE_ENCODER_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "morphforge/canonical.hpp"
#include "morphforge/rewards.hpp"

namespace morphforge::encoder {

inline constexpr int kNumSlots = canonical::kNumSlots;
inline constexpr int kHistoryLength = 5;
inline constexpr int kProprioLength = 3 + 3 + 3 * kNumSlots;     // 102
inline constexpr int kCommandLength = 12;
inline constexpr int kPolicyInputLength =
    kHistoryLength * kProprioLength + kNumSlots + kCommandLength;  // 554
// Per-slot features routed to that slot's embedding: (q, qdot, a_prev) from
// each history frame plus the controllability flag.
inline constexpr int kPerNodeFeatures = 3 * kHistoryLength + 1;    // 16
// The global context o_g = [omega, g, c] from the newest frame.
inline constexpr int kGlobalFeatures = 3 + 3 + kCommandLength;     // 18
inline constexpr int kEstimateLength = 4;  // base linear velocity + height

struct ProprioFrame {
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  Eigen::Vector3d gravity = -Eigen::Vector3d::UnitZ();  // unit norm
  Eigen::VectorXd q = Eigen::VectorXd::Zero(kNumSlots);
  Eigen::VectorXd qdot = Eigen::VectorXd::Zero(kNumSlots);
  Eigen::VectorXd a_prev = Eigen::VectorXd::Zero(kNumSlots);

  Eigen::VectorXd ToVector() const;  // [omega, g, q, qdot, a_prev]
};

struct PolicyInput {
  std::array<ProprioFrame, kHistoryLength> history;  // oldest first
  canonical::ControllabilityMask mask{};
  rewards::CommandVector command;

  Eigen::VectorXd Flatten() const;  // length 554, layout pinned by test
  // Global context from the newest frame.
  Eigen::VectorXd GlobalContext() const;  // length 18
  // The 16 per-slot features feeding slot i's embedding.
  Eigen::VectorXd NodeFeatures(int slot) const;
};

// Validates the frame count (WrongHistoryLength) and each frame's unit
// gravity direction.
PolicyInput AssembleObservation(const std::vector<ProprioFrame>& history,
                                const canonical::ControllabilityMask& mask,
                                const rewards::CommandVector& command);

enum class Variant { kGcn, kTransformer };

// Which layers of the Transformer stack carry the graph mask. The main-text
// reading masks the first layer and leaves the rest global; the appendix
// reading is the reverse. Both are implemented; masked-first is the default.
enum class HybridOrder { kMaskedFirst, kGlobalFirst };

struct EncoderConfig {
  int width = 32;   // D
  int layers = 2;   // >= 1
  int heads = 4;    // D divisible by heads
  Variant variant = Variant::kTransformer;
  HybridOrder hybrid_order = HybridOrder::kMaskedFirst;
  int estimator_hidden = 32;
  int privileged_size = 16;  // critic-side privileged input length

  void Validate() const;  // throws ShapeMismatch
};

struct AttentionLayer {
  Eigen::MatrixXd wq, wk, wv, wo;       // D x D
  Eigen::VectorXd ln_gamma, ln_beta;    // D
};

// Weight bundle for the whole pipeline. Initialization is uniform in
// (-1/sqrt(fan_in), 1/sqrt(fan_in)) from the seeded project RNG, biases and
// layer-norm offsets zero, layer-norm gains one; draws happen in member
// declaration order.
struct Weights {
  EncoderConfig config;
  uint64_t seed = 0;
  std::vector<Eigen::MatrixXd> node_embed;       // 32 x [D x 16]
  std::vector<Eigen::VectorXd> node_embed_bias;  // 32 x [D]
  Eigen::MatrixXd w_pos;                         // 32 x D
  std::vector<Eigen::MatrixXd> gcn;              // layers x [D x D]
  std::vector<AttentionLayer> attention;         // layers
  Eigen::MatrixXd est_w1;                        // hidden x 32*D
  Eigen::VectorXd est_b1;
  Eigen::MatrixXd est_w2;                        // 4 x hidden
  Eigen::VectorXd est_b2;
  std::vector<Eigen::VectorXd> decode_w;         // 32 x [D + 4 + 18]
  Eigen::VectorXd decode_b;                      // 32
  std::vector<Eigen::VectorXd> critic_w;         // 32 x [D + privileged]
  Eigen::VectorXd critic_b;                      // 32

  static Weights Random(const EncoderConfig& config, uint64_t seed);

  // Flat binary container with a JSON header carrying shapes, seed, and
  // config; the loader validates every shape.
  void Save(const std::filesystem::path& path) const;
  static Weights Load(const std::filesystem::path& path);
};

using Mask = Eigen::Matrix<double, kNumSlots, kNumSlots>;

// X: 32 x D, row i from slot i's own projection weights.
Eigen::MatrixXd EmbedNodes(const PolicyInput& input, const Weights& weights);

// Stacked symmetric-normalized graph convolutions with ReLU:
//   H' = ReLU(D^-1/2 M D^-1/2 H W). M must be symmetric with unit diagonal.
Eigen::MatrixXd GcnForward(const Eigen::MatrixXd& x, const Mask& mask,
                           const Weights& weights);

// Positional embeddings + residual attention blocks, LayerNorm(H + MHA(H)).
// Masked layers add -inf to attention scores outside the mask before
// softmax, so excluded weights are exactly zero.
Eigen::MatrixXd AttentionForward(const Eigen::MatrixXd& x, const Mask& mask,
                                 const Weights& weights);

// Dispatches on config.variant.
Eigen::MatrixXd EncoderForward(const Eigen::MatrixXd& x, const Mask& mask,
                               const Weights& weights);

// Estimator(Flatten(Z)) -> [v_x, v_y, v_z, h]. Row-major flatten.
Eigen::Vector4d EstimateState(const Eigen::MatrixXd& z, const Weights& weights);

struct DecodedActions {
  Eigen::VectorXd a_global;  // 32
  Eigen::VectorXd a_r;       // n_r, through the inverse joint mapping
};

// Per-node linear decode of [Z[i], P, o_g]; a_r = unproject(a_global).
DecodedActions DecodeActions(const Eigen::MatrixXd& z,
                             const Eigen::Vector4d& estimate,
                             const Eigen::VectorXd& global_context,
                             const model::RobotTemplate& robot,
                             const canonical::JointMap& map,
                             const Weights& weights);

// Mean of per-node value estimates over present nodes only.
double CriticValue(const Eigen::MatrixXd& z, const Eigen::VectorXd& privileged,
                   const std::array<bool, kNumSlots>& present,
                   const Weights& weights);

// Full pipeline X -> encoder -> estimator -> per-node decode -> a_global,
// with o_g held fixed. Used by the gradient check.
Eigen::VectorXd PipelineForward(const Eigen::MatrixXd& x, const Mask& mask,
                                const Eigen::VectorXd& global_context,
                                const Weights& weights);

// Directional derivative of PipelineForward along dx, computed analytically
// in forward mode. Returns (value, tangent).
std::pair<Eigen::VectorXd, Eigen::VectorXd> PipelineJvp(
    const Eigen::MatrixXd& x, const Eigen::MatrixXd& dx, const Mask& mask,
    const Eigen::VectorXd& global_context, const Weights& weights);

// Per-head attention row weights of one masked layer, exposed so tests can
// assert exact zeros outside the mask and row normalization.
Eigen::MatrixXd AttentionWeightsForLayer(const Eigen::MatrixXd& x,
                                         const Mask& mask, int layer, int head,
                                         const Weights& weights);

}  // namespace morphforge::encoder

#endif  // MORPHFORGE_ENCODER_HPP_
