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

#include "morphforge/encoder.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "morphforge/errors.hpp"
#include "morphforge/rng.hpp"

namespace morphforge::encoder {

namespace {

constexpr double kLayerNormEpsilon = 1e-5;

void RequireShape(const Eigen::MatrixXd& m, Eigen::Index rows,
                  Eigen::Index cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + ": expected " + std::to_string(rows) +
                    "x" + std::to_string(cols) + ", got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void RequireMask(const Mask& mask) {
  if ((mask - mask.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorCode::kShapeMismatch, "mask must be symmetric");
  }
  for (int i = 0; i < kNumSlots; ++i) {
    if (mask(i, i) != 1.0) {
      throw Error(ErrorCode::kShapeMismatch, "mask must have a unit diagonal");
    }
  }
}

bool LayerIsMasked(const EncoderConfig& config, int layer) {
  return config.hybrid_order == HybridOrder::kMaskedFirst ? layer == 0
                                                          : layer > 0;
}

Eigen::MatrixXd GcnNormalize(const Mask& mask) {
  Eigen::VectorXd inv_sqrt_degree(kNumSlots);
  for (int i = 0; i < kNumSlots; ++i) {
    inv_sqrt_degree[i] = 1.0 / std::sqrt(mask.row(i).sum());
  }
  return inv_sqrt_degree.asDiagonal() * mask * inv_sqrt_degree.asDiagonal();
}

// Row-wise softmax; -inf scores come out as exact zeros. Every row has at
// least one finite entry (the diagonal is never masked).
Eigen::MatrixXd SoftmaxRows(const Eigen::MatrixXd& scores) {
  Eigen::MatrixXd out(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double row_max = scores.row(i).maxCoeff();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
      const double s = scores(i, j);
      out(i, j) = std::isinf(s) && s < 0.0 ? 0.0 : std::exp(s - row_max);
      sum += out(i, j);
    }
    out.row(i) /= sum;
  }
  return out;
}

struct AttentionStep {
  Eigen::MatrixXd output;   // after residual + layer norm
  Eigen::MatrixXd tangent;  // matching directional derivative
};

// One residual attention block with optional masking, evaluated jointly with
// its forward-mode tangent (tangent may be empty to skip the derivative).
AttentionStep AttentionBlock(const Eigen::MatrixXd& h,
                             const Eigen::MatrixXd& dh, bool masked,
                             const Mask& mask, const AttentionLayer& layer,
                             int heads) {
  const Eigen::Index n = h.rows();
  const Eigen::Index width = h.cols();
  const Eigen::Index head_dim = width / heads;
  const bool with_tangent = dh.size() > 0;

  Eigen::MatrixXd attended(n, width);
  Eigen::MatrixXd d_attended =
      with_tangent ? Eigen::MatrixXd(n, width) : Eigen::MatrixXd();

  for (int head = 0; head < heads; ++head) {
    const auto wq = layer.wq.middleCols(head * head_dim, head_dim);
    const auto wk = layer.wk.middleCols(head * head_dim, head_dim);
    const auto wv = layer.wv.middleCols(head * head_dim, head_dim);
    const Eigen::MatrixXd q = h * wq;
    const Eigen::MatrixXd k = h * wk;
    const Eigen::MatrixXd v = h * wv;
    const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
    Eigen::MatrixXd scores = q * k.transpose() * scale;
    if (masked) {
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (mask(i, j) == 0.0) {
            scores(i, j) = -std::numeric_limits<double>::infinity();
          }
        }
      }
    }
    const Eigen::MatrixXd weights = SoftmaxRows(scores);
    attended.middleCols(head * head_dim, head_dim) = weights * v;

    if (with_tangent) {
      const Eigen::MatrixXd dq = dh * wq;
      const Eigen::MatrixXd dk = dh * wk;
      const Eigen::MatrixXd dv = dh * wv;
      const Eigen::MatrixXd dscores =
          (dq * k.transpose() + q * dk.transpose()) * scale;
      // Softmax differential per row: dA = A .* (dS - (A . dS) 1^T).
      Eigen::MatrixXd dweights(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double dot = weights.row(i).dot(dscores.row(i));
        const Eigen::RowVectorXd shifted = dscores.row(i).array() - dot;
        dweights.row(i) = weights.row(i).cwiseProduct(shifted);
      }
      d_attended.middleCols(head * head_dim, head_dim) =
          dweights * v + weights * dv;
    }
  }

  const Eigen::MatrixXd pre = h + attended * layer.wo;
  Eigen::MatrixXd dpre;
  if (with_tangent) dpre = dh + d_attended * layer.wo;

  // Row-wise layer norm with learned gain/offset.
  AttentionStep step;
  step.output.resize(n, width);
  if (with_tangent) step.tangent.resize(n, width);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = pre.row(i).mean();
    const Eigen::RowVectorXd centered = pre.row(i).array() - mean;
    const double variance = centered.squaredNorm() / width;
    const double sigma = std::sqrt(variance + kLayerNormEpsilon);
    step.output.row(i) =
        (centered / sigma).cwiseProduct(layer.ln_gamma.transpose()) +
        layer.ln_beta.transpose();
    if (with_tangent) {
      const double dmean = dpre.row(i).mean();
      const Eigen::RowVectorXd dcentered = dpre.row(i).array() - dmean;
      const double dvariance = 2.0 * centered.dot(dcentered) / width;
      const double dsigma = dvariance / (2.0 * sigma);
      step.tangent.row(i) =
          (dcentered / sigma - centered * (dsigma / (sigma * sigma)))
              .cwiseProduct(layer.ln_gamma.transpose());
    }
  }
  return step;
}

struct EncoderStep {
  Eigen::MatrixXd z;
  Eigen::MatrixXd dz;
};

EncoderStep EncoderWithTangent(const Eigen::MatrixXd& x,
                               const Eigen::MatrixXd& dx, const Mask& mask,
                               const Weights& weights) {
  const EncoderConfig& config = weights.config;
  RequireShape(x, kNumSlots, config.width, "encoder input");
  const bool with_tangent = dx.size() > 0;

  if (config.variant == Variant::kGcn) {
    RequireMask(mask);
    const Eigen::MatrixXd norm = GcnNormalize(mask);
    Eigen::MatrixXd h = x;
    Eigen::MatrixXd dh = dx;
    for (const Eigen::MatrixXd& w : weights.gcn) {
      const Eigen::MatrixXd pre = norm * h * w;
      if (with_tangent) {
        const Eigen::MatrixXd dpre = norm * dh * w;
        dh = (pre.array() > 0.0).select(dpre, 0.0);
      }
      h = pre.cwiseMax(0.0);
    }
    return {h, dh};
  }

  RequireMask(mask);
  Eigen::MatrixXd h = x + weights.w_pos;
  Eigen::MatrixXd dh = dx;
  for (int layer = 0; layer < config.layers; ++layer) {
    const AttentionStep step =
        AttentionBlock(h, dh, LayerIsMasked(config, layer), mask,
                       weights.attention[layer], config.heads);
    h = step.output;
    if (with_tangent) dh = step.tangent;
  }
  return {h, dh};
}

Eigen::VectorXd FlattenRowMajor(const Eigen::MatrixXd& z) {
  Eigen::VectorXd flat(z.rows() * z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    flat.segment(i * z.cols(), z.cols()) = z.row(i);
  }
  return flat;
}

struct EstimateStep {
  Eigen::Vector4d value;
  Eigen::Vector4d tangent;
};

EstimateStep EstimateWithTangent(const Eigen::MatrixXd& z,
                                 const Eigen::MatrixXd& dz,
                                 const Weights& weights) {
  RequireShape(z, kNumSlots, weights.config.width, "estimator input");
  const Eigen::VectorXd flat = FlattenRowMajor(z);
  const Eigen::VectorXd hidden_pre = weights.est_w1 * flat + weights.est_b1;
  const Eigen::VectorXd hidden = hidden_pre.cwiseMax(0.0);
  EstimateStep step;
  step.value = weights.est_w2 * hidden + weights.est_b2;
  if (dz.size() > 0) {
    const Eigen::VectorXd dflat = FlattenRowMajor(dz);
    const Eigen::VectorXd dhidden_pre = weights.est_w1 * dflat;
    const Eigen::VectorXd dhidden =
        (hidden_pre.array() > 0.0).select(dhidden_pre, 0.0);
    step.tangent = weights.est_w2 * dhidden;
  } else {
    step.tangent.setZero();
  }
  return step;
}

}  // namespace

Eigen::VectorXd ProprioFrame::ToVector() const {
  Eigen::VectorXd v(kProprioLength);
  v << omega, gravity, q, qdot, a_prev;
  return v;
}

Eigen::VectorXd PolicyInput::Flatten() const {
  Eigen::VectorXd flat(kPolicyInputLength);
  Eigen::Index offset = 0;
  for (const ProprioFrame& frame : history) {
    flat.segment(offset, kProprioLength) = frame.ToVector();
    offset += kProprioLength;
  }
  for (int slot = 0; slot < kNumSlots; ++slot) {
    flat[offset + slot] = static_cast<double>(mask[slot]);
  }
  offset += kNumSlots;
  flat.segment(offset, kCommandLength) = command.ToVector();
  return flat;
}

Eigen::VectorXd PolicyInput::GlobalContext() const {
  const ProprioFrame& newest = history.back();
  Eigen::VectorXd context(kGlobalFeatures);
  context << newest.omega, newest.gravity, command.ToVector();
  return context;
}

Eigen::VectorXd PolicyInput::NodeFeatures(int slot) const {
  Eigen::VectorXd features(kPerNodeFeatures);
  Eigen::Index offset = 0;
  for (const ProprioFrame& frame : history) {
    features[offset++] = frame.q[slot];
    features[offset++] = frame.qdot[slot];
    features[offset++] = frame.a_prev[slot];
  }
  features[offset] = static_cast<double>(mask[slot]);
  return features;
}

PolicyInput AssembleObservation(const std::vector<ProprioFrame>& history,
                                const canonical::ControllabilityMask& mask,
                                const rewards::CommandVector& command) {
  if (history.size() != kHistoryLength) {
    throw Error(ErrorCode::kWrongHistoryLength,
                "expected " + std::to_string(kHistoryLength) +
                    " proprioception frames, got " +
                    std::to_string(history.size()));
  }
  PolicyInput input;
  for (int i = 0; i < kHistoryLength; ++i) {
    if (std::abs(history[i].gravity.norm() - 1.0) > 1e-6) {
      throw Error(ErrorCode::kShapeMismatch,
                  "gravity direction in frame " + std::to_string(i) +
                      " is not unit length");
    }
    input.history[i] = history[i];
  }
  input.mask = mask;
  input.command = command;
  return input;
}

void EncoderConfig::Validate() const {
  if (width <= 0 || layers < 1 || heads <= 0) {
    throw Error(ErrorCode::kShapeMismatch, "nonpositive encoder dimensions");
  }
  if (width % heads != 0) {
    throw Error(ErrorCode::kShapeMismatch,
                "width " + std::to_string(width) + " not divisible by " +
                    std::to_string(heads) + " heads");
  }
  if (estimator_hidden <= 0 || privileged_size < 0) {
    throw Error(ErrorCode::kShapeMismatch, "bad estimator/privileged sizes");
  }
}

namespace {

void FillUniform(Eigen::MatrixXd& m, double bound, Rng& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rng.Uniform(-bound, bound);
    }
  }
}

void FillUniform(Eigen::VectorXd& v, double bound, Rng& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.Uniform(-bound, bound);
}

}  // namespace

Weights Weights::Random(const EncoderConfig& config, uint64_t seed) {
  config.Validate();
  Weights weights;
  weights.config = config;
  weights.seed = seed;
  Rng rng(seed);
  const int d = config.width;

  weights.node_embed.resize(kNumSlots);
  weights.node_embed_bias.resize(kNumSlots);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    weights.node_embed[slot].resize(d, kPerNodeFeatures);
    FillUniform(weights.node_embed[slot], 1.0 / std::sqrt(kPerNodeFeatures),
                rng);
    weights.node_embed_bias[slot] = Eigen::VectorXd::Zero(d);
  }
  weights.w_pos.resize(kNumSlots, d);
  FillUniform(weights.w_pos, 1.0 / std::sqrt(d), rng);

  weights.gcn.resize(config.layers);
  for (Eigen::MatrixXd& w : weights.gcn) {
    w.resize(d, d);
    FillUniform(w, 1.0 / std::sqrt(d), rng);
  }
  weights.attention.resize(config.layers);
  for (AttentionLayer& layer : weights.attention) {
    for (Eigen::MatrixXd* w : {&layer.wq, &layer.wk, &layer.wv, &layer.wo}) {
      w->resize(d, d);
      FillUniform(*w, 1.0 / std::sqrt(d), rng);
    }
    layer.ln_gamma = Eigen::VectorXd::Ones(d);
    layer.ln_beta = Eigen::VectorXd::Zero(d);
  }

  const int flat = kNumSlots * d;
  weights.est_w1.resize(config.estimator_hidden, flat);
  FillUniform(weights.est_w1, 1.0 / std::sqrt(flat), rng);
  weights.est_b1 = Eigen::VectorXd::Zero(config.estimator_hidden);
  weights.est_w2.resize(kEstimateLength, config.estimator_hidden);
  FillUniform(weights.est_w2, 1.0 / std::sqrt(config.estimator_hidden), rng);
  weights.est_b2 = Eigen::VectorXd::Zero(kEstimateLength);

  const int decode_in = d + kEstimateLength + kGlobalFeatures;
  weights.decode_w.resize(kNumSlots);
  for (Eigen::VectorXd& w : weights.decode_w) {
    w.resize(decode_in);
    FillUniform(w, 1.0 / std::sqrt(decode_in), rng);
  }
  weights.decode_b = Eigen::VectorXd::Zero(kNumSlots);

  const int critic_in = d + config.privileged_size;
  weights.critic_w.resize(kNumSlots);
  for (Eigen::VectorXd& w : weights.critic_w) {
    w.resize(critic_in);
    FillUniform(w, 1.0 / std::sqrt(critic_in), rng);
  }
  weights.critic_b = Eigen::VectorXd::Zero(kNumSlots);
  return weights;
}

Eigen::MatrixXd EmbedNodes(const PolicyInput& input, const Weights& weights) {
  const int d = weights.config.width;
  Eigen::MatrixXd x(kNumSlots, d);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    RequireShape(weights.node_embed[slot], d, kPerNodeFeatures, "node embed");
    x.row(slot) = (weights.node_embed[slot] * input.NodeFeatures(slot) +
                   weights.node_embed_bias[slot])
                      .transpose();
  }
  return x;
}

Eigen::MatrixXd GcnForward(const Eigen::MatrixXd& x, const Mask& mask,
                           const Weights& weights) {
  Weights gcn_view = weights;
  gcn_view.config.variant = Variant::kGcn;
  return EncoderWithTangent(x, Eigen::MatrixXd(), mask, gcn_view).z;
}

Eigen::MatrixXd AttentionForward(const Eigen::MatrixXd& x, const Mask& mask,
                                 const Weights& weights) {
  Weights attention_view = weights;
  attention_view.config.variant = Variant::kTransformer;
  return EncoderWithTangent(x, Eigen::MatrixXd(), mask, attention_view).z;
}

Eigen::MatrixXd EncoderForward(const Eigen::MatrixXd& x, const Mask& mask,
                               const Weights& weights) {
  return EncoderWithTangent(x, Eigen::MatrixXd(), mask, weights).z;
}

Eigen::Vector4d EstimateState(const Eigen::MatrixXd& z,
                              const Weights& weights) {
  return EstimateWithTangent(z, Eigen::MatrixXd(), weights).value;
}

DecodedActions DecodeActions(const Eigen::MatrixXd& z,
                             const Eigen::Vector4d& estimate,
                             const Eigen::VectorXd& global_context,
                             const model::RobotTemplate& robot,
                             const canonical::JointMap& map,
                             const Weights& weights) {
  const int d = weights.config.width;
  RequireShape(z, kNumSlots, d, "decoder input");
  if (global_context.size() != kGlobalFeatures) {
    throw Error(ErrorCode::kShapeMismatch, "global context must have length " +
                                               std::to_string(kGlobalFeatures));
  }
  DecodedActions out;
  out.a_global.resize(kNumSlots);
  Eigen::VectorXd fused(d + kEstimateLength + kGlobalFeatures);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    fused << z.row(slot).transpose(), estimate, global_context;
    out.a_global[slot] = weights.decode_w[slot].dot(fused) +
                         weights.decode_b[slot];
  }
  out.a_r = canonical::Unproject(out.a_global, robot, map);
  return out;
}

double CriticValue(const Eigen::MatrixXd& z, const Eigen::VectorXd& privileged,
                   const std::array<bool, kNumSlots>& present,
                   const Weights& weights) {
  const int d = weights.config.width;
  RequireShape(z, kNumSlots, d, "critic input");
  if (privileged.size() != weights.config.privileged_size) {
    throw Error(ErrorCode::kShapeMismatch,
                "privileged vector must have length " +
                    std::to_string(weights.config.privileged_size));
  }
  double sum = 0.0;
  int count = 0;
  Eigen::VectorXd fused(d + weights.config.privileged_size);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    if (!present[slot]) continue;
    fused << z.row(slot).transpose(), privileged;
    sum += weights.critic_w[slot].dot(fused) + weights.critic_b[slot];
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::kShapeMismatch, "no present nodes to average");
  }
  return sum / count;
}

Eigen::VectorXd PipelineForward(const Eigen::MatrixXd& x, const Mask& mask,
                                const Eigen::VectorXd& global_context,
                                const Weights& weights) {
  const EncoderStep encoded =
      EncoderWithTangent(x, Eigen::MatrixXd(), mask, weights);
  const EstimateStep estimate =
      EstimateWithTangent(encoded.z, Eigen::MatrixXd(), weights);
  Eigen::VectorXd a_global(kNumSlots);
  Eigen::VectorXd fused(weights.config.width + kEstimateLength +
                        kGlobalFeatures);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    fused << encoded.z.row(slot).transpose(), estimate.value, global_context;
    a_global[slot] =
        weights.decode_w[slot].dot(fused) + weights.decode_b[slot];
  }
  return a_global;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> PipelineJvp(
    const Eigen::MatrixXd& x, const Eigen::MatrixXd& dx, const Mask& mask,
    const Eigen::VectorXd& global_context, const Weights& weights) {
  const EncoderStep encoded = EncoderWithTangent(x, dx, mask, weights);
  const EstimateStep estimate =
      EstimateWithTangent(encoded.z, encoded.dz, weights);

  const int d = weights.config.width;
  Eigen::VectorXd a_global(kNumSlots), da_global(kNumSlots);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    Eigen::VectorXd fused(d + kEstimateLength + kGlobalFeatures);
    fused << encoded.z.row(slot).transpose(), estimate.value, global_context;
    a_global[slot] =
        weights.decode_w[slot].dot(fused) + weights.decode_b[slot];
    const auto& w = weights.decode_w[slot];
    da_global[slot] = w.head(d).dot(encoded.dz.row(slot)) +
                      w.segment(d, kEstimateLength).dot(estimate.tangent);
  }
  return {a_global, da_global};
}

Eigen::MatrixXd AttentionWeightsForLayer(const Eigen::MatrixXd& x,
                                         const Mask& mask, int layer, int head,
                                         const Weights& weights) {
  const EncoderConfig& config = weights.config;
  RequireShape(x, kNumSlots, config.width, "encoder input");
  if (layer < 0 || layer >= config.layers || head < 0 ||
      head >= config.heads) {
    throw Error(ErrorCode::kShapeMismatch, "layer/head out of range");
  }
  Eigen::MatrixXd h = x + weights.w_pos;
  for (int l = 0; l < layer; ++l) {
    h = AttentionBlock(h, Eigen::MatrixXd(), LayerIsMasked(config, l), mask,
                       weights.attention[l], config.heads)
            .output;
  }
  const AttentionLayer& target = weights.attention[layer];
  const Eigen::Index head_dim = config.width / config.heads;
  const Eigen::MatrixXd q = h * target.wq.middleCols(head * head_dim, head_dim);
  const Eigen::MatrixXd k = h * target.wk.middleCols(head * head_dim, head_dim);
  Eigen::MatrixXd scores =
      q * k.transpose() / std::sqrt(static_cast<double>(head_dim));
  if (LayerIsMasked(config, layer)) {
    for (int i = 0; i < kNumSlots; ++i) {
      for (int j = 0; j < kNumSlots; ++j) {
        if (mask(i, j) == 0.0) {
          scores(i, j) = -std::numeric_limits<double>::infinity();
        }
      }
    }
  }
  return SoftmaxRows(scores);
}

namespace {

const char kMagic[4] = {'M', 'F', 'W', 'B'};

struct TensorEntry {
  std::string name;
  const Eigen::MatrixXd* matrix = nullptr;
  Eigen::MatrixXd* mutable_matrix = nullptr;
};

// Tensor order is fixed; vectors are stored as n x 1 matrices.
template <typename WeightsT, typename Callback>
void VisitTensors(WeightsT& weights, Callback&& visit) {
  for (int slot = 0; slot < kNumSlots; ++slot) {
    visit("node_embed." + std::to_string(slot), weights.node_embed[slot]);
  }
  for (int slot = 0; slot < kNumSlots; ++slot) {
    visit("node_embed_bias." + std::to_string(slot),
          weights.node_embed_bias[slot]);
  }
  visit("w_pos", weights.w_pos);
  for (size_t layer = 0; layer < weights.gcn.size(); ++layer) {
    visit("gcn." + std::to_string(layer), weights.gcn[layer]);
  }
  for (size_t layer = 0; layer < weights.attention.size(); ++layer) {
    const std::string prefix = "attention." + std::to_string(layer) + ".";
    visit(prefix + "wq", weights.attention[layer].wq);
    visit(prefix + "wk", weights.attention[layer].wk);
    visit(prefix + "wv", weights.attention[layer].wv);
    visit(prefix + "wo", weights.attention[layer].wo);
    visit(prefix + "ln_gamma", weights.attention[layer].ln_gamma);
    visit(prefix + "ln_beta", weights.attention[layer].ln_beta);
  }
  visit("est_w1", weights.est_w1);
  visit("est_b1", weights.est_b1);
  visit("est_w2", weights.est_w2);
  visit("est_b2", weights.est_b2);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    visit("decode_w." + std::to_string(slot), weights.decode_w[slot]);
  }
  visit("decode_b", weights.decode_b);
  for (int slot = 0; slot < kNumSlots; ++slot) {
    visit("critic_w." + std::to_string(slot), weights.critic_w[slot]);
  }
  visit("critic_b", weights.critic_b);
}

nlohmann::json ConfigToJson(const EncoderConfig& config) {
  return {{"width", config.width},
          {"layers", config.layers},
          {"heads", config.heads},
          {"variant", config.variant == Variant::kGcn ? "gcn" : "transformer"},
          {"hybrid_order", config.hybrid_order == HybridOrder::kMaskedFirst
                               ? "masked_first"
                               : "global_first"},
          {"estimator_hidden", config.estimator_hidden},
          {"privileged_size", config.privileged_size}};
}

EncoderConfig ConfigFromJson(const nlohmann::json& json) {
  EncoderConfig config;
  config.width = json.at("width");
  config.layers = json.at("layers");
  config.heads = json.at("heads");
  config.variant =
      json.at("variant") == "gcn" ? Variant::kGcn : Variant::kTransformer;
  config.hybrid_order = json.at("hybrid_order") == "masked_first"
                            ? HybridOrder::kMaskedFirst
                            : HybridOrder::kGlobalFirst;
  config.estimator_hidden = json.at("estimator_hidden");
  config.privileged_size = json.at("privileged_size");
  config.Validate();
  return config;
}

}  // namespace

void Weights::Save(const std::filesystem::path& path) const {
  nlohmann::json header;
  header["version"] = 1;
  header["seed"] = seed;
  header["config"] = ConfigToJson(config);
  header["tensors"] = nlohmann::json::array();

  std::vector<const double*> payloads;
  std::vector<size_t> sizes;
  auto record = [&](const std::string& name, const auto& tensor) {
    header["tensors"].push_back({{"name", name},
                                 {"rows", tensor.rows()},
                                 {"cols", tensor.cols()}});
    payloads.push_back(tensor.data());
    sizes.push_back(static_cast<size_t>(tensor.size()));
  };
  VisitTensors(*this, record);

  const std::string header_text = header.dump();
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) {
    throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  }
  stream.write(kMagic, 4);
  const uint32_t header_len = static_cast<uint32_t>(header_text.size());
  stream.write(reinterpret_cast<const char*>(&header_len), 4);
  stream.write(header_text.data(), header_len);
  for (size_t i = 0; i < payloads.size(); ++i) {
    stream.write(reinterpret_cast<const char*>(payloads[i]),
                 static_cast<std::streamsize>(sizes[i] * sizeof(double)));
  }
  if (!stream) {
    throw Error(ErrorCode::kIoError, "short write to '" + path.string() + "'");
  }
}

Weights Weights::Load(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  char magic[4];
  stream.read(magic, 4);
  if (!stream || std::memcmp(magic, kMagic, 4) != 0) {
    throw Error(ErrorCode::kMalformedDocument,
                "'" + path.string() + "' is not a weight bundle");
  }
  uint32_t header_len = 0;
  stream.read(reinterpret_cast<char*>(&header_len), 4);
  std::string header_text(header_len, '\0');
  stream.read(header_text.data(), header_len);
  if (!stream) {
    throw Error(ErrorCode::kMalformedDocument, "truncated weight header");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument,
                std::string("bad weight header: ") + e.what());
  }

  // Allocate at the config's shapes, then require the stored shapes to match
  // exactly while reading.
  Weights weights = Weights::Random(ConfigFromJson(header.at("config")), 0);
  weights.seed = header.value("seed", uint64_t{0});

  size_t index = 0;
  const auto& tensors = header.at("tensors");
  auto read_tensor = [&](const std::string& name, auto& tensor) {
    if (index >= tensors.size()) {
      throw Error(ErrorCode::kShapeMismatch, "missing tensor '" + name + "'");
    }
    const auto& meta = tensors[index++];
    if (meta.at("name") != name ||
        meta.at("rows").get<Eigen::Index>() != tensor.rows() ||
        meta.at("cols").get<Eigen::Index>() != tensor.cols()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "tensor '" + name + "' has unexpected name or shape");
    }
    stream.read(reinterpret_cast<char*>(tensor.data()),
                static_cast<std::streamsize>(tensor.size() * sizeof(double)));
  };
  VisitTensors(weights, read_tensor);
  if (!stream || index != tensors.size()) {
    throw Error(ErrorCode::kShapeMismatch, "weight payload truncated");
  }
  return weights;
}

}  // namespace morphforge::encoder
