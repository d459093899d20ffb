#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prt/numerics.hpp"

namespace prt {

enum class Activation { kTanh, kRelu };

/// MLP classifier over L labels. Serves both as pretrained model f(x; theta_pt)
/// and as reward model r(x; theta); the two roles differ only in how the
/// output vector is consumed.
struct ClassifierNet {
  int input_dim = 0;
  std::vector<int> hidden_dims;
  int num_labels = 0;
  Activation activation = Activation::kTanh;
};

bool operator==(const ClassifierNet& a, const ClassifierNet& b);

/// Throws InvalidInputError unless all dims >= 1 and num_labels >= 2.
void validate(const ClassifierNet& net);

/// Flat parameter vector length. Layout: per layer, weights row-major
/// (out_dim x in_dim) then biases, layers in input-to-output order.
std::size_t param_count(const ClassifierNet& net);

/// Deterministic init: weights ~ N(0, 1/fan_in) drawn in layout order from
/// CounterRng(seed), biases exactly zero.
Vec init_params(const ClassifierNet& net, std::uint64_t seed);

/// Logits f(x; params). Pure; bit-identical outputs for identical inputs.
Vec forward(const ClassifierNet& net, const Vec& params, const Vec& x);

struct Example {
  Vec x;
  int label = 0;
};

using Dataset = std::vector<Example>;

struct LossSpec {
  enum class Kind {
    kFinetuneCe,        // cross-entropy of softmax(f(x))
    kPrtCe,             // cross-entropy of softmax(base_log_probs + f(x)/lambda)
    kPrtCeEntropyReg,   // PrtCe - alpha * H(softmax(f(x)))
  };
  Kind kind = Kind::kFinetuneCe;
  double lambda = 1.0;
  double alpha = 0.0;
};

/// One batch element. base_log_probs carries the frozen pretrained model's
/// log-probabilities for this example (treated as constants, no gradient);
/// required for the PRT loss kinds, ignored for kFinetuneCe.
struct BatchItem {
  const Example* example = nullptr;
  const Vec* base_log_probs = nullptr;
};

/// Reward-side statistics of a PRT batch, averaged over examples.
struct PrtBatchStats {
  double mean_ce = 0.0;
  double mean_reward_true = 0.0;         // r(x, y*)
  double mean_reward_base_expect = 0.0;  // E_{y ~ pi_pt}[r(x, y)]
  double mean_rho_entropy = 0.0;         // H(softmax(r(x, .)))
  double max_jensen_gap = 0.0;           // max over batch of E_{pi_pt}[r] - V
};

struct LossGrad {
  double loss = 0.0;  // mean objective over the batch
  Vec grad;           // exact analytic d(loss)/d(params)
  std::optional<PrtBatchStats> prt;
};

/// Mean loss over the batch and its exact gradient. Throws NumericError
/// (with the offending batch index) on non-finite intermediates.
LossGrad loss_and_grad(const ClassifierNet& net, const Vec& params,
                       std::span<const BatchItem> batch, const LossSpec& spec);

/// Adam moments; single-owner mutable, one training loop per instance.
struct AdamState {
  Vec m;
  Vec v;
  std::int64_t step = 0;
};

AdamState make_adam_state(std::size_t n);

/// Standard Adam update, beta1=0.9, beta2=0.999, eps=1e-8, bias-corrected.
void adam_step(AdamState& state, Vec& params, const Vec& grad, double lr);

}  // namespace prt
