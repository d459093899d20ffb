#pragma once

#include "prt/model.hpp"

namespace prt {

/// Non-owning view of a classifier (net + flat parameters).
struct ModelRef {
  const ClassifierNet* net = nullptr;
  const Vec* params = nullptr;
};

/// Reward-maximizing policy pi(y|x) proportional to pi_base(y|x) * exp(r(x,y)/lambda).
/// The same object realizes the training-time model (base = source pretrained)
/// and the inference-time model (base = any swapped-in pretrained model with
/// the same label set).
struct ComposedPolicy {
  ModelRef base;
  ModelRef reward;
  double lambda = 1.0;
};

void validate(const ComposedPolicy& policy);

/// log_softmax(base_logits) + reward / lambda. Softmax of the result is the
/// composed distribution; everything stays in log space until the boundary.
Vec compose_logits(const Vec& base_logits, const Vec& reward_values, double lambda);

/// softmax(compose_logits(f_base(x), r(x), lambda)).
Vec prt_distribution(const ComposedPolicy& policy, const Vec& x);

/// log_softmax(ft_logits) - log_softmax(pt_logits): the reward a fine-tuned
/// model implicitly encodes relative to its base.
Vec implicit_reward(const Vec& ft_logits, const Vec& pt_logits);

/// Emulated fine-tuning: the target base composed with the implicit reward of
/// the (pt_source, ft_source) pair. Requires three model evaluations per input.
Vec eft_distribution(const Vec& target_logits, const Vec& pt_source_logits,
                     const Vec& ft_source_logits);

/// V(x) = lambda * log Z(x), the log-normalizer of the composed distribution.
double partition_value_from_logits(const Vec& base_logits, const Vec& reward_values, double lambda);
double partition_value(const ComposedPolicy& policy, const Vec& x);

/// rho(y|x) = softmax(r(x, .)): the normalized exponential of the reward,
/// whose entropy drives the EM regularizer.
Vec rho_distribution(const Vec& reward_values);

}  // namespace prt
