#include "prt/compose.hpp"

#include <string>

#include "prt/errors.hpp"

namespace prt {

namespace {
void check_lengths(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw InvalidInputError(std::string(what) + ": length mismatch (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}
}  // namespace

void validate(const ComposedPolicy& policy) {
  if (policy.base.net == nullptr || policy.base.params == nullptr ||
      policy.reward.net == nullptr || policy.reward.params == nullptr) {
    throw InvalidInputError("ComposedPolicy: null model reference");
  }
  validate(*policy.base.net);
  validate(*policy.reward.net);
  if (policy.base.net->num_labels != policy.reward.net->num_labels) {
    throw InvalidInputError("ComposedPolicy: base and reward label counts differ");
  }
  if (policy.lambda <= 0.0) throw InvalidInputError("ComposedPolicy: lambda must be > 0");
}

Vec compose_logits(const Vec& base_logits, const Vec& reward_values, double lambda) {
  check_lengths(base_logits, reward_values, "compose_logits");
  if (lambda <= 0.0) throw InvalidInputError("compose_logits: lambda must be > 0");
  Vec out = log_softmax(base_logits);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += reward_values[i] / lambda;
  return out;
}

Vec prt_distribution(const ComposedPolicy& policy, const Vec& x) {
  validate(policy);
  const Vec base_logits = forward(*policy.base.net, *policy.base.params, x);
  const Vec reward = forward(*policy.reward.net, *policy.reward.params, x);
  return softmax(compose_logits(base_logits, reward, policy.lambda));
}

Vec implicit_reward(const Vec& ft_logits, const Vec& pt_logits) {
  check_lengths(ft_logits, pt_logits, "implicit_reward");
  Vec out = log_softmax(ft_logits);
  const Vec pt_lp = log_softmax(pt_logits);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= pt_lp[i];
  return out;
}

Vec eft_distribution(const Vec& target_logits, const Vec& pt_source_logits,
                     const Vec& ft_source_logits) {
  check_lengths(target_logits, pt_source_logits, "eft_distribution");
  return softmax(compose_logits(target_logits,
                                implicit_reward(ft_source_logits, pt_source_logits), 1.0));
}

double partition_value_from_logits(const Vec& base_logits, const Vec& reward_values, double lambda) {
  return lambda * logsumexp(compose_logits(base_logits, reward_values, lambda));
}

double partition_value(const ComposedPolicy& policy, const Vec& x) {
  validate(policy);
  const Vec base_logits = forward(*policy.base.net, *policy.base.params, x);
  const Vec reward = forward(*policy.reward.net, *policy.reward.params, x);
  return partition_value_from_logits(base_logits, reward, policy.lambda);
}

Vec rho_distribution(const Vec& reward_values) {
  return softmax(reward_values);
}

}  // namespace prt
