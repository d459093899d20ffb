#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "prt/checkpoint.hpp"
#include "prt/compose.hpp"
#include "prt/model.hpp"

namespace prt {

/// One input's worth of the KL-closeness chain. All quantities are exact
/// finite-constant forms recovered from the bound's proof: with
/// eps = KL(pi_pt || pi_pt~) and C = max_y exp r / E_{pi_pt} exp r,
///   KL(pi_theta || pi_theta~)  =  first_term + log(z_ratio)
/// and the chain claims first_term <= C*eps, z_ratio <= 1 + C*sqrt(2*eps),
/// hence lhs <= rhs = C*eps + log(1 + C*sqrt(2*eps)).
struct BoundRecord {
  double eps = 0.0;
  double C = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double first_term = 0.0;
  double z_ratio = 1.0;
  bool holds = true;        // lhs <= rhs
  bool sub_a_holds = true;  // first_term <= C*eps
  bool sub_b_holds = true;  // z_ratio <= 1 + C*sqrt(2*eps)
  bool finite_eps = true;   // infinite eps excluded from aggregates
};

struct BoundReport {
  std::vector<BoundRecord> records;
  int violations = 0;        // full-chain failures among finite-eps records
  int sub_a_violations = 0;
  int sub_b_violations = 0;
  int excluded = 0;          // infinite-eps records
  double max_slack_ratio = 0.0;  // max lhs/rhs over finite-eps records
};

/// Chain record for one (pt, pt~, reward) triple given as raw vectors
/// (lambda = 1, the lambda-absorbed form the bound is stated for).
BoundRecord kl_bound_record(const Vec& pt_logits, const Vec& pt_tilde_logits, const Vec& reward);

/// Chain over model outputs at the given inputs.
BoundReport verify_kl_bound(const Checkpoint& pt, const Checkpoint& pt_tilde,
                            const Checkpoint& reward, const std::vector<Vec>& inputs);

/// Max over inputs of total_variation(softmax(f_ft(x)), compose(pt, implicit
/// reward of (ft, pt))). Algebraically zero; returns the observed maximum.
double verify_prop1(const Checkpoint& ft, const Checkpoint& pt, const std::vector<Vec>& inputs);

/// Max over inputs of E_{pi_pt}[r] - V(x); analytically <= 0.
double verify_jensen(const Checkpoint& reward, const Checkpoint& pt,
                     const std::vector<Vec>& inputs, double lambda);

/// Probability-vector-producing policy over inputs.
using PolicyFn = std::function<Vec(const Vec&)>;

/// Argmax ties break to the lowest label index.
struct EvalResult {
  double accuracy = 0.0;
  double mean_ce = 0.0;
  int n = 0;
};
EvalResult eval_accuracy(const PolicyFn& policy, const Dataset& data);

// Policy builders capture pointers to their arguments; keep them alive.
PolicyFn plain_policy(const ClassifierNet& net, const Vec& params);
PolicyFn prt_policy(const ClassifierNet& base_net, const Vec& base_params,
                    const ClassifierNet& reward_net, const Vec& reward_params, double lambda);
PolicyFn eft_policy(const ClassifierNet& target_net, const Vec& target_params,
                    const ClassifierNet& pt_net, const Vec& pt_params,
                    const ClassifierNet& ft_net, const Vec& ft_params);

struct MethodCost {
  std::string method;
  int forwards_per_input = 0;       // exact by construction: plain 1, PRT 2, EFT 3
  std::int64_t forward_passes = 0;  // counted over the run
  double seconds_median = 0.0;      // median over repeats of a full pass
  double seconds_mean = 0.0;
  double seconds_std = 0.0;
  std::size_t peak_live_params = 0;  // parameters the method must keep loaded
};

struct CostReport {
  std::vector<MethodCost> methods;  // pretrained, ft, prt, eft
  double prt_over_eft_ratio = 0.0;  // median(prt) / median(eft)
  int repeats = 0;
  int num_inputs = 0;
};

/// Times one full pass over inputs per repeat for each method (pretrained,
/// ft-oracle, PRT, EFT), after one untimed warmup pass. All five parameter
/// vectors belong to equal-architecture nets. Monotonic clock, single thread.
CostReport benchmark(const ClassifierNet& net, const Vec& target_params,
                     const Vec& ft_oracle_params, const Vec& reward_params,
                     const Vec& src_pt_params, const Vec& src_ft_params,
                     const std::vector<Vec>& inputs, int repeats);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// n iid N(0, scale^2)^dim inputs from CounterRng(seed).
std::vector<Vec> gaussian_inputs(int n, int dim, std::uint64_t seed, double scale = 1.0);

}  // namespace prt
