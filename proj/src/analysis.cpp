#include "prt/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "prt/errors.hpp"
#include "prt/rng.hpp"

namespace prt {

namespace {
// Guard against double roundoff flipping comparisons near equality
// (e.g. eps ~ 1e-17 cancellation when the two bases nearly coincide).
constexpr double kBoundTol = 1e-12;
}  // namespace

BoundRecord kl_bound_record(const Vec& pt_logits, const Vec& pt_tilde_logits, const Vec& reward) {
  if (pt_logits.size() != pt_tilde_logits.size() || pt_logits.size() != reward.size()) {
    throw InvalidInputError("kl_bound_record: length mismatch");
  }
  const Vec lp = log_softmax(pt_logits);
  const Vec lq = log_softmax(pt_tilde_logits);
  const std::size_t L = lp.size();

  BoundRecord rec;
  double eps = 0.0;
  for (std::size_t i = 0; i < L; ++i) eps += std::exp(lp[i]) * (lp[i] - lq[i]);
  rec.finite_eps = std::isfinite(eps);
  rec.eps = std::max(eps, 0.0);

  Vec tilted(L), tilted_t(L);
  for (std::size_t i = 0; i < L; ++i) {
    tilted[i] = lp[i] + reward[i];
    tilted_t[i] = lq[i] + reward[i];
  }
  const double log_z = logsumexp(tilted);
  const double log_z_tilde = logsumexp(tilted_t);
  rec.C = std::exp(*std::max_element(reward.begin(), reward.end()) - log_z);
  rec.z_ratio = std::exp(log_z_tilde - log_z);

  const Vec lpt = log_softmax(tilted);
  const Vec lqt = log_softmax(tilted_t);
  double lhs = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    const double w = std::exp(lpt[i]);
    lhs += w * (lpt[i] - lqt[i]);
    first += w * (lp[i] - lq[i]);
  }
  rec.lhs = lhs;
  rec.first_term = first;
  rec.rhs = rec.C * rec.eps + std::log1p(rec.C * std::sqrt(2.0 * rec.eps));
  rec.holds = rec.lhs <= rec.rhs + kBoundTol;
  rec.sub_a_holds = rec.first_term <= rec.C * rec.eps + kBoundTol;
  rec.sub_b_holds = rec.z_ratio <= 1.0 + rec.C * std::sqrt(2.0 * rec.eps) + kBoundTol;
  return rec;
}

BoundReport verify_kl_bound(const Checkpoint& pt, const Checkpoint& pt_tilde,
                            const Checkpoint& reward, const std::vector<Vec>& inputs) {
  if (pt.net.num_labels != pt_tilde.net.num_labels ||
      pt.net.num_labels != reward.net.num_labels) {
    throw InvalidInputError("verify_kl_bound: label counts differ");
  }
  BoundReport report;
  report.records.reserve(inputs.size());
  for (const Vec& x : inputs) {
    BoundRecord rec = kl_bound_record(forward(pt.net, pt.params, x),
                                      forward(pt_tilde.net, pt_tilde.params, x),
                                      forward(reward.net, reward.params, x));
    if (!rec.finite_eps) {
      ++report.excluded;
    } else {
      if (!rec.holds) ++report.violations;
      if (!rec.sub_a_holds) ++report.sub_a_violations;
      if (!rec.sub_b_holds) ++report.sub_b_violations;
      const double ratio = rec.rhs > 0.0 ? rec.lhs / rec.rhs : (rec.lhs <= 0.0 ? 0.0 : 1.0);
      report.max_slack_ratio = std::max(report.max_slack_ratio, ratio);
    }
    report.records.push_back(rec);
  }
  return report;
}

double verify_prop1(const Checkpoint& ft, const Checkpoint& pt, const std::vector<Vec>& inputs) {
  if (ft.net.num_labels != pt.net.num_labels) {
    throw InvalidInputError("verify_prop1: label counts differ");
  }
  double worst = 0.0;
  for (const Vec& x : inputs) {
    const Vec ft_logits = forward(ft.net, ft.params, x);
    const Vec pt_logits = forward(pt.net, pt.params, x);
    const Vec direct = softmax(ft_logits);
    const Vec composed =
        softmax(compose_logits(pt_logits, implicit_reward(ft_logits, pt_logits), 1.0));
    worst = std::max(worst, total_variation(direct, composed));
  }
  return worst;
}

double verify_jensen(const Checkpoint& reward, const Checkpoint& pt,
                     const std::vector<Vec>& inputs, double lambda) {
  if (reward.net.num_labels != pt.net.num_labels) {
    throw InvalidInputError("verify_jensen: label counts differ");
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const Vec& x : inputs) {
    const Vec r = forward(reward.net, reward.params, x);
    const Vec pt_logits = forward(pt.net, pt.params, x);
    const Vec pt_probs = softmax(pt_logits);
    double expect_r = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) expect_r += pt_probs[i] * r[i];
    const double v = partition_value_from_logits(pt_logits, r, lambda);
    worst = std::max(worst, expect_r - v);
  }
  return worst;
}

EvalResult eval_accuracy(const PolicyFn& policy, const Dataset& data) {
  if (data.empty()) throw InvalidInputError("eval_accuracy: empty dataset");
  EvalResult res;
  res.n = static_cast<int>(data.size());
  double ce_sum = 0.0;
  int correct = 0;
  for (const Example& ex : data) {
    const Vec probs = policy(ex.x);
    if (ex.label < 0 || static_cast<std::size_t>(ex.label) >= probs.size()) {
      throw InvalidInputError("eval_accuracy: label out of range");
    }
    // lowest index wins ties
    std::size_t arg = 0;
    for (std::size_t i = 1; i < probs.size(); ++i) {
      if (probs[i] > probs[arg]) arg = i;
    }
    if (static_cast<int>(arg) == ex.label) ++correct;
    ce_sum += cross_entropy(probs, static_cast<std::size_t>(ex.label));
  }
  res.accuracy = static_cast<double>(correct) / static_cast<double>(res.n);
  res.mean_ce = ce_sum / static_cast<double>(res.n);
  return res;
}

PolicyFn plain_policy(const ClassifierNet& net, const Vec& params) {
  return [&net, &params](const Vec& x) { return softmax(forward(net, params, x)); };
}

PolicyFn prt_policy(const ClassifierNet& base_net, const Vec& base_params,
                    const ClassifierNet& reward_net, const Vec& reward_params, double lambda) {
  return [&base_net, &base_params, &reward_net, &reward_params, lambda](const Vec& x) {
    return softmax(compose_logits(forward(base_net, base_params, x),
                                  forward(reward_net, reward_params, x), lambda));
  };
}

PolicyFn eft_policy(const ClassifierNet& target_net, const Vec& target_params,
                    const ClassifierNet& pt_net, const Vec& pt_params,
                    const ClassifierNet& ft_net, const Vec& ft_params) {
  return [&](const Vec& x) {
    return eft_distribution(forward(target_net, target_params, x),
                            forward(pt_net, pt_params, x), forward(ft_net, ft_params, x));
  };
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TimedMethod {
  std::string name;
  int forwards_per_input;
  std::size_t models;  // live models: peak params = models * param_count(net)
  std::function<Vec(const Vec&, std::int64_t&)> predict;
};

}  // namespace

CostReport benchmark(const ClassifierNet& net, const Vec& target_params,
                     const Vec& ft_oracle_params, const Vec& reward_params,
                     const Vec& src_pt_params, const Vec& src_ft_params,
                     const std::vector<Vec>& inputs, int repeats) {
  validate(net);
  if (repeats < 5) throw InvalidInputError("benchmark: repeats must be >= 5");
  if (inputs.empty()) throw InvalidInputError("benchmark: no inputs");

  auto counted_forward = [&net](const Vec& params, const Vec& x, std::int64_t& count) {
    ++count;
    return forward(net, params, x);
  };

  const std::vector<TimedMethod> methods = {
      {"pretrained", 1, 1,
       [&](const Vec& x, std::int64_t& c) { return softmax(counted_forward(target_params, x, c)); }},
      {"ft", 1, 1,
       [&](const Vec& x, std::int64_t& c) { return softmax(counted_forward(ft_oracle_params, x, c)); }},
      {"prt", 2, 2,
       [&](const Vec& x, std::int64_t& c) {
         return softmax(compose_logits(counted_forward(target_params, x, c),
                                       counted_forward(reward_params, x, c), 1.0));
       }},
      {"eft", 3, 3,
       [&](const Vec& x, std::int64_t& c) {
         return eft_distribution(counted_forward(target_params, x, c),
                                 counted_forward(src_pt_params, x, c),
                                 counted_forward(src_ft_params, x, c));
       }},
  };

  using Clock = std::chrono::steady_clock;
  CostReport report;
  report.repeats = repeats;
  report.num_inputs = static_cast<int>(inputs.size());

  volatile double sink = 0.0;  // keep the optimizer honest
  std::vector<std::int64_t> counts(methods.size(), 0);
  for (std::size_t m = 0; m < methods.size(); ++m) {  // warmup
    for (const Vec& x : inputs) sink = sink + methods[m].predict(x, counts[m])[0];
    counts[m] = 0;
  }

  // methods rotate in small chunks inside every round so clock drift and
  // frequency scaling hit all of them alike
  constexpr std::size_t kChunk = 128;
  std::vector<std::vector<double>> times(methods.size(),
                                         std::vector<double>(static_cast<std::size_t>(repeats), 0.0));
  for (int r = 0; r < repeats; ++r) {
    for (std::size_t start = 0; start < inputs.size(); start += kChunk) {
      const std::size_t stop = std::min(inputs.size(), start + kChunk);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        const auto t0 = Clock::now();
        for (std::size_t i = start; i < stop; ++i) {
          sink = sink + methods[m].predict(inputs[i], counts[m])[0];
        }
        const auto t1 = Clock::now();
        times[m][static_cast<std::size_t>(r)] += std::chrono::duration<double>(t1 - t0).count();
      }
    }
  }
  (void)sink;

  std::size_t prt_idx = 0;
  std::size_t eft_idx = 0;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodCost cost;
    cost.method = methods[m].name;
    cost.forwards_per_input = methods[m].forwards_per_input;
    cost.forward_passes = counts[m];
    const std::int64_t expected =
        static_cast<std::int64_t>(methods[m].forwards_per_input) * report.num_inputs * repeats;
    if (counts[m] != expected) {
      throw NumericError("benchmark: forward count mismatch for " + methods[m].name);
    }
    cost.seconds_median = median_of(times[m]);
    double mean = 0.0;
    for (double t : times[m]) mean += t;
    mean /= static_cast<double>(times[m].size());
    double var = 0.0;
    for (double t : times[m]) var += (t - mean) * (t - mean);
    cost.seconds_mean = mean;
    cost.seconds_std = std::sqrt(var / static_cast<double>(times[m].size()));
    cost.peak_live_params = methods[m].models * param_count(net);
    if (methods[m].name == "prt") prt_idx = m;
    if (methods[m].name == "eft") eft_idx = m;
    report.methods.push_back(std::move(cost));
  }
  // the ratio is taken per round before the median: common-mode drift
  // (scheduler, frequency scaling) cancels inside each round
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    const double eft_t = times[eft_idx][static_cast<std::size_t>(r)];
    if (eft_t > 0.0) ratios.push_back(times[prt_idx][static_cast<std::size_t>(r)] / eft_t);
  }
  report.prt_over_eft_ratio = ratios.empty() ? 0.0 : median_of(ratios);
  return report;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InvalidInputError("spearman: need two sequences of equal length >= 2");
  }
  auto ranks = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&v](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

std::vector<Vec> gaussian_inputs(int n, int dim, std::uint64_t seed, double scale) {
  CounterRng rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec x(static_cast<std::size_t>(dim));
    for (double& v : x) v = scale * rng.next_gaussian();
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace prt
