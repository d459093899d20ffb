#include "prt/train.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "prt/errors.hpp"
#include "prt/rng.hpp"

namespace prt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kShuffleStream = 0xB7E151628AED2A6Aull;  // frac(e)

void check_data(const Dataset& data, const ClassifierNet& net) {
  if (data.empty()) throw InvalidInputError("train: empty dataset");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].label < 0 || data[i].label >= net.num_labels) {
      throw InvalidInputError("train: label out of range at example " + std::to_string(i));
    }
    if (data[i].x.size() != static_cast<std::size_t>(net.input_dim)) {
      throw InvalidInputError("train: input length mismatch at example " + std::to_string(i));
    }
  }
}

struct LossSummaryTracker {
  double first = std::numeric_limits<double>::quiet_NaN();
  double last = std::numeric_limits<double>::quiet_NaN();
  double min = std::numeric_limits<double>::quiet_NaN();
  void record(double loss) {
    if (std::isnan(first)) {
      first = loss;
      min = loss;
    }
    last = loss;
    if (loss < min) min = loss;
  }
};

// Shared optimization loop. base == nullptr selects plain fine-tuning.
TrainResult train_loop(const Checkpoint& init, const Checkpoint* base, const Dataset& data,
                       const TrainConfig& cfg) {
  validate(cfg);
  validate(init.net);
  check_data(data, init.net);
  const bool is_prt = base != nullptr;
  if (is_prt) {
    validate(base->net);
    if (base->net.num_labels != init.net.num_labels) {
      throw InvalidInputError("train_prt: base and reward label counts differ");
    }
    if (base->net.input_dim != init.net.input_dim) {
      throw InvalidInputError("train_prt: base and reward input dims differ");
    }
  }

  LossSpec spec;
  if (!is_prt) {
    spec.kind = LossSpec::Kind::kFinetuneCe;
  } else {
    spec.kind = cfg.alpha > 0.0 ? LossSpec::Kind::kPrtCeEntropyReg : LossSpec::Kind::kPrtCe;
    spec.lambda = cfg.lambda;
    spec.alpha = cfg.alpha;
  }

  TrainResult result;
  result.checkpoint = init;
  result.trace.reserve(static_cast<std::size_t>(cfg.steps));
  Vec& params = result.checkpoint.params;
  AdamState adam = make_adam_state(params.size());

  // Base log-probs, either cached once (the base is frozen) or per batch.
  std::vector<Vec> base_lp_cache;
  if (is_prt && cfg.cache_base_log_probs) {
    base_lp_cache.reserve(data.size());
    for (const Example& ex : data) {
      base_lp_cache.push_back(log_softmax(forward(base->net, base->params, ex.x)));
    }
  }

  CounterRng shuffle_rng(cfg.seed, kShuffleStream);
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t pos = data.size();  // force a shuffle before the first batch

  LossSummaryTracker summary;
  int high_loss_streak = 0;
  std::vector<BatchItem> batch;
  std::vector<Vec> batch_lp;

  for (int step = 0; step < cfg.steps; ++step) {
    if (pos >= order.size()) {
      shuffle_rng.shuffle(order);
      pos = 0;
    }
    const std::size_t take = std::min<std::size_t>(cfg.batch_size, order.size() - pos);
    batch.clear();
    batch_lp.clear();
    if (is_prt && !cfg.cache_base_log_probs) batch_lp.reserve(take);
    for (std::size_t b = 0; b < take; ++b) {
      const int idx = order[pos + b];
      const Vec* lp = nullptr;
      if (is_prt) {
        if (cfg.cache_base_log_probs) {
          lp = &base_lp_cache[static_cast<std::size_t>(idx)];
        } else {
          batch_lp.push_back(log_softmax(forward(base->net, base->params, data[static_cast<std::size_t>(idx)].x)));
          lp = &batch_lp.back();
        }
      }
      batch.push_back(BatchItem{&data[static_cast<std::size_t>(idx)], lp});
    }
    pos += take;

    LossGrad lg;
    try {
      lg = loss_and_grad(init.net, params, batch, spec);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (training step " + std::to_string(step) + ")", step);
    }
    if (!std::isfinite(lg.loss)) {
      throw NumericError("train: non-finite loss at step " + std::to_string(step), step);
    }
    // the ln 2 cushion keeps already-converged runs (initial loss ~ 0, where
    // any batch noise exceeds 10x) from tripping the divergence guard
    if (!std::isnan(summary.first) &&
        lg.loss > 10.0 * std::fabs(summary.first) + 0.6931471805599453) {
      if (++high_loss_streak >= 100) {
        throw NumericError("train: loss exceeded 10x initial for 100 consecutive steps, at step " +
                               std::to_string(step),
                           step);
      }
    } else {
      high_loss_streak = 0;
    }
    summary.record(lg.loss);

    TraceRow row;
    row.step = step;
    row.lr = lr_at(cfg, step);
    if (lg.prt) {
      row.ce = lg.prt->mean_ce;
      row.mean_reward_true = lg.prt->mean_reward_true;
      row.mean_reward_base_expect = lg.prt->mean_reward_base_expect;
      row.mean_rho_entropy = lg.prt->mean_rho_entropy;
      if (lg.prt->max_jensen_gap > result.max_jensen_gap || step == 0) {
        result.max_jensen_gap = lg.prt->max_jensen_gap;
      }
    } else {
      row.ce = lg.loss;
    }
    result.trace.push_back(row);

    adam_step(adam, params, lg.grad, row.lr);
  }

  result.checkpoint.meta.seed = cfg.seed;
  result.checkpoint.meta.steps = cfg.steps;
  result.checkpoint.meta.lambda = cfg.lambda;
  result.checkpoint.meta.alpha = is_prt ? cfg.alpha : 0.0;
  result.checkpoint.meta.loss_first = summary.first;
  result.checkpoint.meta.loss_last = summary.last;
  result.checkpoint.meta.loss_min = summary.min;
  return result;
}

}  // namespace

void validate(const TrainConfig& cfg) {
  if (!(cfg.lr > 0.0)) throw InvalidInputError("TrainConfig: lr must be > 0");
  if (cfg.batch_size < 1) throw InvalidInputError("TrainConfig: batch_size must be >= 1");
  if (cfg.steps < 0) throw InvalidInputError("TrainConfig: steps must be >= 0");
  if (!(cfg.lambda > 0.0)) throw InvalidInputError("TrainConfig: lambda must be > 0");
  if (cfg.alpha < 0.0) throw InvalidInputError("TrainConfig: alpha must be >= 0");
  if (cfg.warmup_frac < 0.0 || cfg.warmup_frac >= 1.0) {
    throw InvalidInputError("TrainConfig: warmup_frac must be in [0, 1)");
  }
}

double lr_at(const TrainConfig& cfg, int step) {
  if (cfg.steps <= 0) return cfg.lr;
  const double t = static_cast<double>(step);
  const double total = static_cast<double>(cfg.steps);
  switch (cfg.schedule) {
    case LrSchedule::kConstant:
      return cfg.lr;
    case LrSchedule::kCosine:
      return cfg.lr * 0.5 * (1.0 + std::cos(kPi * t / total));
    case LrSchedule::kLinearWarmup: {
      const double warmup = std::max(1.0, std::floor(cfg.warmup_frac * total));
      if (t < warmup) return cfg.lr * (t + 1.0) / warmup;
      if (total <= warmup) return cfg.lr;
      return cfg.lr * (total - t) / (total - warmup);
    }
  }
  return cfg.lr;
}

double em_objective(double batch_ce, double batch_mean_entropy, double alpha) {
  if (alpha < 0.0) throw InvalidInputError("em_objective: alpha must be >= 0");
  return batch_ce - alpha * batch_mean_entropy;
}

TrainResult finetune(const Checkpoint& pretrained, const Dataset& data, const TrainConfig& cfg) {
  return train_loop(pretrained, nullptr, data, cfg);
}

TrainResult train_prt(const Checkpoint& reward_init, const Checkpoint& frozen_base,
                      const Dataset& data, const TrainConfig& cfg) {
  return train_loop(reward_init, &frozen_base, data, cfg);
}

void write_trace_csv(const std::vector<TraceRow>& trace, const std::filesystem::path& path,
                     bool prt_columns) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("write_trace_csv: cannot open " + path.string());
  if (prt_columns) {
    f << "step,ce,mean_reward_true,mean_reward_base_expect,mean_rho_entropy,lr\n";
    for (const TraceRow& r : trace) {
      f << r.step << ',' << format17(r.ce) << ',' << format17(r.mean_reward_true) << ','
        << format17(r.mean_reward_base_expect) << ',' << format17(r.mean_rho_entropy) << ','
        << format17(r.lr) << '\n';
    }
  } else {
    f << "step,ce,lr\n";
    for (const TraceRow& r : trace) {
      f << r.step << ',' << format17(r.ce) << ',' << format17(r.lr) << '\n';
    }
  }
}

}  // namespace prt
