#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "prt/checkpoint.hpp"
#include "prt/model.hpp"

namespace prt {

enum class LrSchedule { kConstant, kCosine, kLinearWarmup };

struct TrainConfig {
  double lr = 1e-3;
  int batch_size = 32;
  int steps = 2000;
  std::uint64_t seed = 0;
  double lambda = 1.0;  // reward scaling in the composed distribution
  double alpha = 0.0;   // EM regularizer coefficient; 0 disables
  LrSchedule schedule = LrSchedule::kCosine;
  double warmup_frac = 0.03;  // linear-warmup only
  // The base is frozen, so its log-probs per example may be precomputed once.
  // Off by default: recompute each batch.
  bool cache_base_log_probs = false;
};

void validate(const TrainConfig& cfg);

/// Learning rate at 0-based step t of cfg.steps total.
double lr_at(const TrainConfig& cfg, int step);

/// EM-regularized objective: batch_ce - alpha * batch_mean_entropy.
double em_objective(double batch_ce, double batch_mean_entropy, double alpha);

struct TraceRow {
  int step = 0;
  double ce = 0.0;
  double mean_reward_true = 0.0;
  double mean_reward_base_expect = 0.0;
  double mean_rho_entropy = 0.0;
  double lr = 0.0;
};

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<TraceRow> trace;  // one row per step
  // Largest E_{pi_pt}[r] - V(x) seen over every batch example of every step;
  // analytically <= 0, tracked for the Jensen check. 0 for finetune runs.
  double max_jensen_gap = 0.0;
};

/// Standard fine-tuning: minimize mean CE of softmax(f(x)) over data.
/// Deterministic given (inputs, cfg.seed). Reward columns of the trace are 0.
TrainResult finetune(const Checkpoint& pretrained, const Dataset& data, const TrainConfig& cfg);

/// Reward training: minimize mean CE of the composed distribution
/// softmax(log_softmax(f_base(x)) + r(x)/lambda), with the optional EM term
/// -alpha * mean H(softmax(r(x))) when cfg.alpha > 0. Base params are never
/// touched. Deterministic given seeds.
TrainResult train_prt(const Checkpoint& reward_init, const Checkpoint& frozen_base,
                      const Dataset& data, const TrainConfig& cfg);

/// CSV: step,ce,mean_reward_true,mean_reward_base_expect,mean_rho_entropy,lr
/// (PRT runs) or step,ce,lr (fine-tune runs).
void write_trace_csv(const std::vector<TraceRow>& trace, const std::filesystem::path& path,
                     bool prt_columns);

}  // namespace prt
