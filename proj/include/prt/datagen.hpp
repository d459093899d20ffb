#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

#include "prt/checkpoint.hpp"
#include "prt/model.hpp"
#include "prt/train.hpp"

namespace prt {

/// How the task distribution differs from the pretraining distribution:
/// cluster centers are rotated by `rotation` radians in the (0,1) coordinate
/// plane and then offset by `offset` on every coordinate.
struct ShiftSpec {
  double rotation = 0.0;
  double offset = 0.0;
};

struct CorpusSizes {
  int pretrain_small = 0;
  int pretrain_large = 0;
  int task_train = 0;
  int task_test = 0;
};

struct TaskSpec {
  int input_dim = 0;
  int num_labels = 0;
  int clusters_per_label = 1;
  double cluster_spread = 0.0;
  double label_noise = 0.0;  // in [0, 1)
  CorpusSizes sizes;
  ShiftSpec shift;
};

void validate(const TaskSpec& spec);

/// Synthetic transfer scenario: Gaussian-mixture inputs, labels by nearest
/// ground-truth cluster with noise, byte-reproducible from (spec, seed).
/// pretrain_large has more samples and half the label noise of
/// pretrain_small; the task splits come from the shifted distribution.
struct TaskBundle {
  TaskSpec spec;
  std::uint64_t seed = 0;
  Dataset pretrain_small;
  Dataset pretrain_large;
  Dataset task_train;
  Dataset task_test;
};

TaskBundle make_task(const TaskSpec& spec, std::uint64_t seed);

/// source = source_net trained on pretrain_small with cfg.seed;
/// target = target_net trained on pretrain_large with cfg.seed + 1.
std::pair<Checkpoint, Checkpoint> pretrain_pair(const TaskBundle& bundle,
                                                const ClassifierNet& source_net,
                                                const ClassifierNet& target_net,
                                                const TrainConfig& cfg);

/// One record per line: label,x_1,...,x_d with %.17g coordinates.
std::string dataset_to_csv(const Dataset& data);
void save_dataset(const Dataset& data, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

/// FNV-1a 64-bit content hash, as fixed-width lowercase hex.
std::uint64_t fnv1a(const std::string& bytes);
std::string fnv1a_hex(const std::string& bytes);
std::string fnv1a_file_hex(const std::filesystem::path& path);

/// Writes the four split CSVs plus manifest.json (sizes, spec, seed, content
/// hashes) into dir.
void save_bundle(const TaskBundle& bundle, const std::filesystem::path& dir);
TaskBundle load_bundle(const std::filesystem::path& dir);

}  // namespace prt
