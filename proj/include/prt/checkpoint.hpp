#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>

#include "prt/model.hpp"

namespace prt {

struct CheckpointMeta {
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  double lambda = 1.0;
  double alpha = 0.0;
  // loss trace summary; NaN when no steps were taken
  double loss_first = std::numeric_limits<double>::quiet_NaN();
  double loss_last = std::numeric_limits<double>::quiet_NaN();
  double loss_min = std::numeric_limits<double>::quiet_NaN();
};

struct Checkpoint {
  ClassifierNet net;
  Vec params;
  CheckpointMeta meta;
};

/// Canonical JSON bytes: fixed key order, numbers printed with %.17g so the
/// serialize -> deserialize -> serialize round trip is byte-identical.
std::string checkpoint_to_json(const Checkpoint& ckpt);

Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// %.17g formatting used by every artifact writer in this project.
std::string format17(double x);

}  // namespace prt
