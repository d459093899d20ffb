#include "prt/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "prt/errors.hpp"
#include "prt/rng.hpp"

namespace prt {

namespace {

// RNG stream ids, one per independent generation concern
constexpr std::uint64_t kCentersStream = 100;
constexpr std::uint64_t kSplitStreamBase = 200;  // + split index

struct GroundTruth {
  // centers[c] belongs to label c / clusters_per_label
  std::vector<Vec> centers;
  int clusters_per_label = 1;

  int label_of(std::size_t center_idx) const {
    return static_cast<int>(center_idx) / clusters_per_label;
  }
};

GroundTruth make_centers(const TaskSpec& spec, std::uint64_t seed) {
  GroundTruth gt;
  gt.clusters_per_label = spec.clusters_per_label;
  CounterRng rng(seed, kCentersStream);
  const int n_centers = spec.num_labels * spec.clusters_per_label;
  gt.centers.reserve(static_cast<std::size_t>(n_centers));
  for (int c = 0; c < n_centers; ++c) {
    Vec center(static_cast<std::size_t>(spec.input_dim));
    for (double& v : center) v = rng.next_gaussian();
    gt.centers.push_back(std::move(center));
  }
  return gt;
}

GroundTruth shifted(const GroundTruth& gt, const ShiftSpec& shift) {
  GroundTruth out = gt;
  const double c = std::cos(shift.rotation);
  const double s = std::sin(shift.rotation);
  for (Vec& center : out.centers) {
    if (center.size() >= 2 && shift.rotation != 0.0) {
      const double x0 = center[0];
      const double x1 = center[1];
      center[0] = c * x0 - s * x1;
      center[1] = s * x0 + c * x1;
    }
    for (double& v : center) v += shift.offset;
  }
  return out;
}

int nearest_center_label(const GroundTruth& gt, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t c = 0; c < gt.centers.size(); ++c) {
    double d = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double diff = x[j] - gt.centers[c][j];
      d += diff * diff;
    }
    if (d < best) {
      best = d;
      best_idx = c;
    }
  }
  return gt.label_of(best_idx);
}

// Balanced-by-construction sampling: a shuffled round-robin label sequence
// picks the generating cluster, the final label comes from the nearest
// ground-truth center, then noise flips it to a uniform other label.
Dataset make_split(const TaskSpec& spec, const GroundTruth& gt, int n, double noise,
                   std::uint64_t seed, std::uint64_t split_index) {
  CounterRng rng(seed, kSplitStreamBase + split_index);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i % spec.num_labels;
  rng.shuffle(labels);

  Dataset data;
  data.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int gen_label = labels[static_cast<std::size_t>(i)];
    const int cluster = gen_label * spec.clusters_per_label +
                        static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.clusters_per_label)));
    Example ex;
    ex.x.resize(static_cast<std::size_t>(spec.input_dim));
    for (std::size_t j = 0; j < ex.x.size(); ++j) {
      ex.x[j] = gt.centers[static_cast<std::size_t>(cluster)][j] + spec.cluster_spread * rng.next_gaussian();
    }
    ex.label = nearest_center_label(gt, ex.x);
    if (noise > 0.0 && rng.next_double() < noise) {
      const int other = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.num_labels - 1)));
      ex.label = other >= ex.label ? other + 1 : other;
    }
    data.push_back(std::move(ex));
  }
  return data;
}

}  // namespace

void validate(const TaskSpec& spec) {
  if (spec.input_dim < 1) throw InvalidInputError("TaskSpec: input_dim must be >= 1");
  if (spec.num_labels < 2) throw InvalidInputError("TaskSpec: num_labels must be >= 2");
  if (spec.clusters_per_label < 1) throw InvalidInputError("TaskSpec: clusters_per_label must be >= 1");
  if (!(spec.cluster_spread > 0.0)) throw InvalidInputError("TaskSpec: cluster_spread must be > 0");
  if (spec.label_noise < 0.0 || spec.label_noise >= 1.0) {
    throw InvalidInputError("TaskSpec: label_noise must be in [0, 1)");
  }
  if (spec.sizes.pretrain_small < 1 || spec.sizes.pretrain_large < 1 ||
      spec.sizes.task_train < 1 || spec.sizes.task_test < 1) {
    throw InvalidInputError("TaskSpec: all corpus sizes must be >= 1");
  }
  if (spec.shift.rotation != 0.0 && spec.input_dim < 2) {
    throw InvalidInputError("TaskSpec: rotation shift needs input_dim >= 2");
  }
}

TaskBundle make_task(const TaskSpec& spec, std::uint64_t seed) {
  validate(spec);
  TaskBundle bundle;
  bundle.spec = spec;
  bundle.seed = seed;
  const GroundTruth base = make_centers(spec, seed);
  const GroundTruth task = shifted(base, spec.shift);
  bundle.pretrain_small = make_split(spec, base, spec.sizes.pretrain_small, spec.label_noise, seed, 0);
  bundle.pretrain_large = make_split(spec, base, spec.sizes.pretrain_large, spec.label_noise / 2.0, seed, 1);
  bundle.task_train = make_split(spec, task, spec.sizes.task_train, spec.label_noise, seed, 2);
  bundle.task_test = make_split(spec, task, spec.sizes.task_test, 0.0, seed, 3);
  return bundle;
}

std::pair<Checkpoint, Checkpoint> pretrain_pair(const TaskBundle& bundle,
                                                const ClassifierNet& source_net,
                                                const ClassifierNet& target_net,
                                                const TrainConfig& cfg) {
  validate(source_net);
  validate(target_net);
  if (source_net.num_labels != target_net.num_labels) {
    throw InvalidInputError("pretrain_pair: nets must share num_labels");
  }

  Checkpoint source_init;
  source_init.net = source_net;
  source_init.params = init_params(source_net, cfg.seed);
  source_init.meta.seed = cfg.seed;

  TrainConfig target_cfg = cfg;
  target_cfg.seed = cfg.seed + 1;
  Checkpoint target_init;
  target_init.net = target_net;
  target_init.params = init_params(target_net, target_cfg.seed);
  target_init.meta.seed = target_cfg.seed;

  Checkpoint source = finetune(source_init, bundle.pretrain_small, cfg).checkpoint;
  Checkpoint target = finetune(target_init, bundle.pretrain_large, target_cfg).checkpoint;
  return {std::move(source), std::move(target)};
}

std::string dataset_to_csv(const Dataset& data) {
  std::string out;
  for (const Example& ex : data) {
    out += std::to_string(ex.label);
    for (double v : ex.x) {
      out += ',';
      out += format17(v);
    }
    out += '\n';
  }
  return out;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("save_dataset: cannot open " + path.string());
  f << dataset_to_csv(data);
  if (!f) throw InvalidInputError("save_dataset: write failed for " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("load_dataset: cannot open " + path.string());
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    Example ex;
    std::size_t pos = 0;
    std::size_t comma = line.find(',');
    try {
      std::size_t parsed = 0;
      const std::string label_field = line.substr(0, comma);
      ex.label = std::stoi(label_field, &parsed);
      if (parsed != label_field.size()) throw std::invalid_argument("label");
      while (comma != std::string::npos) {
        pos = comma + 1;
        comma = line.find(',', pos);
        const std::string field = line.substr(pos, comma == std::string::npos ? comma : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0') throw std::invalid_argument("coordinate");
        ex.x.push_back(v);
      }
    } catch (const std::exception&) {
      throw InvalidInputError("load_dataset: malformed line " + std::to_string(line_no) + " in " +
                              path.string());
    }
    if (ex.x.empty()) {
      throw InvalidInputError("load_dataset: no coordinates on line " + std::to_string(line_no));
    }
    data.push_back(std::move(ex));
  }
  return data;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string fnv1a_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string fnv1a_file_hex(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("fnv1a_file_hex: cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return fnv1a_hex(ss.str());
}

namespace {

nlohmann::json spec_to_json(const TaskSpec& spec) {
  return nlohmann::json{
      {"input_dim", spec.input_dim},
      {"num_labels", spec.num_labels},
      {"clusters_per_label", spec.clusters_per_label},
      {"cluster_spread", spec.cluster_spread},
      {"label_noise", spec.label_noise},
      {"sizes",
       {{"pretrain_small", spec.sizes.pretrain_small},
        {"pretrain_large", spec.sizes.pretrain_large},
        {"task_train", spec.sizes.task_train},
        {"task_test", spec.sizes.task_test}}},
      {"shift", {{"rotation", spec.shift.rotation}, {"offset", spec.shift.offset}}},
  };
}

TaskSpec spec_from_json(const nlohmann::json& j) {
  TaskSpec spec;
  spec.input_dim = j.at("input_dim").get<int>();
  spec.num_labels = j.at("num_labels").get<int>();
  spec.clusters_per_label = j.at("clusters_per_label").get<int>();
  spec.cluster_spread = j.at("cluster_spread").get<double>();
  spec.label_noise = j.at("label_noise").get<double>();
  const auto& sizes = j.at("sizes");
  spec.sizes.pretrain_small = sizes.at("pretrain_small").get<int>();
  spec.sizes.pretrain_large = sizes.at("pretrain_large").get<int>();
  spec.sizes.task_train = sizes.at("task_train").get<int>();
  spec.sizes.task_test = sizes.at("task_test").get<int>();
  const auto& shift = j.at("shift");
  spec.shift.rotation = shift.at("rotation").get<double>();
  spec.shift.offset = shift.at("offset").get<double>();
  return spec;
}

constexpr const char* kSplitNames[4] = {"pretrain_small", "pretrain_large", "task_train", "task_test"};

}  // namespace

void save_bundle(const TaskBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const Dataset* splits[4] = {&bundle.pretrain_small, &bundle.pretrain_large, &bundle.task_train,
                              &bundle.task_test};
  nlohmann::ordered_json manifest;
  manifest["seed"] = bundle.seed;
  manifest["spec"] = spec_to_json(bundle.spec);
  nlohmann::ordered_json sizes, hashes;
  for (int s = 0; s < 4; ++s) {
    const std::string csv = dataset_to_csv(*splits[s]);
    const auto path = dir / (std::string(kSplitNames[s]) + ".csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInputError("save_bundle: cannot open " + path.string());
    f << csv;
    sizes[kSplitNames[s]] = splits[s]->size();
    hashes[kSplitNames[s]] = fnv1a_hex(csv);
  }
  manifest["sizes"] = sizes;
  manifest["content_hashes"] = hashes;
  std::ofstream mf(dir / "manifest.json", std::ios::binary);
  if (!mf) throw InvalidInputError("save_bundle: cannot open manifest.json");
  mf << manifest.dump(2) << '\n';
}

TaskBundle load_bundle(const std::filesystem::path& dir) {
  std::ifstream mf(dir / "manifest.json", std::ios::binary);
  if (!mf) throw InvalidInputError("load_bundle: cannot open " + (dir / "manifest.json").string());
  nlohmann::json manifest;
  try {
    mf >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("load_bundle: manifest parse error: ") + e.what());
  }
  TaskBundle bundle;
  try {
    bundle.seed = manifest.at("seed").get<std::uint64_t>();
    bundle.spec = spec_from_json(manifest.at("spec"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("load_bundle: malformed manifest: ") + e.what());
  }
  Dataset* splits[4] = {&bundle.pretrain_small, &bundle.pretrain_large, &bundle.task_train,
                        &bundle.task_test};
  for (int s = 0; s < 4; ++s) {
    *splits[s] = load_dataset(dir / (std::string(kSplitNames[s]) + ".csv"));
  }
  return bundle;
}

}  // namespace prt
