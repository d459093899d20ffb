#include "prt/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "prt/analysis.hpp"
#include "prt/checkpoint.hpp"
#include "prt/datagen.hpp"
#include "prt/errors.hpp"
#include "prt/train.hpp"

namespace prt::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing key '") + key + "'");
  return *it;
}

template <typename T>
T need_as(const json& j, const char* key) {
  try {
    return need(j, key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

std::uint64_t need_seed(const json& j) {
  // wall-clock seeding is deliberately unsupported; reproducibility requires
  // an explicit seed
  if (!j.contains("seed")) throw ConfigError("missing key 'seed' (seeds must be explicit)");
  return need_as<std::uint64_t>(j, "seed");
}

std::string read_file(const fs::path& path, const char* what) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(std::string(what) + " not readable: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path.string());
  f << bytes;
  if (!f) throw ConfigError("write failed: " + path.string());
}

/// Tracks input/output files of a run and writes run_manifest.json.
class RunManifest {
 public:
  RunManifest(std::string subcommand, const std::string& config_bytes)
      : subcommand_(std::move(subcommand)), config_hash_(fnv1a_hex(config_bytes)) {}

  void add_input(const fs::path& path) { inputs_[path.string()] = fnv1a_file_hex(path); }
  void add_output(const fs::path& path) { outputs_[path.string()] = fnv1a_file_hex(path); }

  void write(const fs::path& dir) const {
    ordered_json m;
    m["tool_version"] = kVersion;
    m["subcommand"] = subcommand_;
    m["config_hash"] = config_hash_;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    write_file(dir / "run_manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  std::string config_hash_;
  ordered_json inputs_ = ordered_json::object();
  ordered_json outputs_ = ordered_json::object();
};

fs::path resolve_out_dir(const json& cfg) {
  fs::path dir = need_as<std::string>(cfg, "out_dir");
  if (dir.is_relative()) {
    if (const char* root = std::getenv("PRT_OUTPUT_ROOT")) dir = fs::path(root) / dir;
  }
  fs::create_directories(dir);
  return dir;
}

Activation activation_from(const std::string& s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "relu") return Activation::kRelu;
  throw ConfigError("unknown activation '" + s + "'");
}

ClassifierNet net_from_json(const json& j, int input_dim, int num_labels) {
  ClassifierNet net;
  net.input_dim = j.contains("input_dim") ? need_as<int>(j, "input_dim") : input_dim;
  net.num_labels = j.contains("num_labels") ? need_as<int>(j, "num_labels") : num_labels;
  net.hidden_dims = need_as<std::vector<int>>(j, "hidden_dims");
  net.activation = activation_from(get_or<std::string>(j, "activation", "tanh"));
  try {
    validate(net);
  } catch (const InvalidInputError& e) {
    throw ConfigError(e.what());
  }
  return net;
}

LrSchedule schedule_from(const std::string& s) {
  if (s == "constant") return LrSchedule::kConstant;
  if (s == "cosine") return LrSchedule::kCosine;
  if (s == "linear-warmup") return LrSchedule::kLinearWarmup;
  throw ConfigError("unknown lr schedule '" + s + "'");
}

TrainConfig train_config_from(const json& j, std::uint64_t seed) {
  TrainConfig cfg;
  cfg.lr = get_or<double>(j, "lr", cfg.lr);
  cfg.batch_size = get_or<int>(j, "batch_size", cfg.batch_size);
  cfg.steps = get_or<int>(j, "steps", cfg.steps);
  cfg.lambda = get_or<double>(j, "lambda", cfg.lambda);
  cfg.alpha = get_or<double>(j, "alpha", cfg.alpha);
  cfg.schedule = schedule_from(get_or<std::string>(j, "schedule", "cosine"));
  cfg.warmup_frac = get_or<double>(j, "warmup_frac", cfg.warmup_frac);
  cfg.cache_base_log_probs = get_or<bool>(j, "cache_base_log_probs", cfg.cache_base_log_probs);
  cfg.seed = seed;
  try {
    validate(cfg);
  } catch (const InvalidInputError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

TaskSpec task_spec_from(const json& j) {
  TaskSpec spec;
  spec.input_dim = need_as<int>(j, "input_dim");
  spec.num_labels = need_as<int>(j, "num_labels");
  spec.clusters_per_label = need_as<int>(j, "clusters_per_label");
  spec.cluster_spread = need_as<double>(j, "cluster_spread");
  spec.label_noise = need_as<double>(j, "label_noise");
  const json& sizes = need(j, "sizes");
  spec.sizes.pretrain_small = need_as<int>(sizes, "pretrain_small");
  spec.sizes.pretrain_large = need_as<int>(sizes, "pretrain_large");
  spec.sizes.task_train = need_as<int>(sizes, "task_train");
  spec.sizes.task_test = need_as<int>(sizes, "task_test");
  const json& shift = need(j, "shift");
  spec.shift.rotation = need_as<double>(shift, "rotation");
  spec.shift.offset = need_as<double>(shift, "offset");
  try {
    validate(spec);
  } catch (const InvalidInputError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

Checkpoint load_ckpt(const json& cfg, const char* key, RunManifest& manifest) {
  const fs::path path = need_as<std::string>(cfg, key);
  if (!fs::exists(path)) throw ConfigError(std::string(key) + " file does not exist: " + path.string());
  manifest.add_input(path);
  return load_checkpoint(path);
}

Dataset load_data(const json& cfg, const char* key, RunManifest& manifest) {
  const fs::path path = need_as<std::string>(cfg, key);
  if (!fs::exists(path)) throw ConfigError(std::string(key) + " file does not exist: " + path.string());
  manifest.add_input(path);
  return load_dataset(path);
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_gen_data(const json& cfg, RunManifest& manifest) {
  const TaskSpec spec = task_spec_from(need(cfg, "task"));
  const std::uint64_t seed = need_seed(cfg);
  const fs::path out_dir = resolve_out_dir(cfg);
  const TaskBundle bundle = make_task(spec, seed);
  save_bundle(bundle, out_dir);
  for (const char* name : {"pretrain_small.csv", "pretrain_large.csv", "task_train.csv",
                           "task_test.csv", "manifest.json"}) {
    manifest.add_output(out_dir / name);
  }
  manifest.write(out_dir);
  std::cout << "gen-data: wrote bundle to " << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_pretrain(const json& cfg, RunManifest& manifest) {
  const fs::path data_dir = need_as<std::string>(cfg, "data_dir");
  if (!fs::exists(data_dir / "manifest.json")) {
    throw ConfigError("data_dir has no manifest.json: " + data_dir.string());
  }
  manifest.add_input(data_dir / "manifest.json");
  const TaskBundle bundle = load_bundle(data_dir);
  const std::uint64_t seed = need_seed(cfg);
  const TrainConfig tc = train_config_from(need(cfg, "train"), seed);
  const ClassifierNet source_net =
      net_from_json(need(cfg, "source_net"), bundle.spec.input_dim, bundle.spec.num_labels);
  const ClassifierNet target_net =
      net_from_json(need(cfg, "target_net"), bundle.spec.input_dim, bundle.spec.num_labels);
  const fs::path out_dir = resolve_out_dir(cfg);

  auto [source, target] = pretrain_pair(bundle, source_net, target_net, tc);
  save_checkpoint(source, out_dir / "source.ckpt.json");
  save_checkpoint(target, out_dir / "target.ckpt.json");
  manifest.add_output(out_dir / "source.ckpt.json");
  manifest.add_output(out_dir / "target.ckpt.json");
  manifest.write(out_dir);
  std::cout << "pretrain: source loss " << format17(source.meta.loss_last) << ", target loss "
            << format17(target.meta.loss_last) << "\n";
  return kExitOk;
}

int run_training(const json& cfg, RunManifest& manifest, bool prt_mode) {
  const std::uint64_t seed = need_seed(cfg);
  const TrainConfig tc = train_config_from(need(cfg, "train"), seed);
  const Dataset data = load_data(cfg, "data", manifest);
  const fs::path out_dir = resolve_out_dir(cfg);
  const std::string name = get_or<std::string>(cfg, "name", prt_mode ? "prt" : "ft");

  TrainResult result;
  if (prt_mode) {
    const Checkpoint base = load_ckpt(cfg, "base_checkpoint", manifest);
    const std::string init_mode = get_or<std::string>(cfg, "reward_init", "base");
    Checkpoint reward_init;
    if (init_mode == "base") {
      reward_init = base;
    } else if (init_mode == "random") {
      reward_init.net = base.net;
      reward_init.params = init_params(base.net, seed);
    } else {
      throw ConfigError("reward_init must be 'base' or 'random'");
    }
    result = train_prt(reward_init, base, data, tc);
  } else {
    const Checkpoint base = load_ckpt(cfg, "base_checkpoint", manifest);
    result = finetune(base, data, tc);
  }

  const fs::path ckpt_path = out_dir / (name + ".ckpt.json");
  save_checkpoint(result.checkpoint, ckpt_path);
  manifest.add_output(ckpt_path);
  const fs::path trace_path = out_dir / (name + "_trace.csv");
  write_trace_csv(result.trace, trace_path, prt_mode);
  manifest.add_output(trace_path);
  manifest.write(out_dir);
  std::cout << (prt_mode ? "train-prt" : "finetune") << ": final loss "
            << format17(result.checkpoint.meta.loss_last) << " -> " << ckpt_path.string() << "\n";
  return kExitOk;
}

int cmd_eval(const json& cfg, RunManifest& manifest) {
  const std::string method = need_as<std::string>(cfg, "method");
  const std::string tag = get_or<std::string>(cfg, "tag", "default");
  const Dataset data = load_data(cfg, "data", manifest);
  const fs::path out_dir = resolve_out_dir(cfg);
  const std::string name = get_or<std::string>(cfg, "name", method);

  // keep loaded checkpoints alive for the policy closures
  std::vector<Checkpoint> held;
  held.reserve(3);
  PolicyFn policy;
  if (method == "pretrained" || method == "ft") {
    held.push_back(load_ckpt(cfg, "model", manifest));
    policy = plain_policy(held[0].net, held[0].params);
  } else if (method == "prt") {
    held.push_back(load_ckpt(cfg, "base", manifest));
    held.push_back(load_ckpt(cfg, "reward", manifest));
    const double lambda = get_or<double>(cfg, "lambda", 1.0);
    if (lambda <= 0.0) throw ConfigError("lambda must be > 0");
    policy = prt_policy(held[0].net, held[0].params, held[1].net, held[1].params, lambda);
  } else if (method == "eft") {
    held.push_back(load_ckpt(cfg, "target", manifest));
    held.push_back(load_ckpt(cfg, "pt_source", manifest));
    held.push_back(load_ckpt(cfg, "ft_source", manifest));
    policy = eft_policy(held[0].net, held[0].params, held[1].net, held[1].params, held[2].net,
                        held[2].params);
  } else {
    throw ConfigError("method must be one of pretrained|ft|prt|eft");
  }

  const EvalResult res = eval_accuracy(policy, data);
  std::string csv = "tag,method,accuracy,mean_ce,n\n";
  csv += tag + ',' + method + ',' + format17(res.accuracy) + ',' + format17(res.mean_ce) + ',' +
         std::to_string(res.n) + '\n';
  const fs::path csv_path = out_dir / (name + "_eval.csv");
  write_file(csv_path, csv);
  manifest.add_output(csv_path);

  if (cfg.contains("per_example_jsonl")) {
    std::string jsonl;
    for (const Example& ex : data) {
      const Vec probs = policy(ex.x);
      std::size_t arg = 0;
      for (std::size_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[arg]) arg = i;
      }
      ordered_json rec;
      rec["label"] = ex.label;
      rec["pred"] = arg;
      rec["p_label"] = probs[static_cast<std::size_t>(ex.label)];
      jsonl += rec.dump() + "\n";
    }
    const fs::path jl = out_dir / need_as<std::string>(cfg, "per_example_jsonl");
    write_file(jl, jsonl);
    manifest.add_output(jl);
  }
  manifest.write(out_dir);
  std::cout << "eval: " << tag << "/" << method << " accuracy " << format17(res.accuracy)
            << " mean_ce " << format17(res.mean_ce) << "\n";
  return kExitOk;
}

int cmd_verify(const json& cfg, RunManifest& manifest) {
  const std::string check = need_as<std::string>(cfg, "check");
  const std::uint64_t seed = need_seed(cfg);
  const int num_inputs = need_as<int>(cfg, "num_inputs");
  if (num_inputs < 1) throw ConfigError("num_inputs must be >= 1");
  const double input_scale = get_or<double>(cfg, "input_scale", 1.0);
  const fs::path out_dir = resolve_out_dir(cfg);

  ordered_json report;
  report["check"] = check;
  bool ok = true;
  std::string failure;

  if (check == "prop1") {
    const Checkpoint ft = load_ckpt(cfg, "ft_checkpoint", manifest);
    const Checkpoint pt = load_ckpt(cfg, "pt_checkpoint", manifest);
    if (ft.net.input_dim != pt.net.input_dim) throw ConfigError("ft/pt input dims differ");
    const auto inputs = gaussian_inputs(num_inputs, ft.net.input_dim, seed, input_scale);
    const double max_dev = verify_prop1(ft, pt, inputs);
    report["max_total_variation"] = max_dev;
    report["tolerance"] = 1e-12;
    ok = max_dev < 1e-12;
    if (!ok) failure = "prop1 round-trip deviation " + format17(max_dev) + " >= 1e-12";
  } else if (check == "jensen") {
    const Checkpoint reward = load_ckpt(cfg, "reward_checkpoint", manifest);
    const Checkpoint pt = load_ckpt(cfg, "pt_checkpoint", manifest);
    const double lambda = get_or<double>(cfg, "lambda", 1.0);
    if (lambda <= 0.0) throw ConfigError("lambda must be > 0");
    if (reward.net.input_dim != pt.net.input_dim) throw ConfigError("reward/pt input dims differ");
    const auto inputs = gaussian_inputs(num_inputs, pt.net.input_dim, seed, input_scale);
    const double max_gap = verify_jensen(reward, pt, inputs, lambda);
    report["max_jensen_gap"] = max_gap;
    report["tolerance"] = 1e-10;
    ok = max_gap <= 1e-10;
    if (!ok) failure = "jensen gap " + format17(max_gap) + " > 1e-10";
  } else if (check == "kl-bound") {
    const Checkpoint pt = load_ckpt(cfg, "pt_checkpoint", manifest);
    const Checkpoint pt_tilde = load_ckpt(cfg, "pt_tilde_checkpoint", manifest);
    const Checkpoint reward = load_ckpt(cfg, "reward_checkpoint", manifest);
    if (pt.net.input_dim != pt_tilde.net.input_dim || pt.net.input_dim != reward.net.input_dim) {
      throw ConfigError("checkpoint input dims differ");
    }
    const auto inputs = gaussian_inputs(num_inputs, pt.net.input_dim, seed, input_scale);
    const BoundReport br = verify_kl_bound(pt, pt_tilde, reward, inputs);
    report["records"] = br.records.size();
    report["excluded_infinite_eps"] = br.excluded;
    report["full_chain_violations"] = br.violations;
    report["sub_a_violations"] = br.sub_a_violations;
    report["sub_b_violations"] = br.sub_b_violations;
    report["max_slack_ratio"] = br.max_slack_ratio;
    // the exit gate covers the chain inequality itself and the provable
    // Z-ratio sub-bound; sub_a counts are reported as data (see README)
    ok = br.violations == 0 && br.sub_b_violations == 0;
    if (!ok) {
      failure = "kl-bound: " + std::to_string(br.violations) + " chain violations, " +
                std::to_string(br.sub_b_violations) + " z-ratio violations";
    }
  } else {
    throw ConfigError("check must be one of prop1|kl-bound|jensen");
  }

  report["num_inputs"] = num_inputs;
  report["seed"] = seed;
  report["holds"] = ok;
  const fs::path report_path = out_dir / (check + "_report.json");
  write_file(report_path, report.dump(2) + "\n");
  manifest.add_output(report_path);
  manifest.write(out_dir);
  if (!ok) throw VerificationFailure(failure);
  std::cout << "verify " << check << ": ok (" << num_inputs << " inputs)\n";
  return kExitOk;
}

int cmd_benchmark(const json& cfg, RunManifest& manifest) {
  const ClassifierNet net = net_from_json(need(cfg, "net"), 0, 0);
  const std::uint64_t seed = need_seed(cfg);
  const int num_inputs = get_or<int>(cfg, "num_inputs", 256);
  const int repeats = get_or<int>(cfg, "repeats", 5);
  const fs::path out_dir = resolve_out_dir(cfg);

  const auto inputs = gaussian_inputs(num_inputs, net.input_dim, seed, 1.0);
  // five equal-size models: one per role
  const Vec target = init_params(net, seed + 10);
  const Vec ft_oracle = init_params(net, seed + 11);
  const Vec reward = init_params(net, seed + 12);
  const Vec src_pt = init_params(net, seed + 13);
  const Vec src_ft = init_params(net, seed + 14);

  CostReport cr;
  try {
    cr = benchmark(net, target, ft_oracle, reward, src_pt, src_ft, inputs, repeats);
  } catch (const InvalidInputError& e) {
    throw ConfigError(e.what());
  }

  ordered_json report;
  report["repeats"] = cr.repeats;
  report["num_inputs"] = cr.num_inputs;
  report["prt_over_eft_ratio"] = cr.prt_over_eft_ratio;
  ordered_json methods = ordered_json::array();
  for (const MethodCost& m : cr.methods) {
    methods.push_back({{"method", m.method},
                       {"forwards_per_input", m.forwards_per_input},
                       {"forward_passes", m.forward_passes},
                       {"seconds_median", m.seconds_median},
                       {"seconds_mean", m.seconds_mean},
                       {"seconds_std", m.seconds_std},
                       {"peak_live_params", m.peak_live_params}});
  }
  report["methods"] = methods;
  const fs::path report_path = out_dir / "benchmark.json";
  write_file(report_path, report.dump(2) + "\n");
  manifest.add_output(report_path);
  manifest.write(out_dir);
  std::cout << "benchmark: time(PRT)/time(EFT) = " << format17(cr.prt_over_eft_ratio) << "\n";
  return kExitOk;
}

int cmd_report(const json& cfg, RunManifest& manifest) {
  const auto csvs = need_as<std::vector<std::string>>(cfg, "eval_csvs");
  if (csvs.empty()) throw ConfigError("eval_csvs is empty");
  const fs::path out_dir = resolve_out_dir(cfg);

  // tag -> method -> (accuracy, mean_ce)
  std::map<std::string, std::map<std::string, std::pair<std::string, std::string>>> table;
  std::vector<std::string> tag_order;
  for (const std::string& c : csvs) {
    if (!fs::exists(c)) throw ConfigError("eval csv does not exist: " + c);
    manifest.add_input(c);
    std::istringstream in(read_file(c, "eval csv"));
    std::string line;
    if (!std::getline(in, line) || line != "tag,method,accuracy,mean_ce,n") {
      throw ConfigError("unexpected eval csv header in " + c);
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::size_t pos = 0;
      while (true) {
        const std::size_t comma = line.find(',', pos);
        fields.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (fields.size() != 5) throw ConfigError("malformed eval row in " + c);
      if (table.find(fields[0]) == table.end()) tag_order.push_back(fields[0]);
      table[fields[0]][fields[1]] = {fields[2], fields[3]};
    }
  }

  const std::vector<std::string> methods = {"pretrained", "eft", "prt", "ft"};
  std::string out = "tag";
  for (const std::string& m : methods) out += "," + m + "_acc";
  for (const std::string& m : methods) out += "," + m + "_ce";
  out += '\n';
  for (const std::string& tag : tag_order) {
    out += tag;
    for (const std::string& m : methods) {
      auto it = table[tag].find(m);
      out += ',';
      if (it != table[tag].end()) out += it->second.first;
    }
    for (const std::string& m : methods) {
      auto it = table[tag].find(m);
      out += ',';
      if (it != table[tag].end()) out += it->second.second;
    }
    out += '\n';
  }
  const std::string name = get_or<std::string>(cfg, "name", "report");
  const fs::path csv_path = out_dir / (name + ".csv");
  write_file(csv_path, out);
  manifest.add_output(csv_path);
  manifest.write(out_dir);

  std::cout << "report (accuracy per target):\n";
  for (const std::string& tag : tag_order) {
    std::cout << "  " << tag << ":";
    for (const std::string& m : methods) {
      auto it = table[tag].find(m);
      if (it != table[tag].end()) std::cout << "  " << m << "=" << it->second.first;
    }
    std::cout << "\n";
  }
  return kExitOk;
}

json apply_overrides(json cfg, const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos) throw ConfigError("override must look like key=value: " + ov);
    std::string key = ov.substr(0, eq);
    const std::string value = ov.substr(eq + 1);
    std::string pointer = "/";
    for (char c : key) pointer += (c == '.') ? '/' : c;
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::exception&) {
      parsed = value;  // plain string
    }
    cfg[json::json_pointer(pointer)] = parsed;
  }
  return cfg;
}

}  // namespace

int run(const std::string& subcommand, const std::string& config_path,
        const std::vector<std::string>& overrides) {
  try {
    std::string config_bytes;
    json cfg;
    try {
      config_bytes = read_file(config_path, "config");
      cfg = json::parse(config_bytes);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    cfg = apply_overrides(cfg, overrides);
    RunManifest manifest(subcommand, cfg.dump());

    if (subcommand == "gen-data") return cmd_gen_data(cfg, manifest);
    if (subcommand == "pretrain") return cmd_pretrain(cfg, manifest);
    if (subcommand == "finetune") return run_training(cfg, manifest, false);
    if (subcommand == "train-prt") return run_training(cfg, manifest, true);
    if (subcommand == "eval") return cmd_eval(cfg, manifest);
    if (subcommand == "verify") return cmd_verify(cfg, manifest);
    if (subcommand == "benchmark") return cmd_benchmark(cfg, manifest);
    if (subcommand == "report") return cmd_report(cfg, manifest);
    throw ConfigError("unknown subcommand '" + subcommand + "'");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidInputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace prt::cli
