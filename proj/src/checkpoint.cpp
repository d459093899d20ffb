#include "prt/checkpoint.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prt/errors.hpp"

namespace prt {

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

const char* activation_name(Activation a) {
  return a == Activation::kTanh ? "tanh" : "relu";
}

Activation activation_from_name(const std::string& s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "relu") return Activation::kRelu;
  throw InvalidInputError("checkpoint: unknown activation '" + s + "'");
}

// JSON has no NaN; absent loss summaries are stored as null.
void append_number_or_null(std::string& out, double x) {
  if (std::isfinite(x)) {
    out += format17(x);
  } else {
    out += "null";
  }
}

double number_or_nan(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ckpt) {
  validate(ckpt.net);
  if (ckpt.params.size() != param_count(ckpt.net)) {
    throw InvalidInputError("checkpoint_to_json: params inconsistent with net");
  }
  std::string out;
  out.reserve(64 + ckpt.params.size() * 22);
  out += "{\n  \"format_version\": 1,\n  \"net\": {\"input_dim\": ";
  out += std::to_string(ckpt.net.input_dim);
  out += ", \"hidden_dims\": [";
  for (std::size_t i = 0; i < ckpt.net.hidden_dims.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(ckpt.net.hidden_dims[i]);
  }
  out += "], \"num_labels\": ";
  out += std::to_string(ckpt.net.num_labels);
  out += ", \"activation\": \"";
  out += activation_name(ckpt.net.activation);
  out += "\"},\n  \"params\": [";
  for (std::size_t i = 0; i < ckpt.params.size(); ++i) {
    if (i) out += ", ";
    out += format17(ckpt.params[i]);
  }
  out += "],\n  \"meta\": {\"seed\": ";
  out += std::to_string(ckpt.meta.seed);
  out += ", \"steps\": ";
  out += std::to_string(ckpt.meta.steps);
  out += ", \"lambda\": ";
  out += format17(ckpt.meta.lambda);
  out += ", \"alpha\": ";
  out += format17(ckpt.meta.alpha);
  out += ", \"loss_first\": ";
  append_number_or_null(out, ckpt.meta.loss_first);
  out += ", \"loss_last\": ";
  append_number_or_null(out, ckpt.meta.loss_last);
  out += ", \"loss_min\": ";
  append_number_or_null(out, ckpt.meta.loss_min);
  out += "}\n}\n";
  return out;
}

Checkpoint checkpoint_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("checkpoint: JSON parse error: ") + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw InvalidInputError("checkpoint: unsupported format_version");
    }
    Checkpoint ckpt;
    const auto& net = j.at("net");
    ckpt.net.input_dim = net.at("input_dim").get<int>();
    ckpt.net.hidden_dims = net.at("hidden_dims").get<std::vector<int>>();
    ckpt.net.num_labels = net.at("num_labels").get<int>();
    ckpt.net.activation = activation_from_name(net.at("activation").get<std::string>());
    validate(ckpt.net);
    ckpt.params = j.at("params").get<Vec>();
    if (ckpt.params.size() != param_count(ckpt.net)) {
      throw InvalidInputError("checkpoint: params inconsistent with net");
    }
    check_finite(ckpt.params, "checkpoint params");
    const auto& meta = j.at("meta");
    ckpt.meta.seed = meta.at("seed").get<std::uint64_t>();
    ckpt.meta.steps = meta.at("steps").get<std::int64_t>();
    ckpt.meta.lambda = meta.at("lambda").get<double>();
    ckpt.meta.alpha = meta.at("alpha").get<double>();
    ckpt.meta.loss_first = number_or_nan(meta.at("loss_first"));
    ckpt.meta.loss_last = number_or_nan(meta.at("loss_last"));
    ckpt.meta.loss_min = number_or_nan(meta.at("loss_min"));
    return ckpt;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("checkpoint: malformed document: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("save_checkpoint: cannot open " + path.string());
  f << checkpoint_to_json(ckpt);
  if (!f) throw InvalidInputError("save_checkpoint: write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInputError("load_checkpoint: cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace prt
