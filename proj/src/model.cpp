#include "prt/model.hpp"

#include <cmath>
#include <string>

#include "prt/errors.hpp"
#include "prt/rng.hpp"

namespace prt {

namespace {

std::vector<int> layer_dims(const ClassifierNet& net) {
  std::vector<int> dims;
  dims.reserve(net.hidden_dims.size() + 2);
  dims.push_back(net.input_dim);
  for (int h : net.hidden_dims) dims.push_back(h);
  dims.push_back(net.num_labels);
  return dims;
}

double activate(double z, Activation a) {
  return a == Activation::kTanh ? std::tanh(z) : (z > 0.0 ? z : 0.0);
}

double activate_deriv(double z, Activation a) {
  if (a == Activation::kTanh) {
    const double t = std::tanh(z);
    return 1.0 - t * t;
  }
  return z > 0.0 ? 1.0 : 0.0;
}

}  // namespace

bool operator==(const ClassifierNet& a, const ClassifierNet& b) {
  return a.input_dim == b.input_dim && a.hidden_dims == b.hidden_dims &&
         a.num_labels == b.num_labels && a.activation == b.activation;
}

void validate(const ClassifierNet& net) {
  if (net.input_dim < 1) throw InvalidInputError("ClassifierNet: input_dim must be >= 1");
  for (int h : net.hidden_dims) {
    if (h < 1) throw InvalidInputError("ClassifierNet: hidden dims must be >= 1");
  }
  if (net.num_labels < 2) throw InvalidInputError("ClassifierNet: num_labels must be >= 2");
}

std::size_t param_count(const ClassifierNet& net) {
  validate(net);
  const auto dims = layer_dims(net);
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    n += static_cast<std::size_t>(dims[l + 1]) * static_cast<std::size_t>(dims[l]);  // weights
    n += static_cast<std::size_t>(dims[l + 1]);                                      // biases
  }
  return n;
}

Vec init_params(const ClassifierNet& net, std::uint64_t seed) {
  const auto dims = layer_dims(net);
  Vec params(param_count(net));
  CounterRng rng(seed);
  std::size_t k = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(dims[l]));
    const std::size_t n_w = static_cast<std::size_t>(dims[l + 1]) * static_cast<std::size_t>(dims[l]);
    for (std::size_t i = 0; i < n_w; ++i) params[k++] = scale * rng.next_gaussian();
    k += static_cast<std::size_t>(dims[l + 1]);  // biases stay zero
  }
  return params;
}

Vec forward(const ClassifierNet& net, const Vec& params, const Vec& x) {
  validate(net);
  if (x.size() != static_cast<std::size_t>(net.input_dim)) {
    throw InvalidInputError("forward: input length " + std::to_string(x.size()) +
                            " != input_dim " + std::to_string(net.input_dim));
  }
  if (params.size() != param_count(net)) {
    throw InvalidInputError("forward: parameter vector length mismatch");
  }
  const auto dims = layer_dims(net);
  Vec a = x;
  std::size_t k = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int in = dims[l];
    const int out = dims[l + 1];
    Vec z(static_cast<std::size_t>(out));
    const double* w = params.data() + k;
    const double* b = params.data() + k + static_cast<std::size_t>(out) * in;
    for (int i = 0; i < out; ++i) {
      double s = b[i];
      const double* row = w + static_cast<std::size_t>(i) * in;
      for (int j = 0; j < in; ++j) s += row[j] * a[static_cast<std::size_t>(j)];
      z[static_cast<std::size_t>(i)] = s;
    }
    k += static_cast<std::size_t>(out) * in + out;
    const bool last = (l + 2 == dims.size());
    if (last) return z;
    for (double& v : z) v = activate(v, net.activation);
    a = std::move(z);
  }
  return a;  // unreachable: the loop always returns on the last layer
}

LossGrad loss_and_grad(const ClassifierNet& net, const Vec& params,
                       std::span<const BatchItem> batch, const LossSpec& spec) {
  validate(net);
  if (batch.empty()) throw InvalidInputError("loss_and_grad: empty batch");
  if (params.size() != param_count(net)) {
    throw InvalidInputError("loss_and_grad: parameter vector length mismatch");
  }
  const bool is_prt = spec.kind != LossSpec::Kind::kFinetuneCe;
  const bool with_em = spec.kind == LossSpec::Kind::kPrtCeEntropyReg;
  if (is_prt && spec.lambda <= 0.0) throw InvalidInputError("loss_and_grad: lambda must be > 0");
  if (with_em && spec.alpha < 0.0) throw InvalidInputError("loss_and_grad: alpha must be >= 0");

  const auto dims = layer_dims(net);
  const std::size_t n_layers = dims.size() - 1;
  const int L = net.num_labels;
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  std::vector<std::size_t> layer_offset(n_layers, 0);
  for (std::size_t l = 1; l < n_layers; ++l) {
    layer_offset[l] = layer_offset[l - 1] +
                      static_cast<std::size_t>(dims[l]) * dims[l - 1] + dims[l];
  }

  LossGrad out;
  out.grad.assign(params.size(), 0.0);
  PrtBatchStats stats;
  double total = 0.0;

  // per-example workspace, reused
  std::vector<Vec> pre(n_layers);   // pre-activations z_l
  std::vector<Vec> act(n_layers + 1);  // act[0] = x, act[l+1] = activation(z_l) (logits for last)

  for (std::size_t bi = 0; bi < batch.size(); ++bi) {
    const BatchItem& item = batch[bi];
    const Example& ex = *item.example;
    if (ex.label < 0 || ex.label >= L) {
      throw InvalidInputError("loss_and_grad: label out of range at batch index " + std::to_string(bi));
    }
    if (ex.x.size() != static_cast<std::size_t>(net.input_dim)) {
      throw InvalidInputError("loss_and_grad: input length mismatch at batch index " + std::to_string(bi));
    }
    if (is_prt) {
      if (item.base_log_probs == nullptr) {
        throw InvalidInputError("loss_and_grad: PRT loss needs base log-probs at batch index " +
                                std::to_string(bi));
      }
      if (item.base_log_probs->size() != static_cast<std::size_t>(L)) {
        throw InvalidInputError("loss_and_grad: base log-prob length mismatch at batch index " +
                                std::to_string(bi));
      }
    }

    // forward, keeping intermediates
    act[0] = ex.x;
    std::size_t k = 0;
    for (std::size_t l = 0; l < n_layers; ++l) {
      const int in = dims[l];
      const int outd = dims[l + 1];
      pre[l].assign(static_cast<std::size_t>(outd), 0.0);
      const double* w = params.data() + k;
      const double* b = params.data() + k + static_cast<std::size_t>(outd) * in;
      for (int i = 0; i < outd; ++i) {
        double s = b[i];
        const double* row = w + static_cast<std::size_t>(i) * in;
        for (int j = 0; j < in; ++j) s += row[j] * act[l][static_cast<std::size_t>(j)];
        pre[l][static_cast<std::size_t>(i)] = s;
      }
      k += static_cast<std::size_t>(outd) * in + outd;
      if (l + 1 == n_layers) {
        act[l + 1] = pre[l];  // output layer is linear
      } else {
        act[l + 1].assign(static_cast<std::size_t>(outd), 0.0);
        for (int i = 0; i < outd; ++i) {
          act[l + 1][static_cast<std::size_t>(i)] = activate(pre[l][static_cast<std::size_t>(i)], net.activation);
        }
      }
    }
    const Vec& logits = act[n_layers];
    for (double v : logits) {
      if (!std::isfinite(v)) {
        throw NumericError("loss_and_grad: non-finite logits", static_cast<std::ptrdiff_t>(bi));
      }
    }

    // loss and d(loss)/d(logits) for this example
    double ex_loss = 0.0;
    Vec dlogits(static_cast<std::size_t>(L), 0.0);
    if (!is_prt) {
      const Vec lp = log_softmax(logits);
      ex_loss = -lp[static_cast<std::size_t>(ex.label)];
      for (int i = 0; i < L; ++i) dlogits[static_cast<std::size_t>(i)] = std::exp(lp[static_cast<std::size_t>(i)]);
      dlogits[static_cast<std::size_t>(ex.label)] -= 1.0;
    } else {
      const Vec& base_lp = *item.base_log_probs;
      Vec composed(static_cast<std::size_t>(L));
      for (int i = 0; i < L; ++i) {
        composed[static_cast<std::size_t>(i)] = base_lp[static_cast<std::size_t>(i)] + logits[static_cast<std::size_t>(i)] / spec.lambda;
      }
      const Vec lp = log_softmax(composed);
      const double ce = -lp[static_cast<std::size_t>(ex.label)];
      ex_loss = ce;
      for (int i = 0; i < L; ++i) {
        dlogits[static_cast<std::size_t>(i)] = std::exp(lp[static_cast<std::size_t>(i)]) / spec.lambda;
      }
      dlogits[static_cast<std::size_t>(ex.label)] -= 1.0 / spec.lambda;

      // reward-side statistics; the reward vector is the raw logits
      double expect_r = 0.0;
      for (int i = 0; i < L; ++i) {
        expect_r += std::exp(base_lp[static_cast<std::size_t>(i)]) * logits[static_cast<std::size_t>(i)];
      }
      const double partition_v = spec.lambda * logsumexp(composed);
      const double jensen_gap = expect_r - partition_v;
      stats.mean_ce += ce * inv_n;
      stats.mean_reward_true += logits[static_cast<std::size_t>(ex.label)] * inv_n;
      stats.mean_reward_base_expect += expect_r * inv_n;
      if (bi == 0 || jensen_gap > stats.max_jensen_gap) stats.max_jensen_gap = jensen_gap;

      const Vec rho_lp = log_softmax(logits);
      double h = 0.0;
      for (int i = 0; i < L; ++i) h -= std::exp(rho_lp[static_cast<std::size_t>(i)]) * rho_lp[static_cast<std::size_t>(i)];
      stats.mean_rho_entropy += h * inv_n;
      if (with_em) {
        ex_loss -= spec.alpha * h;
        // d(-alpha H)/d r_j = alpha * rho_j * (log rho_j + H)
        for (int i = 0; i < L; ++i) {
          const double rho = std::exp(rho_lp[static_cast<std::size_t>(i)]);
          dlogits[static_cast<std::size_t>(i)] += spec.alpha * rho * (rho_lp[static_cast<std::size_t>(i)] + h);
        }
      }
    }
    if (!std::isfinite(ex_loss)) {
      throw NumericError("loss_and_grad: non-finite loss", static_cast<std::ptrdiff_t>(bi));
    }
    total += ex_loss * inv_n;

    // backprop; delta = d(mean loss)/d(pre-activation of current layer)
    Vec delta = dlogits;
    for (double& d : delta) d *= inv_n;
    for (std::size_t l = n_layers; l-- > 0;) {
      const int in = dims[l];
      const int outd = dims[l + 1];
      const std::size_t base = layer_offset[l];
      double* gw = out.grad.data() + base;
      double* gb = out.grad.data() + base + static_cast<std::size_t>(outd) * in;
      for (int i = 0; i < outd; ++i) {
        const double di = delta[static_cast<std::size_t>(i)];
        double* grow = gw + static_cast<std::size_t>(i) * in;
        for (int j = 0; j < in; ++j) grow[j] += di * act[l][static_cast<std::size_t>(j)];
        gb[i] += di;
      }
      if (l == 0) break;
      const double* w = params.data() + base;
      Vec prev(static_cast<std::size_t>(in), 0.0);
      for (int j = 0; j < in; ++j) {
        double s = 0.0;
        for (int i = 0; i < outd; ++i) s += w[static_cast<std::size_t>(i) * in + j] * delta[static_cast<std::size_t>(i)];
        prev[static_cast<std::size_t>(j)] = s * activate_deriv(pre[l - 1][static_cast<std::size_t>(j)], net.activation);
      }
      delta = std::move(prev);
    }
  }

  out.loss = total;
  if (is_prt) out.prt = stats;
  return out;
}

AdamState make_adam_state(std::size_t n) {
  AdamState s;
  s.m.assign(n, 0.0);
  s.v.assign(n, 0.0);
  return s;
}

void adam_step(AdamState& state, Vec& params, const Vec& grad, double lr) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  if (state.m.size() != params.size() || grad.size() != params.size()) {
    throw InvalidInputError("adam_step: size mismatch");
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = kBeta1 * state.m[i] + (1.0 - kBeta1) * grad[i];
    state.v[i] = kBeta2 * state.v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + kEps);
  }
}

}  // namespace prt
