#include "prt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prt/errors.hpp"

namespace prt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_length(const Vec& p, const Vec& q, const char* what) {
  if (p.size() != q.size()) {
    throw InvalidInputError(std::string(what) + ": length mismatch (" +
                            std::to_string(p.size()) + " vs " + std::to_string(q.size()) + ")");
  }
}
}  // namespace

void check_finite(const Vec& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidInputError(std::string(what) + ": non-finite entry at index " + std::to_string(i));
    }
  }
}

double logsumexp(const Vec& v) {
  if (v.empty()) throw InvalidInputError("logsumexp: empty vector");
  check_finite(v, "logsumexp");
  const double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

Vec log_softmax(const Vec& v) {
  if (v.empty()) throw InvalidInputError("log_softmax: empty vector");
  check_finite(v, "log_softmax");
  // subtract the max before the residual log-sum: (v_i - m) is exact, so no
  // cancellation at large magnitudes
  const double m = *std::max_element(v.begin(), v.end());
  Vec out(v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] - m;
    s += std::exp(out[i]);
  }
  const double log_s = std::log(s);
  for (double& x : out) x -= log_s;
  return out;
}

Vec softmax(const Vec& v) {
  Vec out = log_softmax(v);
  for (double& x : out) x = std::exp(x);
  return out;
}

double kl_divergence(const Vec& p, const Vec& q) {
  check_same_length(p, q, "kl_divergence");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    s += p[i] * std::log(p[i] / q[i]);
  }
  // the float sum can dip a few ulp below zero when p ~ q
  return std::max(s, 0.0);
}

double entropy(const Vec& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double cross_entropy(const Vec& p, std::size_t label, bool infinite_on_zero) {
  if (label >= p.size()) {
    throw InvalidInputError("cross_entropy: label " + std::to_string(label) +
                            " out of range for length " + std::to_string(p.size()));
  }
  if (p[label] == 0.0) {
    if (infinite_on_zero) return kInf;
    throw NumericError("cross_entropy: zero probability at label", static_cast<std::ptrdiff_t>(label));
  }
  return -std::log(p[label]);
}

double total_variation(const Vec& p, const Vec& q) {
  check_same_length(p, q, "total_variation");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return s;
}

bool is_prob_vector(const Vec& p, double tol) {
  double s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) return false;
    s += x;
  }
  return std::fabs(s - 1.0) <= tol;
}

}  // namespace prt
