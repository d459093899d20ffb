#pragma once

#include <cstddef>
#include <vector>

namespace prt {

using Vec = std::vector<double>;

/// Throws InvalidInputError if any entry of v is NaN or infinite.
void check_finite(const Vec& v, const char* what);

/// log(sum_i exp(v_i)) via max-shift; never overflows for finite input.
double logsumexp(const Vec& v);

/// o_i = v_i - logsumexp(v); exp(o) is a probability vector.
Vec log_softmax(const Vec& v);

/// exp(log_softmax(v)), normalized to sum exactly 1 within roundoff.
Vec softmax(const Vec& v);

/// sum_i p_i log(p_i/q_i), with 0 log 0 := 0. Returns +inf when some
/// q_i = 0 < p_i (measure-theoretic convention, not an error).
double kl_divergence(const Vec& p, const Vec& q);

/// -sum_i p_i log p_i, in [0, ln L].
double entropy(const Vec& p);

/// -log p[label]. When p[label] == 0: +inf if infinite_on_zero, else
/// throws NumericError.
double cross_entropy(const Vec& p, std::size_t label, bool infinite_on_zero = true);

/// Unnormalized L1 distance sum_i |p_i - q_i|, in [0, 2] for probabilities.
double total_variation(const Vec& p, const Vec& q);

/// Entries nonnegative and summing to 1 within tol.
bool is_prob_vector(const Vec& p, double tol = 1e-12);

}  // namespace prt
