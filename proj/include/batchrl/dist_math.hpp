#pragma once

#include <cmath>
#include <utility>

#include "batchrl/common.hpp"
#include "batchrl/rng.hpp"

// Closed-form math for diagonal Gaussian policies and discounted returns.
// Everything here is templated on the scalar type: the training path runs
// in float, test oracles instantiate double.

namespace batchrl::dist {

inline constexpr double kHalfLog2Pi = 0.9189385332046727417803297364;  // ln(2*pi)/2

template <typename S>
struct DiagGaussian {
  Vec<S> mean;
  Vec<S> log_std;

  DiagGaussian(Vec<S> mean_in, Vec<S> log_std_in)
      : mean(std::move(mean_in)), log_std(std::move(log_std_in)) {
    require(mean.size() >= 1, "DiagGaussian: action dimension must be >= 1");
    require(mean.size() == log_std.size(),
            "DiagGaussian: mean and log_std lengths differ");
    require(mean.allFinite() && log_std.allFinite(),
            "DiagGaussian: non-finite parameter");
  }

  Eigen::Index dim() const { return mean.size(); }
};

/// Log density of `action` under the distribution, summed over coordinates.
template <typename S>
S log_prob(const DiagGaussian<S>& d, const Vec<S>& action) {
  require(action.size() == d.dim(), "log_prob: action dimension mismatch");
  S total = S(0);
  for (Eigen::Index i = 0; i < d.dim(); ++i) {
    const S z = (action[i] - d.mean[i]) / std::exp(d.log_std[i]);
    total += -d.log_std[i] - S(kHalfLog2Pi) - S(0.5) * z * z;
  }
  return total;
}

/// KL(p || q) for diagonal Gaussians. Zero iff p == q.
template <typename S>
S kl(const DiagGaussian<S>& p, const DiagGaussian<S>& q) {
  require(p.dim() == q.dim(), "kl: dimension mismatch");
  S total = S(0);
  for (Eigen::Index i = 0; i < p.dim(); ++i) {
    const S var_p = std::exp(S(2) * p.log_std[i]);
    const S var_q = std::exp(S(2) * q.log_std[i]);
    const S dm = p.mean[i] - q.mean[i];
    total += q.log_std[i] - p.log_std[i] + (var_p + dm * dm) / (S(2) * var_q) - S(0.5);
  }
  return total;
}

/// Draws mean + exp(log_std) * z with z standard normal from `rng`.
template <typename S>
Vec<S> sample(const DiagGaussian<S>& d, Rng& rng) {
  Vec<S> out(d.dim());
  for (Eigen::Index i = 0; i < d.dim(); ++i) {
    out[i] = d.mean[i] + std::exp(d.log_std[i]) * S(rng.normal());
  }
  return out;
}

/// out[t] = sum_{i>=0} gamma^i * rewards[t+i] over one finite episode,
/// computed as a reverse scan.
template <typename S>
Vec<S> discounted_returns(const Vec<S>& rewards, S gamma) {
  require(rewards.size() >= 1, "discounted_returns: empty reward sequence");
  require(gamma >= S(0) && gamma <= S(1), "discounted_returns: gamma outside [0, 1]");
  const Eigen::Index n = rewards.size();
  Vec<S> out(n);
  out[n - 1] = rewards[n - 1];
  for (Eigen::Index t = n - 2; t >= 0; --t) {
    out[t] = rewards[t] + gamma * out[t + 1];
  }
  return out;
}

}  // namespace batchrl::dist
