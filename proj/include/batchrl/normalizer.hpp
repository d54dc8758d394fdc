#pragma once

#include "batchrl/common.hpp"

namespace batchrl {

/// Streaming mean/variance aggregates used to normalize observations and
/// rewards online. Batches merge via the parallel (Chan) update, so the
/// state always equals the statistics of all data seen so far.
class StreamingStats {
 public:
  explicit StreamingStats(int dim);

  int dim() const { return static_cast<int>(mean_.size()); }
  float count() const { return count_; }
  const VecXf& mean() const { return mean_; }
  const VecXf& m2() const { return m2_; }

  /// Population standard deviation, zero while count < 2.
  VecXf std_dev() const;

  /// Merges one batch (rows are samples). An empty batch is a no-op.
  void update(const MatXf& batch);

  /// (x - mean) / max(std, 1e-6), clipped to [-10, 10]. Identity while
  /// count < 2.
  MatXf normalize_obs(const MatXf& x) const;

  /// r / max(std, 1e-6): scale only, never centered, so reward signs are
  /// preserved. Identity while count < 2. Requires dim == 1.
  VecXf normalize_rewards(const VecXf& r) const;

  /// Overwrites the state, used when loading a checkpoint.
  void restore(float count, VecXf mean, VecXf m2);

 private:
  float count_ = 0.0f;
  VecXf mean_;
  VecXf m2_;
};

}  // namespace batchrl
