#include "batchrl/normalizer.hpp"

#include <utility>

namespace batchrl {

namespace {
constexpr float kStdFloor = 1e-6f;
constexpr float kObsClip = 10.0f;
}  // namespace

StreamingStats::StreamingStats(int dim) {
  require(dim >= 1, "StreamingStats: dim must be >= 1");
  mean_ = VecXf::Zero(dim);
  m2_ = VecXf::Zero(dim);
}

VecXf StreamingStats::std_dev() const {
  if (count_ < 2.0f) return VecXf::Zero(dim());
  return (m2_ / count_).cwiseMax(0.0f).cwiseSqrt();
}

void StreamingStats::update(const MatXf& batch) {
  if (batch.rows() == 0) return;
  require(batch.cols() == dim(), "StreamingStats::update: dimension mismatch");
  require(batch.allFinite(), "StreamingStats::update: non-finite batch");

  const float n_b = static_cast<float>(batch.rows());
  const VecXf batch_mean = batch.colwise().mean().transpose();
  // Two-pass sum of squared deviations; stable for the batch sizes seen here.
  const MatXf centered = batch.rowwise() - batch_mean.transpose();
  const VecXf batch_m2 = centered.array().square().colwise().sum().transpose();

  const float n_new = count_ + n_b;
  const VecXf delta = batch_mean - mean_;
  mean_ += delta * (n_b / n_new);
  m2_ += batch_m2 + delta.array().square().matrix() * (count_ * n_b / n_new);
  count_ = n_new;
}

MatXf StreamingStats::normalize_obs(const MatXf& x) const {
  require(x.cols() == dim(), "StreamingStats::normalize_obs: dimension mismatch");
  if (count_ < 2.0f) return x;
  const VecXf denom = std_dev().cwiseMax(kStdFloor);
  MatXf out = x.rowwise() - mean_.transpose();
  out.array().rowwise() /= denom.transpose().array();
  return out.cwiseMin(kObsClip).cwiseMax(-kObsClip);
}

VecXf StreamingStats::normalize_rewards(const VecXf& r) const {
  require(dim() == 1, "StreamingStats::normalize_rewards: reward stats must be 1-d");
  if (count_ < 2.0f) return r;
  const float denom = std::max(std_dev()[0], kStdFloor);
  return r / denom;
}

void StreamingStats::restore(float count, VecXf mean, VecXf m2) {
  require(count >= 0.0f, "StreamingStats::restore: negative count");
  require(mean.size() == m2.size(), "StreamingStats::restore: shape mismatch");
  require((m2.array() >= 0.0f).all(), "StreamingStats::restore: negative m2");
  count_ = count;
  mean_ = std::move(mean);
  m2_ = std::move(m2);
}

}  // namespace batchrl
