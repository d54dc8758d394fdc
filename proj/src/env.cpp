#include "batchrl/env.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <utility>

namespace batchrl {

void EnvSpec::validate() const {
  require(obs_dim >= 1, "EnvSpec: obs_dim must be >= 1");
  require(act_dim >= 1, "EnvSpec: act_dim must be >= 1");
  require(max_episode_steps >= 1, "EnvSpec: max_episode_steps must be >= 1");
  require(action_low.size() == act_dim && action_high.size() == act_dim,
          "EnvSpec: action bound lengths must equal act_dim");
  require(action_low.allFinite() && action_high.allFinite(),
          "EnvSpec: non-finite action bounds");
  require((action_low.array() < action_high.array()).all(),
          "EnvSpec: action_low must be elementwise below action_high");
}

bool EnvSpec::operator==(const EnvSpec& other) const {
  return obs_dim == other.obs_dim && act_dim == other.act_dim &&
         max_episode_steps == other.max_episode_steps &&
         action_low == other.action_low && action_high == other.action_high;
}

void Environment::step_send(const VecXf&) {
  throw ContractViolation("step_send: environment does not support async stepping");
}

StepResult Environment::step_receive() {
  throw ContractViolation("step_receive: environment does not support async stepping");
}

NativeEnv::NativeEnv(EnvSpec spec, std::uint64_t seed)
    : rng_(seed), spec_(std::move(spec)) {
  spec_.validate();
}

VecXf NativeEnv::reset(std::optional<std::uint64_t> seed) {
  if (seed) rng_ = Rng(*seed);
  steps_ = 0;
  in_episode_ = true;
  return do_reset();
}

StepResult NativeEnv::step(const VecXf& action) {
  require(in_episode_, "step: episode finished; reset required before stepping");
  require(action.size() == spec_.act_dim, "step: action dimension mismatch");
  require(action.allFinite(), "step: non-finite action");

  const VecXf clipped = action.cwiseMax(spec_.action_low).cwiseMin(spec_.action_high);
  StepResult result = do_step(clipped);
  ++steps_;
  if (steps_ >= spec_.max_episode_steps) result.done = true;
  if (result.done) in_episode_ = false;
  return result;
}

namespace {

EnvSpec scalar_box_spec(int obs_dim, int act_dim, float low, float high, int horizon) {
  EnvSpec spec;
  spec.obs_dim = obs_dim;
  spec.act_dim = act_dim;
  spec.action_low = VecXf::Constant(act_dim, low);
  spec.action_high = VecXf::Constant(act_dim, high);
  spec.max_episode_steps = horizon;
  return spec;
}

}  // namespace

Lq1dEnv::Lq1dEnv(std::uint64_t seed, double noise_std)
    : NativeEnv(scalar_box_spec(1, 1, -2.0f, 2.0f, 100), seed), noise_std_(noise_std) {}

VecXf Lq1dEnv::do_reset() {
  state_ = rng_.uniform(-1.0, 1.0);
  VecXf obs(1);
  obs[0] = static_cast<float>(state_);
  return obs;
}

StepResult Lq1dEnv::do_step(const VecXf& action) {
  const double a = action[0];
  const double reward = -(state_ * state_ + 0.1 * a * a);
  state_ = 0.9 * state_ + 0.1 * a + noise_std_ * rng_.normal();

  StepResult result;
  result.obs.resize(1);
  result.obs[0] = static_cast<float>(state_);
  result.reward = static_cast<float>(reward);
  return result;
}

PendulumEnv::PendulumEnv(std::uint64_t seed)
    : NativeEnv(scalar_box_spec(3, 1, -2.0f, 2.0f, 200), seed) {}

double PendulumEnv::wrap_angle(double a) {
  constexpr double kPi = 3.14159265358979323846;
  const double two_pi = 2.0 * kPi;
  double x = std::fmod(a + kPi, two_pi);
  if (x < 0.0) x += two_pi;
  return x - kPi;
}

VecXf PendulumEnv::observe() const {
  VecXf obs(3);
  obs[0] = static_cast<float>(std::cos(angle_));
  obs[1] = static_cast<float>(std::sin(angle_));
  obs[2] = static_cast<float>(angvel_);
  return obs;
}

VecXf PendulumEnv::do_reset() {
  constexpr double kPi = 3.14159265358979323846;
  angle_ = rng_.uniform(-kPi, kPi);
  angvel_ = rng_.uniform(-1.0, 1.0);
  return observe();
}

StepResult PendulumEnv::do_step(const VecXf& action) {
  constexpr double kGravity = 10.0;
  constexpr double kMass = 1.0;
  constexpr double kLength = 1.0;
  constexpr double kDt = 0.05;
  constexpr double kMaxSpeed = 8.0;

  const double torque = action[0];
  const double angle_err = wrap_angle(angle_);
  const double cost =
      angle_err * angle_err + 0.1 * angvel_ * angvel_ + 0.001 * torque * torque;

  double angvel_new =
      angvel_ + (3.0 * kGravity / (2.0 * kLength) * std::sin(angle_) +
                 3.0 / (kMass * kLength * kLength) * torque) *
                    kDt;
  angvel_new = std::clamp(angvel_new, -kMaxSpeed, kMaxSpeed);
  angle_ += angvel_new * kDt;
  angvel_ = angvel_new;

  StepResult result;
  result.obs = observe();
  result.reward = static_cast<float>(-cost);
  return result;
}

SleepEnv::SleepEnv(std::uint64_t seed, int sleep_ms)
    : NativeEnv(scalar_box_spec(1, 1, -1.0f, 1.0f, 1 << 30), seed),
      sleep_ms_(sleep_ms) {}

VecXf SleepEnv::do_reset() { return VecXf::Zero(1); }

StepResult SleepEnv::do_step(const VecXf&) {
  std::this_thread::sleep_for(std::chrono::milliseconds(sleep_ms_));
  StepResult result;
  result.obs = VecXf::Zero(1);
  return result;
}

EchoEnv::EchoEnv(std::uint64_t seed)
    : NativeEnv(scalar_box_spec(4, 4, -1e30f, 1e30f, 1 << 20), seed) {}

VecXf EchoEnv::do_reset() { return VecXf::Zero(4); }

StepResult EchoEnv::do_step(const VecXf& action) {
  StepResult result;
  result.obs = action;
  result.reward = action[0];
  return result;
}

std::unique_ptr<Environment> make_env(const std::string& name, std::uint64_t seed) {
  if (name == "lq1d") return std::make_unique<Lq1dEnv>(seed);
  if (name == "pendulum") return std::make_unique<PendulumEnv>(seed);
  if (name == "sleep5ms") return std::make_unique<SleepEnv>(seed);
  if (name == "echo4") return std::make_unique<EchoEnv>(seed);
  throw ContractViolation("make_env: unknown environment '" + name + "'");
}

std::vector<std::string> registered_envs() {
  return {"echo4", "lq1d", "pendulum", "sleep5ms"};
}

}  // namespace batchrl
