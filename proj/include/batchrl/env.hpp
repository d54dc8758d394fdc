#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "batchrl/common.hpp"
#include "batchrl/rng.hpp"

namespace batchrl {

/// Observation/action space description shared by every member of a batch.
struct EnvSpec {
  int obs_dim = 0;
  int act_dim = 0;
  VecXf action_low;
  VecXf action_high;
  int max_episode_steps = 0;

  void validate() const;
  bool operator==(const EnvSpec& other) const;
};

/// One environment tick. All outward-facing values are 32-bit.
struct StepResult {
  VecXf obs;
  float reward = 0.0f;
  bool done = false;
};

/// The environment contract. Actions are clipped to the action bounds at
/// this boundary; stepping a finished episode without a reset is a contract
/// violation. `done` is set at the terminal condition or when the episode
/// reaches max_episode_steps.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;

  /// Starts a new episode. A seed reseeds the environment's random stream
  /// first (in-process environments only; external processes are seeded at
  /// spawn).
  virtual VecXf reset(std::optional<std::uint64_t> seed = std::nullopt) = 0;

  virtual StepResult step(const VecXf& action) = 0;

  /// Split-phase stepping for process-backed environments: issue the request
  /// without blocking, collect the result later. Environments that do not
  /// support it run synchronously through step().
  virtual bool supports_async() const { return false; }
  virtual void step_send(const VecXf& action);
  virtual StepResult step_receive();
};

/// Base for in-process environments: owns the random stream, counts episode
/// steps, applies action clipping and the step-after-done contract.
class NativeEnv : public Environment {
 public:
  const EnvSpec& spec() const override { return spec_; }
  VecXf reset(std::optional<std::uint64_t> seed = std::nullopt) override;
  StepResult step(const VecXf& action) override;

  int episode_steps() const { return steps_; }
  bool in_episode() const { return in_episode_; }

 protected:
  NativeEnv(EnvSpec spec, std::uint64_t seed);

  virtual VecXf do_reset() = 0;
  virtual StepResult do_step(const VecXf& clipped_action) = 0;

  Rng rng_;

 private:
  EnvSpec spec_;
  int steps_ = 0;
  bool in_episode_ = false;
};

/// 1-d linear-quadratic regulator with process noise:
///   s' = 0.9 s + 0.1 a + noise_std * nu,  nu ~ N(0,1)
///   reward = -(s^2 + 0.1 a^2)
/// horizon 100, action range [-2, 2], initial state uniform in [-1, 1].
class Lq1dEnv final : public NativeEnv {
 public:
  explicit Lq1dEnv(std::uint64_t seed, double noise_std = 0.01);

  double state() const { return state_; }
  void set_state(double s) { state_ = s; }

 protected:
  VecXf do_reset() override;
  StepResult do_step(const VecXf& action) override;

 private:
  double state_ = 0.0;
  double noise_std_;
};

/// Pendulum swing-up. Angle is measured from upright; the episode starts at
/// a random pose and the agent must swing up and balance.
///   g=10, m=1, l=1, dt=0.05, torque in [-2, 2]
///   reward = -(angle^2 + 0.1 angvel^2 + 0.001 torque^2)
/// horizon 200, obs = (cos angle, sin angle, angvel).
class PendulumEnv final : public NativeEnv {
 public:
  explicit PendulumEnv(std::uint64_t seed);

  double angle() const { return angle_; }
  double angular_velocity() const { return angvel_; }
  void set_state(double angle, double angvel) {
    angle_ = angle;
    angvel_ = angvel;
  }

  /// Wraps an angle into [-pi, pi].
  static double wrap_angle(double a);

 protected:
  VecXf do_reset() override;
  StepResult do_step(const VecXf& action) override;

 private:
  VecXf observe() const;

  double angle_ = 0.0;
  double angvel_ = 0.0;
};

/// Diagnostic environment: each step sleeps for a fixed wall-clock delay.
/// Used to benchmark parallel stepping.
class SleepEnv final : public NativeEnv {
 public:
  explicit SleepEnv(std::uint64_t seed, int sleep_ms = 5);

 protected:
  VecXf do_reset() override;
  StepResult do_step(const VecXf& action) override;

 private:
  int sleep_ms_;
};

/// Diagnostic environment: the observation is the action, bit for bit.
/// Used to verify transport round-trips.
class EchoEnv final : public NativeEnv {
 public:
  explicit EchoEnv(std::uint64_t seed);

 protected:
  VecXf do_reset() override;
  StepResult do_step(const VecXf& action) override;
};

/// Constructs a registered environment by name. Throws ContractViolation
/// for unknown names.
std::unique_ptr<Environment> make_env(const std::string& name, std::uint64_t seed);

/// Names accepted by make_env, sorted.
std::vector<std::string> registered_envs();

}  // namespace batchrl
