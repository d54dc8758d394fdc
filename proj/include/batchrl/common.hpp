#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace batchrl {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatXf = Mat<float>;
using VecXf = Vec<float>;

/// Thrown when a caller breaks a documented precondition. These indicate
/// programming errors, not runtime conditions.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Failure to launch or handshake a worker process.
class SpawnError : public std::runtime_error {
 public:
  explicit SpawnError(const std::string& what) : std::runtime_error(what) {}
};

/// The channel to a worker process broke (exit, EOF, malformed frame,
/// timeout). The handle is dead afterwards.
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

/// The worker reported an exception; the channel itself is still usable.
class RemoteError : public std::runtime_error {
 public:
  explicit RemoteError(const std::string& what) : std::runtime_error(what) {}
};

/// A gradient update produced non-finite values and was aborted.
class UpdateError : public std::runtime_error {
 public:
  explicit UpdateError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace batchrl
