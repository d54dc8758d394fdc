#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace batchrl {

/// One entry of the flat checkpoint container: a named float32 array with
/// explicit shape, stored little-endian on disk.
struct NamedArray {
  std::string name;
  std::vector<std::uint32_t> dims;
  std::vector<float> data;  // row-major, size == product(dims)

  std::size_t element_count() const;
};

/// Writes the container; layout documented in the README ("Checkpoint
/// format"). Throws std::runtime_error on I/O failure.
void write_checkpoint(const std::string& path, const std::vector<NamedArray>& arrays);

/// Reads a container written by write_checkpoint. Throws std::runtime_error
/// on I/O failure or a malformed file.
std::vector<NamedArray> read_checkpoint(const std::string& path);

}  // namespace batchrl
