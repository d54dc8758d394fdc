#include "batchrl/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace batchrl {

namespace {

constexpr char kMagic[4] = {'B', 'R', 'L', '1'};
constexpr std::size_t kMaxNameLen = 1u << 16;
constexpr std::size_t kMaxRank = 8;
constexpr std::size_t kMaxElements = 1u << 28;

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_f32(std::string& out, float f) {
  put_u32(out, std::bit_cast<std::uint32_t>(f));
}

class Reader {
 public:
  Reader(const char* data, std::size_t size) : p_(data), end_(data + size) {}

  std::uint32_t u32() {
    need(4);
    const unsigned char* b = reinterpret_cast<const unsigned char*>(p_);
    p_ += 4;
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }

  float f32() { return std::bit_cast<float>(u32()); }

  std::string bytes(std::size_t n) {
    need(n);
    std::string out(p_, n);
    p_ += n;
    return out;
  }

  bool at_end() const { return p_ == end_; }

 private:
  void need(std::size_t n) {
    if (static_cast<std::size_t>(end_ - p_) < n) {
      throw std::runtime_error("checkpoint: truncated file");
    }
  }
  const char* p_;
  const char* end_;
};

}  // namespace

std::size_t NamedArray::element_count() const {
  std::size_t n = 1;
  for (std::uint32_t d : dims) n *= d;
  return n;
}

void write_checkpoint(const std::string& path, const std::vector<NamedArray>& arrays) {
  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  put_u32(buf, static_cast<std::uint32_t>(arrays.size()));
  for (const NamedArray& a : arrays) {
    if (a.data.size() != a.element_count()) {
      throw std::runtime_error("checkpoint: array '" + a.name +
                               "' data size does not match dims");
    }
    put_u32(buf, static_cast<std::uint32_t>(a.name.size()));
    buf.append(a.name);
    put_u32(buf, static_cast<std::uint32_t>(a.dims.size()));
    for (std::uint32_t d : a.dims) put_u32(buf, d);
    for (float f : a.data) put_f32(buf, f);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open '" + path + "' for write");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("checkpoint: write to '" + path + "' failed");
}

std::vector<NamedArray> read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Reader r(buf.data(), buf.size());
  if (r.bytes(4) != std::string(kMagic, sizeof(kMagic))) {
    throw std::runtime_error("checkpoint: bad magic in '" + path + "'");
  }
  const std::uint32_t count = r.u32();
  std::vector<NamedArray> arrays;
  arrays.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedArray a;
    const std::uint32_t name_len = r.u32();
    if (name_len > kMaxNameLen) throw std::runtime_error("checkpoint: name too long");
    a.name = r.bytes(name_len);
    const std::uint32_t rank = r.u32();
    if (rank > kMaxRank) throw std::runtime_error("checkpoint: rank too large");
    a.dims.resize(rank);
    for (std::uint32_t d = 0; d < rank; ++d) a.dims[d] = r.u32();
    const std::size_t n = a.element_count();
    if (n > kMaxElements) throw std::runtime_error("checkpoint: array too large");
    a.data.resize(n);
    for (std::size_t k = 0; k < n; ++k) a.data[k] = r.f32();
    arrays.push_back(std::move(a));
  }
  if (!r.at_end()) throw std::runtime_error("checkpoint: trailing bytes in '" + path + "'");
  return arrays;
}

}  // namespace batchrl
