#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace rgs {

// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Counter-based stream: key = seed, counter = (draw index, stream index).
// Streams with different indices never overlap.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Index drawn from a probability vector; zero-weight entries are never returned.
  std::size_t categorical(std::span<const double> probs);

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  unsigned used_ = 4;
};

}  // namespace rgs
