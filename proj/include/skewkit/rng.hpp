#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace skewkit {

//! Philox4x32-10 counter-based generator (Salmon et al., Random123).
//!
//! The key is derived from a master seed and the upper half of the counter
//! carries a stream id, so stream `i` of seed `s` is a fixed, independent
//! sequence no matter which thread consumes it or in what order.
class Philox4x32
{
public:
  using result_type = std::uint64_t;
  using block_type = std::array<std::uint32_t, 4>;
  using key_type = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  void discard(std::uint64_t z);

  //! One application of the 10-round bijection.
  static block_type encrypt(block_type counter, key_type key);

private:
  void refill();

  block_type counter_{};
  key_type key_{};
  block_type buffer_{};
  int next_ = 2; // index into the two 64-bit words of buffer_
};

//! Uniform double strictly inside (0, 1) with 53 random bits.
template<class Engine>
double uniform_open01(Engine& engine)
{
  const auto bits = static_cast<std::uint64_t>(engine()) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

//! SplitMix64 finalizer; used to decorrelate user seeds before keying.
constexpr std::uint64_t mix64(std::uint64_t z)
{
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace skewkit
