#include "skewkit/rng.hpp"

namespace skewkit {

namespace {

constexpr std::uint32_t mul0 = 0xD2511F53u;
constexpr std::uint32_t mul1 = 0xCD9E8D57u;
constexpr std::uint32_t weyl0 = 0x9E3779B9u;
constexpr std::uint32_t weyl1 = 0xBB67AE85u;

} // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
{
  const std::uint64_t k = mix64(seed);
  key_ = { static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32) };
  counter_ = { 0u, 0u, static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32) };
}

Philox4x32::block_type Philox4x32::encrypt(block_type ctr, key_type key)
{
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(mul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(mul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = { hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0 };
    key[0] += weyl0;
    key[1] += weyl1;
  }
  return ctr;
}

void Philox4x32::refill()
{
  buffer_ = encrypt(counter_, key_);
  if (++counter_[0] == 0)
    ++counter_[1];
  next_ = 0;
}

Philox4x32::result_type Philox4x32::operator()()
{
  if (next_ == 2)
    refill();
  const auto lo = buffer_[2 * next_];
  const auto hi = buffer_[2 * next_ + 1];
  ++next_;
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

void Philox4x32::discard(std::uint64_t z)
{
  for (; z > 0; --z)
    (*this)();
}

} // namespace skewkit
