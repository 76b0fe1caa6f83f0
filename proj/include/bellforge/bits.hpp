#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bellforge {

/// Bit vectors index parties positionally: element 0 is party 0.
using Bits = std::vector<std::uint8_t>;

/// Party 0 occupies the most significant bit of a packed index. This
/// convention is shared by behaviors, states and functionals; all packing
/// goes through the helpers below.
inline std::size_t pack_bits(const Bits& bits) {
  std::size_t index = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw std::invalid_argument("bit vector entries must be 0 or 1");
    index = (index << 1) | b;
  }
  return index;
}

inline Bits unpack_bits(std::size_t index, int n) {
  Bits bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bits[static_cast<std::size_t>(i)] = (index >> (n - 1 - i)) & 1u;
  }
  return bits;
}

inline int bit_at(std::size_t index, int party, int n) {
  return static_cast<int>((index >> (n - 1 - party)) & 1u);
}

inline std::size_t with_bit(std::size_t index, int party, int n, int value) {
  std::size_t mask = std::size_t{1} << (n - 1 - party);
  return value ? (index | mask) : (index & ~mask);
}

/// Inserts a new bit for `party`, shifting lower-order parties down.
inline std::size_t insert_bit(std::size_t index, int party, int n_after, int value) {
  int shift = n_after - 1 - party;
  std::size_t high = (index >> shift) << (shift + 1);
  std::size_t low = index & ((std::size_t{1} << shift) - 1);
  return high | (static_cast<std::size_t>(value) << shift) | low;
}

}  // namespace bellforge
