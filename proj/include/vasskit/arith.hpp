#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace vasskit {

/// Arbitrary-precision signed integer. GMP keeps the representation
/// canonical, so equal values compare equal limb-for-limb.
using BigInt = mpz_class;

BigInt parse_bigint(const std::string& text);
std::string to_string(const BigInt& x);

/// Number of bits in |x|; 1 for zero.
std::size_t bit_length(const BigInt& x);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned long exponent);

/// lcm(lo, lo+1, ..., hi).
BigInt lcm_range(std::uint64_t lo, std::uint64_t hi);

/// lcm{2..n+1} / (n+1). The smallest x0 for which the exponential
/// program family admits a halting run is exactly this value.
BigInt compute_N(std::uint64_t n);

/// Least n >= 1 with compute_N(n) >= max(values).
std::uint64_t min_n_for(std::span<const BigInt> values);

/// Bits most-significant first. An unpadded string always starts with 1.
struct BitString {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  /// Bit with weight 2^i (i = 0 is the least significant bit).
  bool weight(std::size_t i) const { return bits[bits.size() - 1 - i] != 0; }
  BigInt value() const;

  bool operator==(const BitString&) const = default;
};

/// Binary expansion of x >= 1.
BitString bits_of(const BigInt& x);

/// Binary expansion of 0 <= x < 2^width, padded with leading zeros.
BitString bits_of(const BigInt& x, std::size_t width);

}  // namespace vasskit
