#include "vasskit/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace vasskit {

BigInt parse_bigint(const std::string& text) {
  BigInt out;
  if (text.empty() || out.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  }
  return out;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

std::size_t bit_length(const BigInt& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt lcm_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 1 || lo > hi) {
    throw std::invalid_argument("lcm_range requires 1 <= lo <= hi");
  }
  BigInt acc = 1;
  for (std::uint64_t i = lo; i <= hi; ++i) {
    BigInt term(static_cast<unsigned long>(i));
    acc = acc / gcd(acc, term) * term;
  }
  return acc;
}

BigInt compute_N(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("compute_N requires n >= 1");
  }
  BigInt l = lcm_range(2, n + 1);
  BigInt d(static_cast<unsigned long>(n + 1));
  return l / d;
}

std::uint64_t min_n_for(std::span<const BigInt> values) {
  if (values.empty()) {
    throw std::invalid_argument("min_n_for requires a nonempty list");
  }
  for (const auto& v : values) {
    if (v < 1) throw std::invalid_argument("min_n_for requires positive values");
  }
  const BigInt target = *std::max_element(values.begin(), values.end());
  // lcm{2..n+1} is updated incrementally instead of recomputed per n.
  BigInt l = 1;
  for (std::uint64_t n = 1;; ++n) {
    BigInt next(static_cast<unsigned long>(n + 1));
    l = l / gcd(l, next) * next;
    if (l / next >= target) return n;
  }
}

BigInt BitString::value() const {
  BigInt v = 0;
  for (auto b : bits) {
    v *= 2;
    v += b;
  }
  return v;
}

BitString bits_of(const BigInt& x) {
  if (x < 1) {
    throw std::invalid_argument("bits_of requires x >= 1");
  }
  const std::size_t width = bit_length(x);
  BitString out;
  out.bits.reserve(width);
  for (std::size_t i = width; i-- > 0;) {
    out.bits.push_back(mpz_tstbit(x.get_mpz_t(), i) ? 1 : 0);
  }
  return out;
}

BitString bits_of(const BigInt& x, std::size_t width) {
  if (x < 0) {
    throw std::invalid_argument("bits_of requires x >= 0");
  }
  if (width == 0 || (x > 0 && bit_length(x) > width)) {
    throw std::invalid_argument("pad width " + std::to_string(width) + " too small for " + to_string(x));
  }
  BitString out;
  out.bits.reserve(width);
  for (std::size_t i = width; i-- > 0;) {
    out.bits.push_back(mpz_tstbit(x.get_mpz_t(), i) ? 1 : 0);
  }
  return out;
}

}  // namespace vasskit
