#pragma once

#include <compare>
#include <string>

#include "vasskit/arith.hpp"

namespace vasskit {

/// Positive rational kept in lowest terms at all times.
class Fraction {
 public:
  Fraction(BigInt num, BigInt den);
  explicit Fraction(const BigInt& whole) : Fraction(whole, 1) {}

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  /// max(num, den) of the irreducible form.
  const BigInt& description_size() const { return num_ > den_ ? num_ : den_; }

  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;
  Fraction pow(unsigned long exponent) const;

  bool operator==(const Fraction&) const = default;
  std::strong_ordering operator<=>(const Fraction& o) const;

  /// "p/q", or "p" when q = 1.
  std::string str() const;
  static Fraction parse(const std::string& text);

 private:
  struct Reduced {};
  Fraction(Reduced, BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {}

  BigInt num_;
  BigInt den_;
};

}  // namespace vasskit
