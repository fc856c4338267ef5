#include "vasskit/fraction.hpp"

#include <stdexcept>

namespace vasskit {

Fraction::Fraction(BigInt num, BigInt den) {
  if (num <= 0 || den <= 0) {
    throw std::invalid_argument("fraction requires positive numerator and denominator");
  }
  BigInt g = gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Fraction Fraction::operator*(const Fraction& o) const {
  // Cross-cancel first so the products are already coprime.
  BigInt g1 = gcd(num_, o.den_);
  BigInt g2 = gcd(o.num_, den_);
  return Fraction(Reduced{}, (num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

Fraction Fraction::operator/(const Fraction& o) const {
  return *this * Fraction(Reduced{}, o.den_, o.num_);
}

Fraction Fraction::pow(unsigned long exponent) const {
  // gcd(p, q) = 1 implies gcd(p^e, q^e) = 1.
  return Fraction(Reduced{}, vasskit::pow(num_, exponent), vasskit::pow(den_, exponent));
}

std::strong_ordering Fraction::operator<=>(const Fraction& o) const {
  BigInt lhs = num_ * o.den_;
  BigInt rhs = o.num_ * den_;
  int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Fraction::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

Fraction Fraction::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Fraction(parse_bigint(text), 1);
  return Fraction(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

}  // namespace vasskit
