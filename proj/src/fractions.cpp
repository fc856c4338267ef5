#include "vasskit/fractions.hpp"

#include <stdexcept>

namespace vasskit {

FractionSequence fraction_sequence(unsigned k) {
  if (k == 0) throw std::invalid_argument("fraction sequence needs k >= 1");
  FractionSequence s;
  s.k = k;
  const BigInt four_k = vasskit::pow(4, k);
  for (unsigned i = 1; i <= k; ++i) s.r.emplace_back(four_k + vasskit::pow(2, k - i), four_k);
  // suffix[i] = r_(i+1) * ... * r_k (0-based: product of r[i+1..k-1]).
  std::vector<Fraction> suffix(k, Fraction(1));
  for (unsigned i = k - 1; i-- > 0;) suffix[i] = suffix[i + 1] * s.r[i + 1];
  for (unsigned i = 0; i < k; ++i) s.f_list.push_back(s.r[i] / suffix[i]);
  Fraction all(1);
  for (const auto& x : s.r) all = all * x;
  s.f = all * all;
  return s;
}

FractionCheck check_fraction_sequence(const FractionSequence& s) {
  FractionCheck out;
  const unsigned k = s.k;
  out.increasing = s.f_list.size() == k && s.f_list.front() > Fraction(1);
  for (unsigned i = 1; i < s.f_list.size(); ++i) out.increasing = out.increasing && s.f_list[i - 1] < s.f_list[i];

  const BigInt four_k = vasskit::pow(4, k);
  out.last_is_one_plus_quarter_power = s.f_list.back() == Fraction(four_k + 1, four_k);

  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    unsigned long e = 1ul << (i + 1);
    num *= vasskit::pow(s.f_list[i].num(), e);
    den *= vasskit::pow(s.f_list[i].den(), e);
  }
  out.product_identity = num * s.f.den() == den * s.f.num();

  const BigInt member_bound = vasskit::pow(4, static_cast<unsigned long>(k) * k + k);
  out.member_size_bound = true;
  for (const auto& f : s.f_list) out.member_size_bound = out.member_size_bound && f.description_size() <= member_bound;
  out.product_size_bound = s.f.description_size() <= member_bound * member_bound;
  return out;
}

}  // namespace vasskit
