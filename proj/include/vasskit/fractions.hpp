#pragma once

#include <string>
#include <vector>

#include "vasskit/fraction.hpp"

namespace vasskit {

/// r_i = (4^k + 2^(k-i)) / 4^k, f_i = r_i / (r_(i+1) ... r_k) and
/// f = (r_1 ... r_k)^2, so that f_1^2 * f_2^4 * ... * f_k^(2^k) = f.
struct FractionSequence {
  unsigned k = 0;
  std::vector<Fraction> r;
  std::vector<Fraction> f_list;
  Fraction f{1};
};

/// Throws std::invalid_argument for k = 0.
FractionSequence fraction_sequence(unsigned k);

struct FractionCheck {
  bool increasing = false;
  bool last_is_one_plus_quarter_power = false;
  bool product_identity = false;
  bool member_size_bound = false;
  bool product_size_bound = false;

  bool ok() const {
    return increasing && last_is_one_plus_quarter_power && product_identity && member_size_bound && product_size_bound;
  }
};

/// Checks every property of the sequence exactly. The tower product is
/// compared by cross-multiplying unreduced integer powers.
FractionCheck check_fraction_sequence(const FractionSequence& s);

}  // namespace vasskit
