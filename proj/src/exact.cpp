// SPDX-License-Identifier: Apache-2.0
#include "berezin/exact.hpp"

namespace berezin {

std::string to_string(const ExactComplex &z)
{
  if (z.im == 0) {
    return z.re.str();
  }
  if (z.re == 0) {
    return z.im.str() + "i";
  }
  return "(" + z.re.str() + (z.im < 0 ? "" : "+") + z.im.str() + "i)";
}

std::ostream &operator<<(std::ostream &os, const ExactComplex &z) { return os << to_string(z); }

}  // namespace berezin
