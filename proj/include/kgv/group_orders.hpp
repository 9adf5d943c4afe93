#pragma once

#include <string>

#include "kgv/bigint.hpp"

namespace kgv {

enum class Family { GL, U, Sp, O_plus_even, O_minus_even, O_odd };

struct GroupLabel {
  Family family = Family::Sp;
  int m = 0;             // half-dimension for Sp / even O, 2m+1 for O_odd, plain dimension for GL / U
  unsigned long q = 2;   // field size (for U: the q in U(m,q) <= GL(m,q^2))

  int dimension() const;
  std::string str() const;
  auto operator<=>(const GroupLabel&) const = default;
};

const char* family_name(Family f);
Family parse_family(const std::string& s);

Integer classical_order(const GroupLabel& label);

inline Integer order_GL(int m, unsigned long q) { return classical_order({Family::GL, m, q}); }
inline Integer order_U(int m, unsigned long q) { return classical_order({Family::U, m, q}); }
inline Integer order_Sp(int m, unsigned long q) { return classical_order({Family::Sp, m, q}); }
// dim is the full dimension; eps = +1 / -1 for even dim, ignored for odd
Integer order_O(int dim, int eps, unsigned long q);

}  // namespace kgv
