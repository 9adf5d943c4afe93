#pragma once

#include <optional>
#include <vector>

#include "kgv/bigint.hpp"

namespace kgv {

Integer d1(int r, int a);
Integer d2(int r, int a);

long long max_multiplicity(long long S, long long Q);

// cycles of a permutation given by their lengths; fixed points are cycles of length 1
long long orbit_bound_from_cycles(const std::vector<long long>& lengths);

enum class EigenKind { irreducible, two_blocks };
Rational eigen_dim_bound(EigenKind kind, int r, int a, long long m);

struct RdimProfile {
  int r = 2;
  int a = 1;
  // case (i): i parts of type D(4); case (ii): i parts B(2,1), j parts C(2); (iii)/(iv): i parts B(2,1)
  std::optional<int> i;
  std::optional<int> j;
  bool other = false;  // not of the listed case
};

Rational rdim_case(const RdimProfile& p);
Rational rdim_default(int r);

}  // namespace kgv
