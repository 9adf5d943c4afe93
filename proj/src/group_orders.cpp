#include "kgv/group_orders.hpp"

#include "kgv/polyfield.hpp"

namespace kgv {

int GroupLabel::dimension() const {
  switch (family) {
    case Family::GL:
    case Family::U:
      return m;
    case Family::Sp:
    case Family::O_plus_even:
    case Family::O_minus_even:
      return 2 * m;
    case Family::O_odd:
      return 2 * m + 1;
  }
  return m;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::U: return "U";
    case Family::Sp: return "Sp";
    case Family::O_plus_even: return "O_plus_even";
    case Family::O_minus_even: return "O_minus_even";
    case Family::O_odd: return "O_odd";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::GL, Family::U, Family::Sp, Family::O_plus_even, Family::O_minus_even, Family::O_odd})
    if (s == family_name(f)) return f;
  throw Error("unknown group family '" + s + "'");
}

std::string GroupLabel::str() const {
  std::string d = std::to_string(dimension());
  std::string qs = std::to_string(q);
  switch (family) {
    case Family::GL: return "GL(" + d + "," + qs + ")";
    case Family::U: return "U(" + d + "," + qs + ")";
    case Family::Sp: return "Sp(" + d + "," + qs + ")";
    case Family::O_plus_even: return "O+(" + d + "," + qs + ")";
    case Family::O_minus_even: return "O-(" + d + "," + qs + ")";
    case Family::O_odd: return "O(" + d + "," + qs + ")";
  }
  return "?";
}

Integer classical_order(const GroupLabel& g) {
  if (g.q < 2 || !prime_power(g.q)) throw Error("classical_order: q must be a prime power");
  if (g.m < 0) throw Error("classical_order: negative dimension parameter");
  const Integer q(g.q);
  const unsigned long m = static_cast<unsigned long>(g.m);
  Integer out = 1;
  switch (g.family) {
    case Family::GL:
      out = ipow(q, m * (m - (m ? 1 : 0)) / 2);
      for (unsigned long i = 1; i <= m; ++i) out *= ipow(q, i) - 1;
      return out;
    case Family::U:
      out = ipow(q, m * (m - (m ? 1 : 0)) / 2);
      for (unsigned long i = 1; i <= m; ++i) out *= ipow(q, i) - (i % 2 ? -1 : 1);
      return out;
    case Family::Sp:
      out = ipow(q, m * m);
      for (unsigned long i = 1; i <= m; ++i) out *= ipow(q, 2 * i) - 1;
      return out;
    case Family::O_plus_even:
    case Family::O_minus_even: {
      if (m == 0) return 1;
      int eps = g.family == Family::O_plus_even ? 1 : -1;
      out = 2 * ipow(q, m * (m - 1)) * (ipow(q, m) - eps);
      for (unsigned long i = 1; i < m; ++i) out *= ipow(q, 2 * i) - 1;
      return out;
    }
    case Family::O_odd:
      out = 2 * ipow(q, m * m);
      for (unsigned long i = 1; i <= m; ++i) out *= ipow(q, 2 * i) - 1;
      return out;
  }
  return out;
}

Integer order_O(int dim, int eps, unsigned long q) {
  if (dim % 2) return classical_order({Family::O_odd, (dim - 1) / 2, q});
  return classical_order({eps > 0 ? Family::O_plus_even : Family::O_minus_even, dim / 2, q});
}

}  // namespace kgv
