#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgv/bigint.hpp"
#include "kgv/group_orders.hpp"
#include "kgv/partitions.hpp"
#include "kgv/polyfield.hpp"

namespace kgv {

struct ClassDatum {
  GroupLabel group;  // Sp or an O family over a prime field
  std::map<MonicPoly, SignedPartition> assignment;
};

// GL rational canonical form data, signs dropped
using GlDatum = std::map<MonicPoly, Partition>;

std::string datum_str(const GlDatum& d);

// argument of the unitary factor for self-conjugate phi != t+-1
enum class UnitaryArgument { half_degree, full_degree };

bool validate_class_datum(const ClassDatum& d);
Integer wall_count(const ClassDatum& d, UnitaryArgument ua = UnitaryArgument::half_degree);

Integer fg_unipotent_count(int a, int r, const Partition& mu);

enum class FamilyKind { type_i, type_ii, type_iii_iv };
// type_ii j = 0 term: exact keeps one orthogonal factor, literal adds 1/|O+(0)| + 1/|O-(0)| = 2
enum class TypeIiVariant { exact, literal };

struct FamilyParams {
  int r = 2;
  int a = 1;
  int i = 0;
  int j = 0;
  TypeIiVariant variant = TypeIiVariant::exact;
};

Integer family_count(FamilyKind kind, const FamilyParams& p);

// case parameters feeding a table column
std::vector<FamilyParams> type_ii_params(int a);
std::vector<FamilyParams> type_iii_iv_params(int r, int a);

// sum of wall_count over sign decorations of a GL datum (r odd, Sp)
Integer sign_summed_count(const GroupLabel& g, const GlDatum& d, UnitaryArgument ua = UnitaryArgument::half_degree);

// count of elements of Sp(2a,2) with the given GL datum; outside Wall's scope
// (t+1 mixed with other polynomials) the orthogonal splitting V = ker (x+1)^N + rest is used
Integer sp2_datum_count(int a, const GlDatum& d);

// all valid GL data for Sp(2a,r)
std::vector<GlDatum> enumerate_sp_data(int a, int r);

Integer total_class_sum(const GroupLabel& g, int cap_dimension = 4);

// ---- section 3 table ----

struct TableCell {
  enum class Kind { empty, star, entry };
  Kind kind = Kind::empty;
  std::string stored;           // verbatim, e.g. "2^72"
  Integer stored_value;         // parsed
  Integer computed;            // exact evaluation
  std::optional<Integer> literal;  // type_ii literal reading, r = 3 rows
  bool verdict = true;         // computed <= stored_value
};

struct CountTable {
  std::vector<std::pair<int, int>> rows;  // (a, r) for Sp(2a, r), listed order
  std::vector<Rational> columns;
  std::vector<std::vector<TableCell>> cells;

  const TableCell& at(int a, int r, const Rational& c) const;
  bool all_pass() const;
};

// override lets tests falsify one stored reference entry
struct TableOverride {
  int a = 0, r = 0;
  Rational column;
  std::string stored;
};

CountTable section3_table(const std::vector<TableOverride>& overrides = {});

std::string table_csv(const CountTable& t);

}  // namespace kgv
