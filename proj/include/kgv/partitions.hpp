#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace kgv {

class Partition {
 public:
  Partition() = default;
  // parts in any order, zeros dropped
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int size() const { return size_; }
  // m_i; 0 for sizes that do not occur
  int multiplicity(int i) const;
  const std::map<int, int>& multiplicities() const { return mult_; }

  std::string str() const;

  auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }
  bool operator==(const Partition& o) const { return parts_ == o.parts_; }

 private:
  std::vector<int> parts_;
  std::map<int, int> mult_;
  int size_ = 0;
};

struct PartitionStats {
  int size = 0;
  int odd_parts = 0;  // o(mu)
  long long n = 0;    // n(mu)
  std::map<int, int> multiplicities;
};

Partition dual(const Partition& mu);
PartitionStats stats(const Partition& mu);

constexpr int default_partition_cap = 40;
std::vector<Partition> enumerate_partitions(int N, int cap = default_partition_cap);

enum class FormFamily { symplectic, orthogonal };

struct SignedPartition {
  Partition base;
  std::map<int, int> signs;  // part size -> +1 / -1

  auto operator<=>(const SignedPartition&) const = default;
};

bool validate_signed(FormFamily family, const SignedPartition& sp);

// every valid sign decoration of mu for the family (empty if parity fails)
std::vector<SignedPartition> sign_choices(FormFamily family, const Partition& mu);

}  // namespace kgv
