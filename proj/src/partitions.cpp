#include "kgv/partitions.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kgv/bigint.hpp"

namespace kgv {

Partition::Partition(std::vector<int> parts) {
  for (int p : parts) {
    if (p < 0) throw Error("negative partition part");
    if (p > 0) parts_.push_back(p);
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  for (int p : parts_) {
    ++mult_[p];
    size_ += p;
  }
}

int Partition::multiplicity(int i) const {
  auto it = mult_.find(i);
  return it == mult_.end() ? 0 : it->second;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

Partition dual(const Partition& mu) {
  if (mu.empty()) return {};
  std::vector<int> out(mu.parts().front(), 0);
  for (int p : mu.parts())
    for (int i = 0; i < p; ++i) ++out[i];
  return Partition(out);
}

PartitionStats stats(const Partition& mu) {
  PartitionStats s;
  s.size = mu.size();
  s.multiplicities = mu.multiplicities();
  for (int p : mu.parts())
    if (p % 2) ++s.odd_parts;
  Partition d = dual(mu);
  for (int c : d.parts()) s.n += static_cast<long long>(c) * (c - 1) / 2;
  return s;
}

std::vector<Partition> enumerate_partitions(int N, int cap) {
  if (N < 0) throw Error("negative partition size");
  if (N > cap) throw Error("enumerate_partitions: N=" + std::to_string(N) + " exceeds cap " + std::to_string(cap));
  std::vector<Partition> out;
  std::vector<int> cur;
  // descending parts, reverse-lex order
  std::function<void(int, int)> rec = [&](int left, int maxp) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(left, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(N, N);
  return out;
}

namespace {

bool parity_ok(FormFamily family, const Partition& mu) {
  for (auto [size, m] : mu.multiplicities()) {
    bool odd = size % 2;
    if (family == FormFamily::symplectic && odd && m % 2) return false;
    if (family == FormFamily::orthogonal && !odd && m % 2) return false;
  }
  return true;
}

bool needs_sign(FormFamily family, int size) {
  return family == FormFamily::symplectic ? size % 2 == 0 : size % 2 == 1;
}

}  // namespace

bool validate_signed(FormFamily family, const SignedPartition& sp) {
  if (!parity_ok(family, sp.base)) return false;
  std::size_t needed = 0;
  for (auto [size, m] : sp.base.multiplicities()) {
    if (!needs_sign(family, size)) continue;
    ++needed;
    auto it = sp.signs.find(size);
    if (it == sp.signs.end() || (it->second != 1 && it->second != -1)) return false;
  }
  return needed == sp.signs.size();
}

std::vector<SignedPartition> sign_choices(FormFamily family, const Partition& mu) {
  if (!parity_ok(family, mu)) return {};
  std::vector<int> keys;
  for (auto [size, m] : mu.multiplicities())
    if (needs_sign(family, size)) keys.push_back(size);
  std::vector<SignedPartition> out;
  for (unsigned mask = 0; mask < (1u << keys.size()); ++mask) {
    SignedPartition sp{mu, {}};
    for (std::size_t i = 0; i < keys.size(); ++i) sp.signs[keys[i]] = (mask >> i) & 1 ? -1 : 1;
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace kgv
