#pragma once

// Item identifiers, permutations over {1..n}, Kendall-tau distance, and
// exhaustive enumeration. Everything here is immutable and pure.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jointsel {

// 1-based item id; item 1 is the best item by convention.
using ItemId = int;

// Full enumeration (n! permutations, n!^2 pairs in the exact oracle) is
// capped here; 8!^2 ~ 1.6e9 pairs is the practical ceiling.
inline constexpr int kMaxEnumerationN = 8;

// An ordering of the items {1..n}; rank 1 is the highest rank.
// Value-semantic and immutable after construction.
class Permutation {
 public:
  explicit Permutation(std::vector<ItemId> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    if (n == 0) throw std::invalid_argument("Permutation: empty order");
    rank_.assign(n, 0);
    for (int pos = 0; pos < n; ++pos) {
      const ItemId item = order_[pos];
      if (item < 1 || item > n)
        throw std::invalid_argument("Permutation: item id " +
                                    std::to_string(item) + " outside 1.." +
                                    std::to_string(n));
      if (rank_[item - 1] != 0)
        throw std::invalid_argument("Permutation: duplicate item id " +
                                    std::to_string(item));
      rank_[item - 1] = pos + 1;
    }
  }

  static Permutation identity(int n) {
    if (n < 1) throw std::invalid_argument("Permutation: n must be >= 1");
    std::vector<ItemId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    return Permutation(std::move(order));
  }

  int size() const { return static_cast<int>(order_.size()); }

  // Item at 1-based rank.
  ItemId at_rank(int rank) const {
    if (rank < 1 || rank > size())
      throw std::out_of_range("Permutation: rank " + std::to_string(rank) +
                              " outside 1.." + std::to_string(size()));
    return order_[static_cast<std::size_t>(rank - 1)];
  }

  // 1-based rank of an item.
  int rank_of(ItemId item) const {
    if (item < 1 || item > size())
      throw std::out_of_range("Permutation: item " + std::to_string(item) +
                              " outside 1.." + std::to_string(size()));
    return rank_[static_cast<std::size_t>(item - 1)];
  }

  const std::vector<ItemId>& order() const { return order_; }

  bool operator==(const Permutation& other) const {
    return order_ == other.order_;
  }
  bool operator!=(const Permutation& other) const { return !(*this == other); }

  // Dash-joined ids, e.g. "3-1-2".
  std::string to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (i > 0) out << '-';
      out << order_[i];
    }
    return out.str();
  }

  static Permutation from_string(const std::string& text) {
    std::vector<ItemId> order;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, '-')) order.push_back(std::stoi(token));
    return Permutation(std::move(order));
  }

 private:
  std::vector<ItemId> order_;
  std::vector<int> rank_;  // rank_[item-1] = 1-based rank
};

inline void require_same_universe(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("permutations over different universes (n=" +
                                std::to_string(p.size()) + " vs n=" +
                                std::to_string(q.size()) + ")");
}

// Number of item pairs ordered oppositely in p and q. Symmetric, zero iff
// p == q, at most n(n-1)/2.
inline int kendall_tau(const Permutation& p, const Permutation& q) {
  require_same_universe(p, q);
  const int n = p.size();
  int count = 0;
  for (ItemId a = 1; a <= n; ++a)
    for (ItemId b = a + 1; b <= n; ++b)
      if ((p.rank_of(a) < p.rank_of(b)) != (q.rank_of(a) < q.rank_of(b)))
        ++count;
  return count;
}

// Inversion count relative to the identity ordering.
inline int inversion_count(const Permutation& p) {
  const int n = p.size();
  int count = 0;
  const auto& order = p.order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (order[i] > order[j]) ++count;
  return count;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

inline void require_enumerable(int n) {
  if (n < 1 || n > kMaxEnumerationN)
    throw std::invalid_argument(
        "enumeration requires 1 <= n <= " + std::to_string(kMaxEnumerationN) +
        " (got n=" + std::to_string(n) + ")");
}

// All n! permutations in lexicographic order by item id.
inline std::vector<Permutation> enumerate_permutations(int n) {
  require_enumerable(n);
  std::vector<Permutation> result;
  result.reserve(factorial(n));
  std::vector<ItemId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  do {
    result.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

// 0-based lexicographic rank of p among the n! permutations (Lehmer code).
inline std::uint64_t lexicographic_index(const Permutation& p) {
  const int n = p.size();
  const auto& order = p.order();
  std::uint64_t index = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_right = 0;
    for (int j = i + 1; j < n; ++j)
      if (order[j] < order[i]) ++smaller_right;
    index += static_cast<std::uint64_t>(smaller_right) * factorial(n - 1 - i);
  }
  return index;
}

// The k items the permutation ranks first, in rank order.
inline std::vector<ItemId> top_k(const Permutation& p, int k) {
  if (k < 1 || k > p.size())
    throw std::invalid_argument("top_k: k=" + std::to_string(k) +
                                " outside 1.." + std::to_string(p.size()));
  return {p.order().begin(), p.order().begin() + k};
}

// p with the positions of items a and b exchanged. Involutive.
inline Permutation swap_items(const Permutation& p, ItemId a, ItemId b) {
  const int ra = p.rank_of(a);  // validates a
  const int rb = p.rank_of(b);
  std::vector<ItemId> order = p.order();
  std::swap(order[static_cast<std::size_t>(ra - 1)],
            order[static_cast<std::size_t>(rb - 1)]);
  return Permutation(std::move(order));
}

// Item relabeling: each item x in p becomes sigma(x), where sigma(x) is the
// item at rank x of `sigma`.
inline Permutation relabel(const Permutation& p, const Permutation& sigma) {
  require_same_universe(p, sigma);
  std::vector<ItemId> order;
  order.reserve(p.order().size());
  for (ItemId x : p.order()) order.push_back(sigma.at_rank(x));
  return Permutation(std::move(order));
}

}  // namespace jointsel
