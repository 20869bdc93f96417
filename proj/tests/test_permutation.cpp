#include <catch2/catch_amalgamated.hpp>

#include "jointsel/permutation.hpp"

using namespace jointsel;

namespace {
Permutation perm(std::initializer_list<ItemId> ids) {
  return Permutation(std::vector<ItemId>(ids));
}
}  // namespace

TEST_CASE("permutation validates its order") {
  CHECK_THROWS_AS(perm({}), std::invalid_argument);
  CHECK_THROWS_AS(perm({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(perm({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(perm({1, 2, 4}), std::invalid_argument);
  const Permutation p = perm({3, 1, 2});
  CHECK(p.size() == 3);
  CHECK(p.at_rank(1) == 3);
  CHECK(p.rank_of(3) == 1);
  CHECK(p.rank_of(2) == 3);
  CHECK_THROWS_AS(p.at_rank(0), std::out_of_range);
  CHECK_THROWS_AS(p.rank_of(4), std::out_of_range);
}

TEST_CASE("dash-joined string round trip") {
  const Permutation p = perm({3, 1, 2});
  CHECK(p.to_string() == "3-1-2");
  CHECK(Permutation::from_string("3-1-2") == p);
  CHECK(Permutation::from_string(perm({2, 4, 1, 3}).to_string()) ==
        perm({2, 4, 1, 3}));
}

TEST_CASE("kendall tau base cases") {
  CHECK(kendall_tau(perm({1, 2, 3}), perm({1, 2, 3})) == 0);
  CHECK(kendall_tau(perm({1, 2, 3}), perm({3, 2, 1})) == 3);
  CHECK(kendall_tau(perm({1, 2, 3}), perm({2, 1, 3})) == 1);
  CHECK_THROWS_AS(kendall_tau(perm({1, 2}), perm({1, 2, 3})),
                  std::invalid_argument);
}

TEST_CASE("kendall tau symmetry and identity, exhaustive to n=5") {
  for (int n = 2; n <= 5; ++n) {
    const auto perms = enumerate_permutations(n);
    for (const auto& p : perms) {
      for (const auto& q : perms) {
        const int d = kendall_tau(p, q);
        CHECK(d == kendall_tau(q, p));
        CHECK(d <= n * (n - 1) / 2);
        if (p == q) CHECK(d == 0);
        if (d == 0) CHECK(p == q);
      }
    }
  }
}

TEST_CASE("adjacent transposition changes inversions by exactly one") {
  for (int n = 2; n <= 5; ++n) {
    const Permutation identity = Permutation::identity(n);
    for (const auto& p : enumerate_permutations(n)) {
      for (int pos = 1; pos < n; ++pos) {
        const Permutation q = swap_items(p, p.at_rank(pos), p.at_rank(pos + 1));
        const int delta =
            kendall_tau(identity, p) - kendall_tau(identity, q);
        CHECK((delta == 1 || delta == -1));
      }
    }
  }
}

TEST_CASE("enumeration is lexicographic and complete") {
  CHECK(enumerate_permutations(1) ==
        std::vector<Permutation>{Permutation::identity(1)});
  const auto two = enumerate_permutations(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == perm({1, 2}));
  CHECK(two[1] == perm({2, 1}));
  const auto three = enumerate_permutations(3);
  REQUIRE(three.size() == 6);
  CHECK(three[0] == perm({1, 2, 3}));
  CHECK(three[5] == perm({3, 2, 1}));
  for (std::size_t i = 1; i < three.size(); ++i)
    CHECK(three[i - 1].order() < three[i].order());
  CHECK_THROWS_AS(enumerate_permutations(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_permutations(kMaxEnumerationN + 1),
                  std::invalid_argument);
  CHECK_THROWS_WITH(enumerate_permutations(9),
                    Catch::Matchers::ContainsSubstring("8"));
}

TEST_CASE("lexicographic index inverts enumeration order") {
  const auto perms = enumerate_permutations(4);
  for (std::size_t i = 0; i < perms.size(); ++i)
    CHECK(lexicographic_index(perms[i]) == i);
}

TEST_CASE("top_k returns the presented prefix") {
  const Permutation p = perm({3, 1, 2});
  CHECK(top_k(p, 2) == std::vector<ItemId>{3, 1});
  CHECK(top_k(p, 3) == std::vector<ItemId>{3, 1, 2});
  CHECK(top_k(perm({2, 3, 1}), 1) == std::vector<ItemId>{2});
  CHECK_THROWS_AS(top_k(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(top_k(p, 4), std::invalid_argument);
}

TEST_CASE("swap_items moves exactly the two items") {
  CHECK(swap_items(perm({3, 1, 2}), 1, 3) == perm({1, 3, 2}));
  CHECK(swap_items(perm({2, 1, 3}), 1, 3) == perm({2, 3, 1}));
  const Permutation p = perm({2, 4, 1, 3});
  CHECK(swap_items(p, 2, 2) == p);
  CHECK_THROWS_AS(swap_items(p, 1, 5), std::out_of_range);
}

TEST_CASE("swap_items is involutive, exhaustive to n=5") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& p : enumerate_permutations(n)) {
      for (ItemId a = 1; a <= n; ++a)
        for (ItemId b = 1; b <= n; ++b)
          CHECK(swap_items(swap_items(p, a, b), a, b) == p);
    }
  }
}

TEST_CASE("relabel applies an item bijection") {
  // sigma maps 1->2, 2->3, 3->1
  const Permutation sigma = perm({2, 3, 1});
  CHECK(relabel(perm({3, 1, 2}), sigma) == perm({1, 2, 3}));
  // relabeling preserves pairwise order agreements
  const Permutation p = perm({4, 2, 1, 3});
  const Permutation q = perm({2, 1, 4, 3});
  const Permutation tau = perm({3, 1, 4, 2});
  CHECK(kendall_tau(relabel(p, tau), relabel(q, tau)) == kendall_tau(p, q));
}
