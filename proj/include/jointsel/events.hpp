#pragma once

// Good/bad event classification for permutation pairs, the best-item swap
// that maps good events to bad events, its inverse, and brute-force
// verification that the two maps form a bijection.
//
// A pair is "good" when the joint pipeline picks the best item but the
// algorithm alone would not have; "bad" when the algorithm alone would have
// picked it but the joint pipeline does not; "neutral" otherwise.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "jointsel/mallows.hpp"
#include "jointsel/permutation.hpp"
#include "jointsel/pipeline.hpp"

namespace jointsel {

enum class EventClass { good, bad, neutral };

inline const char* to_string(EventClass klass) {
  switch (klass) {
    case EventClass::good: return "good";
    case EventClass::bad: return "bad";
    default: return "neutral";
  }
}

// Classification by simulating the pipeline on the pair.
inline EventClass classify_event(const Permutation& algo_perm,
                                 const Permutation& human_perm, int k) {
  const ItemId joint = joint_pick(algo_perm, human_perm, k);
  const ItemId algo = algo_perm.at_rank(1);
  if (joint == 1 && algo != 1) return EventClass::good;
  if (algo == 1 && joint != 1) return EventClass::bad;
  return EventClass::neutral;
}

// Classification by the literal case conditions: good events require the
// best item presented but not ranked first by the algorithm, and every item
// the human ranks above it dropped by the algorithm; bad events require the
// algorithm to rank it first while some presented item beats it in the
// human's ranking.
inline EventClass classify_event_by_definition(const Permutation& algo_perm,
                                               const Permutation& human_perm,
                                               int k) {
  require_same_universe(algo_perm, human_perm);
  if (k < 1 || k > algo_perm.size())
    throw std::invalid_argument("classify_event: k outside 1..n");
  const int algo_rank_best = algo_perm.rank_of(1);
  const int human_rank_best = human_perm.rank_of(1);
  const auto all_above_best_dropped = [&]() {
    for (int r = 1; r < human_rank_best; ++r)
      if (algo_perm.rank_of(human_perm.at_rank(r)) <= k) return false;
    return true;
  };
  if (algo_rank_best != 1 && algo_rank_best <= k) {
    if (human_rank_best == 1) return EventClass::good;
    if (all_above_best_dropped()) return EventClass::good;
    return EventClass::neutral;
  }
  if (algo_rank_best == 1 && human_rank_best != 1 &&
      !all_above_best_dropped())
    return EventClass::bad;
  return EventClass::neutral;
}

// Good -> bad: swap the best item with the item the algorithm ranked first,
// in both permutations.
inline std::pair<Permutation, Permutation> best_item_map(
    const Permutation& algo_perm, const Permutation& human_perm, int k) {
  if (classify_event(algo_perm, human_perm, k) != EventClass::good)
    throw std::invalid_argument("best_item_map: pair is not a good event");
  const ItemId swapped = algo_perm.at_rank(1);
  return {swap_items(algo_perm, 1, swapped),
          swap_items(human_perm, 1, swapped)};
}

// Bad -> good: swap the best item with the presented item the human ranks
// highest. Two cases, depending on whether the human's first item was
// presented; in both, the chosen item is the one the joint pipeline picks.
inline std::pair<Permutation, Permutation> best_item_map_inverse(
    const Permutation& algo_perm, const Permutation& human_perm, int k) {
  if (classify_event(algo_perm, human_perm, k) != EventClass::bad)
    throw std::invalid_argument(
        "best_item_map_inverse: pair is not a bad event");
  ItemId swapped;
  if (algo_perm.rank_of(human_perm.at_rank(1)) <= k) {
    swapped = human_perm.at_rank(1);
  } else {
    swapped = 0;
    for (int r = 2; r <= human_perm.size(); ++r) {
      const ItemId item = human_perm.at_rank(r);
      if (algo_perm.rank_of(item) <= k) {
        swapped = item;
        break;
      }
    }
  }
  return {swap_items(algo_perm, 1, swapped),
          swap_items(human_perm, 1, swapped)};
}

struct BijectionReport {
  int n = 0;
  int k = 0;
  std::int64_t good_count = 0;
  std::int64_t bad_count = 0;
  bool map_is_injective = false;
  bool inverse_recovers = false;
  // Dash-joined "algo|human" pair strings; empty on success.
  std::vector<std::string> counterexamples;

  bool success() const {
    return good_count == bad_count && map_is_injective && inverse_recovers &&
           counterexamples.empty();
  }
};

// Exhaustive check over all n!^2 pairs that the best-item map sends good
// events to distinct bad events, the inverse map sends bad events to good
// events, and the two compose to the identity both ways.
inline BijectionReport verify_bijection(int n, int k) {
  require_enumerable(n);
  if (k < 1 || k >= n)
    throw std::invalid_argument("verify_bijection: need 1 <= k < n");
  const std::vector<Permutation> perms = enumerate_permutations(n);
  const std::uint64_t count = perms.size();

  BijectionReport report;
  report.n = n;
  report.k = k;
  report.map_is_injective = true;
  report.inverse_recovers = true;

  const auto pair_key = [count](std::uint64_t ia, std::uint64_t ih) {
    return ia * count + ih;
  };
  const auto note = [&report](const Permutation& a, const Permutation& h,
                              const std::string& problem) {
    if (report.counterexamples.size() < 20)
      report.counterexamples.push_back(a.to_string() + "|" + h.to_string() +
                                       " " + problem);
  };

  std::unordered_set<std::uint64_t> images;
  for (std::uint64_t ia = 0; ia < count; ++ia) {
    for (std::uint64_t ih = 0; ih < count; ++ih) {
      const Permutation& a = perms[ia];
      const Permutation& h = perms[ih];
      switch (classify_event(a, h, k)) {
        case EventClass::good: {
          ++report.good_count;
          const auto [ba, bh] = best_item_map(a, h, k);
          if (classify_event(ba, bh, k) != EventClass::bad) {
            note(a, h, "image of good pair is not bad");
            break;
          }
          if (!images
                   .insert(pair_key(lexicographic_index(ba),
                                    lexicographic_index(bh)))
                   .second) {
            report.map_is_injective = false;
            note(a, h, "duplicate image");
          }
          const auto [ga, gh] = best_item_map_inverse(ba, bh, k);
          if (ga != a || gh != h) {
            report.inverse_recovers = false;
            note(a, h, "inverse does not recover the good pair");
          }
          break;
        }
        case EventClass::bad: {
          ++report.bad_count;
          const auto [ga, gh] = best_item_map_inverse(a, h, k);
          if (classify_event(ga, gh, k) != EventClass::good) {
            report.inverse_recovers = false;
            note(a, h, "image of bad pair is not good");
            break;
          }
          const auto [ba, bh] = best_item_map(ga, gh, k);
          if (ba != a || bh != h) {
            report.inverse_recovers = false;
            note(a, h, "map does not recover the bad pair");
          }
          break;
        }
        case EventClass::neutral:
          break;
      }
    }
  }
  return report;
}

// Total model probability of good pairs and of bad pairs under the
// (possibly anchored) Mallows pipeline law. The difference equals
// p_joint - p_algo exactly: neutral pairs contribute the same success mass
// to both sides.
inline std::pair<double, double> event_mass_comparison(int n, int k,
                                                       double phi_a,
                                                       double phi_h,
                                                       AnchorWeight w) {
  require_enumerable(n);
  if (k < 1 || k > n)
    throw std::invalid_argument("event_mass_comparison: k outside 1..n");
  const Permutation center = Permutation::identity(n);
  const std::vector<Permutation> perms = enumerate_permutations(n);
  const std::size_t count = perms.size();
  const MallowsSpec algo_spec(center, phi_a);
  const MallowsSpec human_spec(center, phi_h);
  const PmfTable algo_table = PmfTable::mallows(algo_spec);
  const PmfTable independent_human = PmfTable::mallows(human_spec);

  double good_mass = 0.0, bad_mass = 0.0;
  for (std::size_t ia = 0; ia < count; ++ia) {
    const Permutation& a = perms[ia];
    const PmfTable human_table = w.value() == 0.0
                                     ? independent_human
                                     : PmfTable::anchored(human_spec, a, w);
    for (std::size_t ih = 0; ih < count; ++ih) {
      const double mass =
          algo_table.probability(ia) * human_table.probability(ih);
      switch (classify_event(a, perms[ih], k)) {
        case EventClass::good: good_mass += mass; break;
        case EventClass::bad: bad_mass += mass; break;
        case EventClass::neutral: break;
      }
    }
  }
  return {good_mass, bad_mass};
}

}  // namespace jointsel
