#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <sstream>

#include "jointsel/io.hpp"
#include "jointsel/mallows.hpp"

using namespace jointsel;

namespace {

Permutation perm(std::initializer_list<ItemId> ids) {
  return Permutation(std::vector<ItemId>(ids));
}

// Wilson-Hilferty chi-square critical value at the 0.999 quantile.
double chi2_crit_999(int df) {
  const double z = 3.0902;
  const double c = 2.0 / (9.0 * df);
  const double t = 1.0 - c + z * std::sqrt(c);
  return df * t * t * t;
}

double chi2_statistic(const std::map<std::uint64_t, int>& counts,
                      const PmfTable& table, int draws) {
  double stat = 0.0;
  for (std::size_t i = 0; i < table.entry_count(); ++i) {
    const double expected = table.probability(i) * draws;
    const auto it = counts.find(i);
    const double observed = it == counts.end() ? 0.0 : it->second;
    stat += (observed - expected) * (observed - expected) / expected;
  }
  return stat;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(MallowsSpec::identity_center(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MallowsSpec::identity_center(3, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(AnchorWeight(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(AnchorWeight(1.1), std::invalid_argument);
}

TEST_CASE("normalizer closed form at n=3") {
  const double expected = 1.0 + 2.0 * std::exp(-1.0) + 2.0 * std::exp(-2.0) +
                          std::exp(-3.0);
  CHECK_THAT(mallows_normalizer(3, 1.0),
             Catch::Matchers::WithinAbs(expected, 1e-15));
  CHECK_THAT(mallows_normalizer(3, 1.0),
             Catch::Matchers::WithinAbs(2.0562165171839744, 1e-12));
  CHECK(mallows_normalizer(1, 0.7) == 1.0);
}

TEST_CASE("product-formula normalizer equals enumeration") {
  for (int n = 2; n <= 6; ++n) {
    for (double phi : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double zp = mallows_normalizer(n, phi);
      const double ze = mallows_normalizer_by_enumeration(n, phi);
      CHECK_THAT(zp / ze, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("pmf calibration points at n=3") {
  const Permutation identity = Permutation::identity(3);
  CHECK_THAT(mallows_pmf(MallowsSpec::identity_center(3, 1.0), identity),
             Catch::Matchers::WithinAbs(0.4863301075752071, 1e-12));
  CHECK_THAT(mallows_pmf(MallowsSpec::identity_center(3, 1.3), identity),
             Catch::Matchers::WithinAbs(0.5834807313800453, 1e-12));
}

TEST_CASE("pmf approaches the uniform limit for tiny phi") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 1e-9);
  for (const auto& p : enumerate_permutations(3))
    CHECK_THAT(mallows_pmf(spec, p),
               Catch::Matchers::WithinAbs(1.0 / 6.0, 1e-6));
}

TEST_CASE("pmf sums to one and decreases in distance") {
  for (double phi : {0.3, 1.0, 2.5}) {
    for (int n : {3, 5, 6}) {
      const MallowsSpec spec = MallowsSpec::identity_center(n, phi);
      double total = 0.0;
      for (const auto& p : enumerate_permutations(n))
        total += mallows_pmf(spec, p);
      CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
  }
  const MallowsSpec spec = MallowsSpec::identity_center(5, 0.7);
  const Permutation identity = Permutation::identity(5);
  for (const auto& p : enumerate_permutations(5)) {
    for (const auto& q : enumerate_permutations(5)) {
      if (kendall_tau(identity, p) < kendall_tau(identity, q))
        CHECK(mallows_pmf(spec, p) > mallows_pmf(spec, q));
    }
  }
}

TEST_CASE("pmf universe mismatch is an error") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 1.0);
  CHECK_THROWS_AS(mallows_pmf(spec, Permutation::identity(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      anchored_pmf(spec, Permutation::identity(3), AnchorWeight(0.5),
                   Permutation::identity(4)),
      std::invalid_argument);
}

TEST_CASE("anchored pmf reduces to the plain model at w=0") {
  const MallowsSpec spec = MallowsSpec::identity_center(4, 0.9);
  const PmfTable table =
      PmfTable::anchored(spec, perm({2, 4, 1, 3}), AnchorWeight(0.0));
  for (const auto& p : enumerate_permutations(4))
    CHECK_THAT(table.probability_of(p),
               Catch::Matchers::WithinAbs(mallows_pmf(spec, p), 1e-14));
}

TEST_CASE("anchored pmf at w=1 equals a model centered at the anchor") {
  const Permutation anchor = perm({3, 1, 4, 2});
  const MallowsSpec spec = MallowsSpec::identity_center(4, 1.2);
  const MallowsSpec centered(anchor, 1.2);
  for (const auto& p : enumerate_permutations(4))
    CHECK_THAT(anchored_pmf(spec, anchor, AnchorWeight(1.0), p),
               Catch::Matchers::WithinAbs(mallows_pmf(centered, p), 1e-14));
}

TEST_CASE("anchored pmf at w=1 peaks at the anchor") {
  const MallowsSpec spec = MallowsSpec::identity_center(4, 1.2);
  const Permutation anchor = perm({3, 1, 4, 2});
  const PmfTable table = PmfTable::anchored(spec, anchor, AnchorWeight(1.0));
  const double at_anchor = table.probability_of(anchor);
  for (const auto& p : enumerate_permutations(4))
    if (p != anchor) CHECK(table.probability_of(p) < at_anchor);
}

TEST_CASE("anchored table for w=0.5 matches the hand-derived weights") {
  // Distances to the identity and to the anchor [2,1,3] for each of the 6
  // permutations, in lexicographic order, computed by hand.
  const int d_center[6] = {0, 1, 1, 2, 2, 3};
  const int d_anchor[6] = {1, 2, 0, 1, 3, 2};
  double weights[6];
  double total = 0.0;
  for (int i = 0; i < 6; ++i) {
    weights[i] = std::exp(-1.0 * (0.5 * d_center[i] + 0.5 * d_anchor[i]));
    total += weights[i];
  }
  const MallowsSpec spec = MallowsSpec::identity_center(3, 1.0);
  const PmfTable table =
      PmfTable::anchored(spec, perm({2, 1, 3}), AnchorWeight(0.5));
  double sum = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK_THAT(table.probability(i),
               Catch::Matchers::WithinAbs(weights[i] / total, 1e-15));
    sum += table.probability(i);
  }
  CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
  // Frozen spot values for the table.
  CHECK_THAT(table.probability_of(perm({1, 2, 3})),
             Catch::Matchers::WithinAbs(0.33262047788741095, 1e-12));
  CHECK_THAT(table.probability_of(perm({1, 3, 2})),
             Catch::Matchers::WithinAbs(0.12236423552739882, 1e-12));
  CHECK_THAT(table.probability_of(perm({3, 2, 1})),
             Catch::Matchers::WithinAbs(0.04501528658519023, 1e-12));
}

TEST_CASE("anchored tables stay normalized per conditioning") {
  const MallowsSpec spec = MallowsSpec::identity_center(5, 1.4);
  for (const auto& anchor :
       {perm({2, 1, 3, 4, 5}), perm({5, 4, 3, 2, 1}), perm({3, 5, 1, 2, 4})}) {
    for (double w : {0.25, 0.5, 1.0}) {
      const PmfTable table = PmfTable::anchored(spec, anchor, AnchorWeight(w));
      double total = 0.0;
      for (std::size_t i = 0; i < table.entry_count(); ++i)
        total += table.probability(i);
      CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("anchored tables survive extreme concentration") {
  // With phi*d far beyond exp() range the max-shift keeps tables normalized.
  const MallowsSpec spec = MallowsSpec::identity_center(8, 60.0);
  const Permutation anchor = Permutation::from_string("8-7-6-5-4-3-2-1");
  const PmfTable table = PmfTable::anchored(spec, anchor, AnchorWeight(0.5));
  double total = 0.0;
  for (std::size_t i = 0; i < table.entry_count(); ++i)
    total += table.probability(i);
  CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("fully anchored pmf is invariant under joint relabeling") {
  const MallowsSpec spec = MallowsSpec::identity_center(4, 1.1);
  const AnchorWeight w(1.0);
  const Permutation anchor = perm({3, 1, 4, 2});
  const Permutation sigma = perm({2, 4, 1, 3});
  for (const auto& p : enumerate_permutations(4)) {
    CHECK_THAT(anchored_pmf(spec, relabel(anchor, sigma), w,
                            relabel(p, sigma)),
               Catch::Matchers::WithinAbs(anchored_pmf(spec, anchor, w, p),
                                          1e-14));
  }
}

TEST_CASE("repeated-insertion sampler fits the exact pmf") {
  const MallowsSpec spec = MallowsSpec::identity_center(4, 0.8);
  const PmfTable table = PmfTable::mallows(spec);
  Rng rng = make_rng(20240201);
  const int draws = 200000;
  std::map<std::uint64_t, int> counts;
  for (int i = 0; i < draws; ++i)
    ++counts[lexicographic_index(sample_mallows(spec, rng))];
  CHECK(chi2_statistic(counts, table, draws) < chi2_crit_999(23));
}

TEST_CASE("sampler concentrates at the center for large phi") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 50.0);
  const Permutation identity = Permutation::identity(3);
  Rng rng = make_rng(7);
  int hits = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    hits += sample_mallows(spec, rng) == identity;
  CHECK(static_cast<double>(hits) / draws > 0.999);
}

TEST_CASE("sampler is near uniform for tiny phi") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 1e-6);
  Rng rng = make_rng(11);
  const int draws = 100000;
  std::map<std::uint64_t, int> counts;
  for (int i = 0; i < draws; ++i)
    ++counts[lexicographic_index(sample_mallows(spec, rng))];
  for (const auto& [index, count] : counts)
    CHECK_THAT(static_cast<double>(count) / draws,
               Catch::Matchers::WithinAbs(1.0 / 6.0, 0.02));
}

TEST_CASE("identity frequency matches the exact pmf at phi=1") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 1.0);
  const Permutation identity = Permutation::identity(3);
  Rng rng = make_rng(23);
  int hits = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    hits += sample_mallows(spec, rng) == identity;
  CHECK_THAT(static_cast<double>(hits) / draws,
             Catch::Matchers::WithinAbs(0.4863301075752071, 0.01));
}

TEST_CASE("anchored sampler fits its table") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 1.0);
  const Permutation anchor = perm({2, 1, 3});
  const AnchorWeight w(0.5);
  const PmfTable table = PmfTable::anchored(spec, anchor, w);
  Rng rng = make_rng(99);
  const int draws = 100000;
  std::map<std::uint64_t, int> counts;
  for (int i = 0; i < draws; ++i)
    ++counts[lexicographic_index(sample_anchored(spec, anchor, w, rng))];
  // Every cell within 3 multinomial standard errors of the exact table.
  for (std::size_t i = 0; i < table.entry_count(); ++i) {
    const double p = table.probability(i);
    const double se = std::sqrt(p * (1.0 - p) / draws);
    const double freq = static_cast<double>(counts[i]) / draws;
    CHECK_THAT(freq, Catch::Matchers::WithinAbs(p, 3.5 * se));
  }
}

TEST_CASE("anchored sampler at w=0 fits the unanchored pmf") {
  const MallowsSpec spec = MallowsSpec::identity_center(4, 1.0);
  const PmfTable table = PmfTable::mallows(spec);
  Rng rng = make_rng(5);
  const int draws = 200000;
  std::map<std::uint64_t, int> counts;
  AnchoredSampler sampler(spec, AnchorWeight(0.0));
  const Permutation anchor = perm({4, 3, 2, 1});
  for (int i = 0; i < draws; ++i)
    ++counts[lexicographic_index(sampler.sample(anchor, rng))];
  CHECK(chi2_statistic(counts, table, draws) < chi2_crit_999(23));
}

TEST_CASE("fully anchored sampler with huge phi returns the anchor") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 50.0);
  const Permutation anchor = perm({3, 2, 1});
  Rng rng = make_rng(3);
  AnchoredSampler sampler(spec, AnchorWeight(1.0));
  int hits = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    hits += sampler.sample(anchor, rng) == anchor;
  CHECK(static_cast<double>(hits) / draws > 0.999);
}

TEST_CASE("anchored sampling beyond the enumeration cap is an error") {
  CHECK_THROWS_AS(AnchoredSampler(MallowsSpec::identity_center(9, 1.0),
                                  AnchorWeight(0.5)),
                  std::invalid_argument);
}

TEST_CASE("pmf table csv round trips") {
  const MallowsSpec spec = MallowsSpec::identity_center(3, 1.0);
  const PmfTable table =
      PmfTable::anchored(spec, perm({2, 1, 3}), AnchorWeight(0.5));
  std::stringstream buffer;
  table.write_csv(buffer);
  const CsvDocument doc = read_csv(buffer);
  REQUIRE(doc.rows.size() == 7);  // header + 6 entries
  CHECK(doc.rows[0] == std::vector<std::string>{"permutation", "probability"});
  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const Permutation p = Permutation::from_string(doc.rows[r][0]);
    CHECK(parse_double(doc.rows[r][1]) == table.probability_of(p));
  }
}
