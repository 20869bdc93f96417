#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "jointsel/rum.hpp"

using namespace jointsel;

namespace {
Permutation perm(std::initializer_list<ItemId> ids) {
  return Permutation(std::vector<ItemId>(ids));
}
}  // namespace

TEST_CASE("default utilities are linear from one down to zero") {
  CHECK(default_utilities(3) == std::vector<double>{1.0, 0.5, 0.0});
  CHECK(default_utilities(2) == std::vector<double>{1.0, 0.0});
  CHECK(default_utilities(5) ==
        std::vector<double>{1.0, 0.75, 0.5, 0.25, 0.0});
  CHECK(default_utilities(1) == std::vector<double>{1.0});
  CHECK_THROWS_AS(default_utilities(0), std::invalid_argument);
}

TEST_CASE("rum spec validation") {
  CHECK_THROWS_AS(RumSpec({1.0, 1.0, 0.5}, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(RumSpec({0.0, 0.5, 1.0}, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(RumSpec({1.0, 0.5}, -0.1), std::invalid_argument);
  CHECK_NOTHROW(RumSpec({1.0, 0.5, 0.0}, 0.0));
}

TEST_CASE("anchored means follow the slot assignment") {
  const RumSpec unanchored({1.0, 0.5, 0.0}, 0.3, AnchorWeight(0.0));
  CHECK(anchored_means(unanchored, perm({2, 1, 3})) == unanchored.utilities);

  const RumSpec anchored({1.0, 0.5, 0.0}, 0.3, AnchorWeight(1.0));
  CHECK(anchored_means(anchored, Permutation::identity(3)) ==
        anchored.utilities);
  // Item 1 sits in slot 2 of the anchor, item 2 in slot 1, item 3 in slot 3.
  CHECK(anchored_means(anchored, perm({2, 1, 3})) ==
        std::vector<double>{0.5, 1.0, 0.0});

  const RumSpec halfway({1.0, 0.5, 0.0}, 0.3, AnchorWeight(0.5));
  const std::vector<double> means = anchored_means(halfway, perm({2, 1, 3}));
  CHECK_THAT(means[0], Catch::Matchers::WithinAbs(0.75, 1e-15));
  CHECK_THAT(means[1], Catch::Matchers::WithinAbs(0.75, 1e-15));
  CHECK_THAT(means[2], Catch::Matchers::WithinAbs(0.0, 1e-15));

  CHECK_THROWS_AS(anchored_means(anchored, Permutation::identity(4)),
                  std::invalid_argument);
}

TEST_CASE("zero noise returns the means exactly") {
  Rng rng = make_rng(1);
  const std::vector<double> means = {0.9, 0.2, -0.4};
  CHECK(sample_scores(means, 0.0, rng) == means);
}

TEST_CASE("score means obey the law of large numbers") {
  Rng rng = make_rng(77);
  const std::vector<double> means = {0.4};
  const double sigma = 1.5;
  const int draws = 100000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) sum += sample_scores(means, sigma, rng)[0];
  const double bound = 3.0 * sigma / std::sqrt(static_cast<double>(draws));
  CHECK_THAT(sum / draws, Catch::Matchers::WithinAbs(means[0], bound));
}

TEST_CASE("two-item flip probability matches the gaussian difference") {
  // mu = [1, 0], sigma = 1: P(score2 > score1) = Phi(-1/sqrt(2)).
  const double expected = 0.5 * std::erfc(0.5);
  Rng rng = make_rng(1234);
  const std::vector<double> means = {1.0, 0.0};
  const int draws = 200000;
  int flips = 0;
  for (int i = 0; i < draws; ++i) {
    const ScoreVector scores = sample_scores(means, 1.0, rng);
    flips += scores[1] > scores[0];
  }
  const double se = std::sqrt(expected * (1 - expected) / draws);
  CHECK_THAT(static_cast<double>(flips) / draws,
             Catch::Matchers::WithinAbs(expected, 3.5 * se));
}

TEST_CASE("ranking by scores sorts descending with id tie-break") {
  CHECK(rank_by_scores({0.2, 0.9, 0.5}) == perm({2, 3, 1}));
  CHECK(rank_by_scores({0.5, 0.5, 0.5}) == Permutation::identity(3));
  CHECK(rank_by_scores(default_utilities(6)) == Permutation::identity(6));
  CHECK_THROWS_AS(rank_by_scores({}), std::invalid_argument);
}
